#include "scal/limits.hpp"

#include <algorithm>

#include "scal/errors.hpp"
#include "scal/genetic.hpp"

namespace scal {

LimitResult LimitResult::of_number(Surreal v) {
  LimitResult r;
  r.tag = Tag::Number;
  r.number = std::move(v);
  return r;
}

LimitResult LimitResult::of_gap(DedekindSection g) {
  LimitResult r;
  r.tag = Tag::Gap;
  r.gap = std::move(g);
  r.formula_only = true;
  return r;
}

LimitResult LimitResult::no_limit(Reason reason) {
  LimitResult r;
  r.tag = Tag::NoLimit;
  r.reason = reason;
  return r;
}

const char* limit_reason_name(LimitResult::Reason r) {
  switch (r) {
    case LimitResult::Reason::None: return "none";
    case LimitResult::Reason::Oscillatory: return "oscillatory";
    case LimitResult::Reason::UndefinedAtScale: return "undefined-at-scale";
    case LimitResult::Reason::Inconclusive: return "inconclusive";
  }
  return "?";
}

std::string LimitResult::str() const {
  switch (tag) {
    case Tag::Number: return number.str();
    case Tag::Gap: return gap->str();
    case Tag::NoLimit: return std::string("no limit (") + limit_reason_name(reason) + ")";
  }
  return "?";
}

namespace {

LimitResult interpret_series(const FormalSeries& s) {
  if (s.large_sign != 0) {
    if (s.large_sign == 9) return LimitResult::no_limit(LimitResult::Reason::Oscillatory);
    return LimitResult::of_gap(s.large_sign > 0 ? DedekindSection::on()
                                                : DedekindSection::off());
  }
  for (const auto& t : s.terms) {
    if (t.power < Rational(0)) {
      if (t.oscillating) return LimitResult::no_limit(LimitResult::Reason::Oscillatory);
      int sign = t.coeff.sign();
      return LimitResult::of_gap(sign > 0 ? DedekindSection::on() : DedekindSection::off());
    }
    if (t.power.is_zero()) {
      if (t.oscillating) return LimitResult::no_limit(LimitResult::Reason::Oscillatory);
      // a plain constant term; any oscillating duplicate at power 0 denies it
      for (const auto& u : s.terms)
        if (u.power.is_zero() && u.oscillating)
          return LimitResult::no_limit(LimitResult::Reason::Oscillatory);
      return LimitResult::of_number(t.coeff);
    }
    break;  // positive leading power vanishes
  }
  return LimitResult::of_number(Surreal(0));
}

LimitResult limit_of_expansion(const Expr& e, const std::string& var, bool at_on,
                               const Surreal& a, bool from_right) {
  try {
    FormalSeries s = at_on ? expand_at_on(e, var, 16)
                           : expand_at_point(e, var, a, from_right, 16);
    return interpret_series(s);
  } catch (const CalcError& err) {
    switch (err.code()) {
      case Errc::EssentialSingularity:
        return LimitResult::no_limit(LimitResult::Reason::UndefinedAtScale);
      case Errc::InconclusiveComparison:
        return LimitResult::no_limit(LimitResult::Reason::Inconclusive);
      default: throw;
    }
  }
}

}  // namespace

LimitResult seq_limit(const Expr& f, const std::string& var) {
  for (const auto& v : f.variables())
    if (v != var) raise(Errc::NotInClass, "free variable " + v + " in a sequence limit");
  return limit_of_expansion(f, var, /*at_on=*/true, Surreal(), true);
}

LimitResult fn_limit(const Expr& e, const std::string& var, const LimitPoint& at,
                     LimitSide side) {
  for (const auto& v : e.variables())
    if (v != var) raise(Errc::NotInClass, "free variable " + v + " in a function limit");
  switch (at.kind) {
    case LimitPoint::Kind::On:
    case LimitPoint::Kind::Infty:
      return limit_of_expansion(e, var, true, Surreal(), true);
    case LimitPoint::Kind::Off: {
      Expr mirrored = e.substitute(var, -Expr::var(var));
      return limit_of_expansion(mirrored, var, true, Surreal(), true);
    }
    case LimitPoint::Kind::Number: break;
  }
  if (side == LimitSide::Left)
    return limit_of_expansion(e, var, false, at.value, false);
  if (side == LimitSide::Right)
    return limit_of_expansion(e, var, false, at.value, true);
  LimitResult l = limit_of_expansion(e, var, false, at.value, false);
  LimitResult r = limit_of_expansion(e, var, false, at.value, true);
  if (l.tag == LimitResult::Tag::Number && r.tag == LimitResult::Tag::Number &&
      l.number.identical(r.number))
    return l;
  if (l.tag == LimitResult::Tag::Gap && r.tag == LimitResult::Tag::Gap &&
      l.gap->identical(*r.gap))
    return l;
  return LimitResult::no_limit(LimitResult::Reason::Inconclusive);
}

// ---------------------------------------------------------------------------
// derivatives via the difference quotient

Expr derivative_expr(const Expr& e, const std::string& var) {
  Expr h = Expr::var("@h");
  Expr quotient = (e.substitute(var, Expr::var(var) + h) - e) / h;
  auto s = detail_series::expand_sym(quotient, "@h", /*at_on=*/false, Surreal(0),
                                     /*from_right=*/true, 12);
  if (s.large_sign != 0)
    raise(Errc::NotInClass, "difference quotient is unbounded");
  SymValue at_zero;
  for (const auto& t : s.terms) {
    if (t.power < Rational(0))
      raise(Errc::NotInClass, "difference quotient diverges as h -> 0");
    if (t.power.is_zero()) at_zero = t.coeff;
  }
  return at_zero.to_expr();
}

Surreal derivative_at(const Expr& e, const std::string& var, const Surreal& x0) {
  Expr h = Expr::var("@h");
  Expr quotient = (e.substitute(var, Expr::constant(x0) + h) -
                   e.substitute(var, Expr::constant(x0))) /
                  h;
  LimitResult r = fn_limit(quotient, "@h", LimitPoint::at(Surreal(0)), LimitSide::Both);
  if (r.tag != LimitResult::Tag::Number)
    raise(Errc::NotInClass, "derivative limit did not converge: " + r.str());
  return r.number;
}

// ---------------------------------------------------------------------------
// Cauchy classification

std::string CauchyResult::str() const {
  switch (tag) {
    case Tag::ConvergesTo: return "ConvergesTo(" + value.str() + ")";
    case Tag::ApproachesTypeIa: return "ApproachesTypeIa(" + gap->str() + ")";
    case Tag::NotCauchy: return "NotCauchy(" + reason + ")";
  }
  return "?";
}

CauchyResult classify_cauchy(const Expr& f, const std::string& var) {
  LimitResult lr = seq_limit(f, var);
  CauchyResult out;
  switch (lr.tag) {
    case LimitResult::Tag::Number: {
      // difference expansion check: consecutive terms get arbitrarily close
      Expr shifted = f.substitute(var, Expr::var(var) + Expr::rational(Rational(1)));
      LimitResult d = seq_limit(shifted - f, var);
      if (d.tag != LimitResult::Tag::Number || !d.number.is_zero())
        raise(Errc::Internal, "convergent sequence with non-vanishing differences");
      out.tag = CauchyResult::Tag::ConvergesTo;
      out.value = lr.number;
      return out;
    }
    case LimitResult::Tag::Gap:
      out.tag = CauchyResult::Tag::NotCauchy;
      out.reason = "unbounded";
      return out;
    case LimitResult::Tag::NoLimit:
      out.tag = CauchyResult::Tag::NotCauchy;
      out.reason = limit_reason_name(lr.reason);
      return out;
  }
  raise(Errc::Internal, "bad limit result");
}

CauchyResult classify_cauchy_stream(const SurrealStream& series_terms) {
  if (series_terms.is_native())
    raise(Errc::UndecidableAsymptotics, "no closed-form exponent rule");
  series_terms.validate_window();
  CauchyResult out;
  if (!series_terms.is_on_length()) {
    // set-length data: the partial sums reach the full sum and stay there
    raise(Errc::UnsupportedClass, "classification needs On-length series data");
  }
  LimitResult expo = seq_limit(series_terms.expo_rule(), "i");
  if (expo.tag == LimitResult::Tag::Gap &&
      expo.gap->kind() == DedekindSection::Kind::Off) {
    out.tag = CauchyResult::Tag::ApproachesTypeIa;
    out.gap = DedekindSection::type1(series_terms);
    return out;
  }
  if (expo.tag == LimitResult::Tag::NoLimit)
    raise(Errc::UndecidableAsymptotics, "exponent rule has no limit");
  out.tag = CauchyResult::Tag::NotCauchy;
  out.reason = "terms do not vanish";
  return out;
}

// ---------------------------------------------------------------------------
// the literal union-of-intersections oracle

OracleSection seq_limit_oracle(const std::vector<Surreal>& prefix, int birthday_bound) {
  if (birthday_bound > 10) raise(Errc::UnsupportedClass, "oracle bound capped at 10");
  std::vector<Rational> universe;
  for (const auto& day : dyadics_by_day(birthday_bound))
    universe.insert(universe.end(), day.begin(), day.end());
  std::sort(universe.begin(), universe.end());

  std::vector<Rational> values;
  for (const auto& s : prefix) {
    auto q = s.as_rational();
    if (!q || !q->is_dyadic())
      raise(Errc::UnsupportedClass, "oracle prefix must be dyadic-valued");
    values.push_back(*q);
  }
  size_t n = values.size();
  size_t m = universe.size();
  // running tail intersections, built from the back; the union only ranges
  // over the first half of the start positions so every contributing tail
  // is long enough to stand in for an On-length tail
  std::vector<char> left_tail(m, 1), right_tail(m, 1);
  std::vector<char> left_union(m, 0), right_union(m, 0);
  for (size_t i = n; i-- > 0;) {
    for (size_t u = 0; u < m; ++u) {
      left_tail[u] = left_tail[u] && universe[u] < values[i];
      right_tail[u] = right_tail[u] && universe[u] > values[i];
      if (i <= (n - 1) / 2 && left_tail[u]) left_union[u] = 1;
      if (i <= (n - 1) / 2 && right_tail[u]) right_union[u] = 1;
    }
  }
  OracleSection out;
  out.universe = universe;
  for (size_t u = 0; u < m; ++u) {
    if (left_union[u]) out.left.push_back(universe[u]);
    if (right_union[u]) out.right.push_back(universe[u]);
  }
  std::sort(out.left.begin(), out.left.end());
  std::sort(out.right.begin(), out.right.end());
  return out;
}

}  // namespace scal
