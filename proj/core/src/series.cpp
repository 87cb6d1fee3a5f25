#include "scal/series.hpp"

#include "scal/errors.hpp"
#include "series_engine.hpp"

namespace scal {

// ---------------------------------------------------------------------------
// coefficient fields

struct SurrealField {
  using Value = Surreal;
  static Value zero() { return Surreal(0); }
  static Value one() { return Surreal(1); }
  static Value from_rational(const Rational& q) { return Surreal(q); }
  static Value add(const Value& a, const Value& b) { return a + b; }
  static Value neg(const Value& a) { return -a; }
  static Value mul(const Value& a, const Value& b) { return a * b; }
  static Value inv(const Value& a) { return a.inverse(); }
  static bool is_zero(const Value& a) { return a.is_zero(); }
  static int sign(const Value& a) { return a.sign(); }
  static Value exp_of(const Value& c) { return surreal_exp_value(c); }
  static Value log_of(const Value& c) {
    auto r = c.as_exact_real();
    if (!r) raise(Errc::NotInClass, "log of a non-real constant " + c.str());
    return Surreal(ExactReal::log(*r));
  }
  static Value atan_of(const Value& c) {
    auto r = c.as_exact_real();
    if (!r) raise(Errc::NotInClass, "arctan of a non-real constant " + c.str());
    return Surreal(ExactReal::arctan(*r));
  }
  static Value from_const(const Surreal& c) { return c; }
  static Value from_var(const std::string& name) {
    raise(Errc::NotInClass, "unbound variable " + name + " in a numeric expansion");
  }
};

struct SymField {
  using Value = SymValue;
  static Value zero() { return SymValue(); }
  static Value one() { return SymValue::of_rational(Rational(1)); }
  static Value from_rational(const Rational& q) { return SymValue::of_rational(q); }
  static Value add(const Value& a, const Value& b) { return a + b; }
  static Value neg(const Value& a) { return -a; }
  static Value mul(const Value& a, const Value& b) { return a * b; }
  static Value inv(const Value& a) {
    if (a.is_zero()) raise(Errc::DomainError, "division by zero");
    return SymValue::of_rational(Rational(1)) / a;
  }
  static bool is_zero(const Value& a) { return a.is_zero(); }
  static int sign(const Value& a) {
    auto q = a.as_rational();
    if (!q) raise(Errc::EssentialSingularity, "sign of a symbolic coefficient");
    return q->sign();
  }
  static Value exp_of(const Value& c) { return c.exp(); }
  static Value log_of(const Value& c) { return c.log(); }
  static Value atan_of(const Value& c) { return c.atan(); }
  static Value from_const(const Surreal& c) { return SymValue::of(Expr::constant(c)); }
  static Value from_var(const std::string& name) { return SymValue::of(Expr::var(name)); }
};

// ---------------------------------------------------------------------------
// expression -> series

namespace {

template <class F>
engine::Series<F> to_series(const engine::Engine<F>& eng, const Expr& e,
                            const std::string& tvar) {
  using Op = Expr::Op;
  switch (e.op()) {
    case Op::Const: return eng.constant(F::from_const(e.const_value()));
    case Op::Var:
      if (e.var_name() == tvar) return eng.tpow(Rational(1), F::one());
      return eng.constant(F::from_var(e.var_name()));
    case Op::Add:
      return eng.add(to_series(eng, e.children()[0], tvar),
                     to_series(eng, e.children()[1], tvar));
    case Op::Sub:
      return eng.add(to_series(eng, e.children()[0], tvar),
                     eng.neg(to_series(eng, e.children()[1], tvar)));
    case Op::Mul:
      return eng.mul(to_series(eng, e.children()[0], tvar),
                     to_series(eng, e.children()[1], tvar));
    case Op::Div:
      return eng.div(to_series(eng, e.children()[0], tvar),
                     to_series(eng, e.children()[1], tvar));
    case Op::Neg: return eng.neg(to_series(eng, e.children()[0], tvar));
    case Op::PowInt: return eng.pow_int(to_series(eng, e.children()[0], tvar), e.int_power());
    case Op::Exp: return eng.exp(to_series(eng, e.children()[0], tvar));
    case Op::Log: return eng.log(to_series(eng, e.children()[0], tvar));
    case Op::Atan: return eng.atan(to_series(eng, e.children()[0], tvar));
    case Op::PowExpr: {
      const Expr& base = e.children()[0];
      const Expr& expo = e.children()[1];
      engine::Series<F> se = to_series(eng, expo, tvar);
      if (base.op() == Op::Var) {
        typename F::Value logb = F::log_of(F::from_var(base.var_name()));
        return eng.exp(eng.scale(se, logb));
      }
      auto q = base.as_rational_const();
      if (!q) raise(Errc::NotInClass, "general power with an unsupported base");
      if (q->is_zero()) raise(Errc::NotInClass, "0^E expansion");
      if (q->sign() > 0) {
        typename F::Value logb = F::log_of(F::from_rational(*q));
        return eng.exp(eng.scale(se, logb));
      }
      // negative base: |q|^E carries an integer-exponent sign oscillation
      typename F::Value logb = F::log_of(F::from_rational(-*q));
      engine::Series<F> mag = eng.exp(eng.scale(se, logb));
      engine::Series<F> r = eng.scale(mag, F::one(), /*osc=*/true);
      if (r.small_sign != 0) r.small_sign = 9;
      if (r.large_sign != 0) r.large_sign = 9;
      return r;
    }
  }
  raise(Errc::Internal, "bad node");
}

FormalSeries to_formal(const engine::Series<SurrealField>& s) {
  FormalSeries f;
  f.small_sign = s.small_sign;
  f.large_sign = s.large_sign;
  for (const auto& t : s.terms) f.terms.push_back({t.power, t.coeff, t.osc});
  return f;
}

const char* kInnerVar = "@t";

}  // namespace

FormalSeries expand_at_on(const Expr& e, const std::string& var, int order) {
  Expr g = e.substitute(var, Expr::rational(Rational(1)) / Expr::var(kInnerVar));
  engine::Engine<SurrealField> eng(order);
  return to_formal(to_series(eng, g, kInnerVar));
}

FormalSeries expand_at_point(const Expr& e, const std::string& var, const Surreal& a,
                             bool from_right, int order) {
  Expr t = Expr::var(kInnerVar);
  Expr point = Expr::constant(a) + (from_right ? t : -t);
  Expr g = e.substitute(var, point);
  engine::Engine<SurrealField> eng(order);
  return to_formal(to_series(eng, g, kInnerVar));
}

std::string FormalSeries::str() const {
  std::string s;
  if (large_sign != 0)
    s += std::string("[exp-large ") + (large_sign == 9 ? "?" : (large_sign > 0 ? "+" : "-")) +
         "]";
  for (const auto& t : terms) {
    if (!s.empty()) s += " + ";
    std::string c = t.coeff.term_count() > 1 ? "(" + t.coeff.str() + ")" : t.coeff.str();
    if (t.oscillating) c = "osc[" + c + "]";
    if (t.power.is_zero())
      s += c;
    else if (t.power == Rational(1))
      s += c + "*t";
    else
      s += c + "*t^" + (t.power.is_integer() && t.power.sign() > 0
                            ? t.power.str()
                            : "(" + t.power.str() + ")");
  }
  if (small_sign != 0) {
    if (!s.empty()) s += " + ";
    s += std::string("[exp-small ") +
         (small_sign == 9 ? "?" : (small_sign > 0 ? "+" : "-")) + "]";
  }
  return s.empty() ? "0" : s;
}

// symbolic-coefficient expansion hooks used by the summation and integral
// modules; defined here so the engine template stays internal
namespace detail_series {

SymSeries expand_sym(const Expr& e, const std::string& var, bool at_on, const Surreal& a,
                     bool from_right, int order) {
  Expr g;
  if (at_on) {
    g = e.substitute(var, Expr::rational(Rational(1)) / Expr::var(kInnerVar));
  } else {
    Expr t = Expr::var(kInnerVar);
    g = e.substitute(var, Expr::constant(a) + (from_right ? t : -t));
  }
  engine::Engine<SymField> eng(order);
  auto s = to_series(eng, g, kInnerVar);
  SymSeries out;
  out.small_sign = s.small_sign;
  out.large_sign = s.large_sign;
  for (const auto& t : s.terms) out.terms.push_back({t.power, t.coeff, t.osc});
  return out;
}

}  // namespace detail_series

}  // namespace scal
