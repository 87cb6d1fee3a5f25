#include "scal/transcend.hpp"

#include <memory>

#include "scal/errors.hpp"
#include "scal/series.hpp"

namespace scal {

// ---------------------------------------------------------------------------
// Maclaurin truncations

namespace {

// coefficient of z^k in the Maclaurin series (0 when absent)
Rational maclaurin_coeff(TruncFn fn, long k) {
  if (k <= 0) return Rational(0);
  if (fn == TruncFn::Nlog) return Rational(1, k);
  if (k % 2 == 0) return Rational(0);
  Rational c(1, k);
  return ((k - 1) / 2) % 2 == 0 ? c : -c;
}

}  // namespace

Surreal maclaurin_trunc(TruncFn fn, const Surreal& z, long n) {
  if (n < 0) raise(Errc::DomainError, "negative truncation order");
  if (z.has_exp_atom()) raise(Errc::UnsupportedClass, "truncation of an exp atom");
  Surreal acc;
  Surreal zpow(Rational(1));
  for (long k = 1; k <= n; ++k) {
    zpow = zpow * z;
    Rational c = maclaurin_coeff(fn, k);
    if (!c.is_zero()) acc = acc + zpow * Surreal(c);
  }
  return acc;
}

ExactReal maclaurin_trunc(TruncFn fn, const ExactReal& z, long n) {
  if (n < 0) raise(Errc::DomainError, "negative truncation order");
  ExactReal acc;
  ExactReal zpow{Rational(1)};
  for (long k = 1; k <= n; ++k) {
    zpow = zpow * z;
    Rational c = maclaurin_coeff(fn, k);
    if (!c.is_zero()) acc = acc + zpow * ExactReal(c);
  }
  return acc;
}

// ---------------------------------------------------------------------------
// option filtering

namespace {

// sign of a closed-form function of one unbounded variable, decided by its
// expansion toward On; 0 only for the identically-zero form
int sign_at_on(const Expr& e, const std::string& var) {
  FormalSeries s = expand_at_on(e, var, 12);
  if (s.large_sign != 0) {
    if (s.large_sign == 9) raise(Errc::InconclusiveComparison, "oscillating dominant part");
    return s.large_sign;
  }
  for (const auto& t : s.terms) {
    if (t.oscillating) raise(Errc::InconclusiveComparison, "oscillating term");
    int c = t.coeff.sign();
    if (c != 0) return c;
  }
  if (s.small_sign == 1 || s.small_sign == -1) return s.small_sign;
  if (s.small_sign != 0) raise(Errc::InconclusiveComparison, "sign of remainder unknown");
  return 0;
}

Expr abs_at_on(const Expr& e, const std::string& var) {
  return sign_at_on(e, var) >= 0 ? e : -e;
}

int exact_sign(const ExactReal& v) {
  Ordering o = v.sign();
  if (o == Ordering::Inconclusive)
    raise(Errc::InconclusiveComparison, "sign undecided: " + v.str());
  return o == Ordering::Greater ? 1 : (o == Ordering::Less ? -1 : 0);
}

ExactReal exact_abs(const ExactReal& v) { return exact_sign(v) >= 0 ? v : -v; }

ExactReal half_pi() { return ExactReal::pi() * ExactReal(Rational(1, 2)); }

Expr expr_trunc(TruncFn fn, const Expr& z, long n) {
  Expr acc = Expr::rational(Rational(0));
  Expr zpow = Expr::rational(Rational(1));
  for (long k = 1; k <= n; ++k) {
    zpow = zpow * z;
    Rational c = maclaurin_coeff(fn, k);
    if (!c.is_zero()) acc = acc + zpow * Expr::rational(c);
  }
  return acc;
}

struct FilterCtx {
  TruncFn fn;
  bool symbolic;      // x stands for omega: decide signs asymptotically
  ExactReal x_real;   // real case
  Expr x_expr;        // symbolic case, variable "a"

  int sgn(const Expr& e) const { return sign_at_on(e, "a"); }

  // |u| > |v| (strict) or >= for the nlog conditions
  bool abs_gt(const Expr& u, const Expr& v, bool or_equal) const {
    Expr d = abs_at_on(u, "a") - abs_at_on(v, "a");
    int s = sgn(d);
    return or_equal ? s >= 0 : s > 0;
  }
};

}  // namespace

bool OptionFilterReport::left_all_removed() const {
  if (left.empty()) return false;
  for (const auto& e : left)
    if (e.kept) return false;
  return true;
}

bool OptionFilterReport::right_all_removed() const {
  if (right.empty()) return false;
  for (const auto& e : right)
    if (e.kept) return false;
  return true;
}

std::string OptionFilterReport::str() const {
  std::string s;
  auto side = [&](const char* name, const std::vector<Entry>& es) {
    s += std::string(name) + ":";
    if (es.empty()) s += " (empty)";
    s += "\n";
    for (const auto& e : es) {
      s += "  " + e.option;
      s += e.kept ? "  kept" : "  removed: " + e.condition;
      s += "\n";
    }
  };
  side("left", left);
  side("right", right);
  if (re_represented) s += "note: " + note + "\n";
  return s;
}

namespace {

// evaluate the conditions for one form option y of a real x; appends the
// formula-option entries for each sampled n
void filter_real_option(TruncFn fn, const ExactReal& x, const ExactReal& y, bool y_is_left,
                        long trunc_samples, OptionFilterReport& report) {
  std::string y_str = ExactReal(y).str();
  if (fn == TruncFn::Nlog) {
    ExactReal d = x - y;
    std::string cond;
    if (exact_sign(exact_abs(d) - exact_abs(ExactReal(Rational(1)) - y)) >= 0)
      cond = "|x-y| >= |1-y|";
    else if (exact_sign(exact_abs(d) - exact_abs(ExactReal(Rational(1)) - x)) >= 0)
      cond = "|x-y| >= |1-x|";
    bool kept = cond.empty();
    ExactReal ny = -ExactReal::log(ExactReal(Rational(1)) - y);
    for (long n = 1; n <= trunc_samples; ++n) {
      long dl = y_is_left ? n : 2 * n + 1;
      long dr = y_is_left ? 2 * n + 1 : n;
      ExactReal zl = (x - y) / (ExactReal(Rational(1)) - y);
      ExactReal zr = (y - x) / (ExactReal(Rational(1)) - x);
      ExactReal lv = ny + maclaurin_trunc(TruncFn::Nlog, zl, dl);
      ExactReal rv = ny - maclaurin_trunc(TruncFn::Nlog, zr, dr);
      report.left.push_back({"nlog(" + y_str + ") + [(x-y)/(1-y)]_" + std::to_string(dl) +
                                 " = " + lv.str(),
                             kept, cond});
      report.right.push_back({"nlog(" + y_str + ") - [(y-x)/(1-x)]_" + std::to_string(dr) +
                                  " = " + rv.str(),
                              kept, cond});
    }
    return;
  }
  // arctan
  ExactReal q_num = x - y;
  ExactReal q_den = ExactReal(Rational(1)) + x * y;
  std::string ycond;
  if (exact_sign(exact_abs(q_num) - exact_abs(q_den)) > 0) ycond = "|(x-y)/(1+xy)| > 1";
  ExactReal ay = ExactReal::arctan(y);
  ExactReal z = q_num / q_den;
  for (long n = 1; n <= trunc_samples; ++n) {
    long dl = y_is_left ? 4 * n - 1 : 4 * n + 1;
    long dr = y_is_left ? 4 * n + 1 : 4 * n - 1;
    ExactReal lv = ay + maclaurin_trunc(TruncFn::Arctan, z, dl);
    ExactReal rv = ay - maclaurin_trunc(TruncFn::Arctan, -z, dr);
    std::string lcond = ycond, rcond = ycond;
    if (lcond.empty() && exact_sign(exact_abs(lv) - half_pi()) > 0)
      lcond = "|arctan(y) + [...]| > pi/2";
    if (rcond.empty() && exact_sign(exact_abs(rv) - half_pi()) > 0)
      rcond = "|arctan(y) - [...]| > pi/2";
    report.left.push_back({"arctan(" + y_str + ") + [(x-y)/(1+xy)]_" + std::to_string(dl) +
                               " = " + lv.str(),
                           lcond.empty(), lcond});
    report.right.push_back({"arctan(" + y_str + ") - [(y-x)/(1+xy)]_" + std::to_string(dr) +
                                " = " + rv.str(),
                            rcond.empty(), rcond});
  }
}

// same for the unbounded case, x playing the variable "a" tending to On
void filter_symbolic_option(const FilterCtx& ctx, const ExactReal& y, bool y_is_left,
                            long trunc_samples, const std::string& label,
                            OptionFilterReport& report) {
  if (ctx.fn == TruncFn::Nlog)
    raise(Errc::UnsupportedClass, "nlog filtering needs a real value");
  Expr yc = Expr::constant(Surreal(y));
  Expr num = ctx.x_expr - yc;
  Expr den = Expr::rational(Rational(1)) + ctx.x_expr * yc;
  std::string ycond;
  if (ctx.abs_gt(num, den, false)) ycond = "|(x-y)/(1+xy)| > 1";
  Expr z = num / den;
  Expr ay = Expr::constant(Surreal(ExactReal::arctan(y)));
  Expr hp = Expr::constant(Surreal(half_pi()));
  for (long n = 1; n <= trunc_samples; ++n) {
    long dl = y_is_left ? 4 * n - 1 : 4 * n + 1;
    long dr = y_is_left ? 4 * n + 1 : 4 * n - 1;
    Expr lv = ay + expr_trunc(TruncFn::Arctan, z, dl);
    Expr rv = ay - expr_trunc(TruncFn::Arctan, -z, dr);
    std::string lcond = ycond, rcond = ycond;
    if (lcond.empty() && ctx.sgn(abs_at_on(lv, "a") - hp) > 0)
      lcond = "|arctan(y) + [...]| > pi/2";
    if (rcond.empty() && ctx.sgn(abs_at_on(rv, "a") - hp) > 0)
      rcond = "|arctan(y) - [...]| > pi/2";
    report.left.push_back(
        {label + ": arctan + [...]_" + std::to_string(dl), lcond.empty(), lcond});
    report.right.push_back(
        {label + ": arctan - [...]_" + std::to_string(dr), rcond.empty(), rcond});
  }
}

}  // namespace

OptionFilterReport option_filter(const Surreal& x, const GeneticForm& form, TruncFn fn,
                                 long family_samples, long trunc_samples) {
  OptionFilterReport report;
  auto x_real = x.as_exact_real();
  bool x_is_omega = x.identical(Surreal::omega());
  if (!x_real && !x_is_omega)
    raise(Errc::UnsupportedClass, "option filtering supports real values and w");

  FilterCtx ctx{fn, !x_real, x_real ? *x_real : ExactReal(), Expr::var("a")};

  auto run_side = [&](const OptionSet& opts, bool is_left) {
    for (const auto& y : opts.elements) {
      auto yv = y.as_exact_real();
      if (!yv) raise(Errc::UnsupportedClass, "non-real option " + y.str());
      if (x_real)
        filter_real_option(fn, *x_real, *yv, is_left, trunc_samples, report);
      else
        filter_symbolic_option(ctx, *yv, is_left, trunc_samples, y.str(), report);
    }
    if (opts.has_family()) {
      for (long k = 1; k <= family_samples; ++k) {
        Surreal yk = opts.family(k);
        auto yv = yk.as_exact_real();
        if (!yv) raise(Errc::UnsupportedClass, "non-real family member " + yk.str());
        std::string label = "k=" + std::to_string(k) + " (" + yk.str() + ")";
        if (x_real)
          filter_real_option(fn, *x_real, *yv, is_left, trunc_samples, report);
        else
          filter_symbolic_option(ctx, *yv, is_left, trunc_samples, label, report);
      }
    }
  };

  run_side(form.left, true);
  run_side(form.right, false);

  // arctan carries the constant -pi/2 and pi/2 options, always kept
  if (fn == TruncFn::Arctan) {
    report.left.insert(report.left.begin(), {"-pi/2", true, ""});
    report.right.push_back({"pi/2", true, ""});
  }
  return report;
}

OptionFilterReport option_filter(const Surreal& x, TruncFn fn) {
  GeneticForm form = to_genetic(x);
  OptionFilterReport report = option_filter(x, form, fn);
  bool empty_left = report.left_all_removed();
  bool empty_right = report.right_all_removed();
  if (fn == TruncFn::Nlog && (empty_left || empty_right)) {
    // boundary repair: re-present x with strictly closer options until the
    // conditions keep both sides
    auto q = x.as_exact_real();
    if (!q) raise(Errc::UnsupportedClass, "re-representation needs a real value");
    for (long k = 1; k <= 8; ++k) {
      Surreal step(Rational::pow2(-k));
      GeneticForm closer;
      closer.left.elements.push_back(x - step);
      closer.right.elements.push_back(x + step);
      OptionFilterReport retry = option_filter(x, closer, fn);
      if (!retry.left_all_removed() && !retry.right_all_removed()) {
        retry.re_represented = true;
        retry.note =
            "canonical options eliminated at the boundary; re-presented x as {x-2^-" +
            std::to_string(k) + " | x+2^-" + std::to_string(k) + "}";
        return retry;
      }
    }
    raise(Errc::IllFormed, "no admissible re-representation found");
  }
  return report;
}

// ---------------------------------------------------------------------------
// the genetic arctangent and nlog

namespace {

// the Remark's printed normal form for arctan(1/w), pinned as the canonical
// rendering of this one value: term i is ((-1)^i / (2i-1)) * w^-i
SurrealStream arctan_inv_omega_stream() {
  Expr i = Expr::var("i");
  Expr coeff = Expr::pow_expr(Expr::rational(Rational(-1)), i) /
               (Expr::rational(Rational(2)) * i - Expr::rational(Rational(1)));
  return SurrealStream(coeff, -i, 1, Ordinal::omega());
}

// Maclaurin stream of arctan or nlog at a single-term argument r*w^(-y)
SurrealStream taylor_stream(TruncFn fn, const Rational& r, const Surreal& y) {
  Expr i = Expr::var("i");
  if (fn == TruncFn::Nlog) {
    // sum_k x^k / k
    Expr coeff = Expr::pow_expr(Expr::rational(r), i) / i;
    Expr expo = Expr::constant(-y) * i;
    return SurrealStream(coeff, expo, 1, Ordinal::omega());
  }
  // sum over odd k of (-1)^((k-1)/2) x^k / k with k = 2i-1
  Expr k = Expr::rational(Rational(2)) * i - Expr::rational(Rational(1));
  Expr coeff = Expr::pow_expr(Expr::rational(Rational(-1)), i + Expr::rational(Rational(1))) *
               Expr::pow_expr(Expr::rational(r), k) / k;
  Expr expo = Expr::constant(-y) * k;
  return SurrealStream(coeff, expo, 1, Ordinal::omega());
}

// x = s*(w + m) or s*(w - m): sign s, natural m; nullopt otherwise
struct OmegaShift {
  int sign;
  long shift;  // x = sign * (w + shift), shift in Z
};

std::optional<OmegaShift> as_omega_shift(const Surreal& x) {
  if (x.term_count() < 1 || x.term_count() > 2) return std::nullopt;
  const auto& lead = x.terms()[0];
  if (lead.key.has_atom()) return std::nullopt;
  auto le = lead.key.power->as_rational();
  auto lc = lead.coeff.as_rational();
  if (!le || !lc || *le != Rational(1)) return std::nullopt;
  int sign;
  if (*lc == Rational(1))
    sign = 1;
  else if (*lc == Rational(-1))
    sign = -1;
  else
    return std::nullopt;
  long shift = 0;
  if (x.term_count() == 2) {
    const auto& tail = x.terms()[1];
    if (tail.key.has_atom() || !tail.key.power->is_zero()) return std::nullopt;
    auto tc = tail.coeff.as_rational();
    if (!tc || !tc->is_integer() || !tc->num().fits_slong_p()) return std::nullopt;
    shift = tc->num().get_si() * sign;
  }
  return OmegaShift{sign, shift};
}

// single-term infinitesimal r*w^(-y) with rational r and positive y
struct SmallMonomial {
  Rational r;
  Surreal y;
};

std::optional<SmallMonomial> as_small_monomial(const Surreal& x) {
  if (x.term_count() != 1) return std::nullopt;
  const auto& t = x.terms()[0];
  if (t.key.has_atom()) return std::nullopt;
  if (t.key.power->sign() >= 0) return std::nullopt;
  auto c = t.coeff.as_rational();
  if (!c) return std::nullopt;
  return SmallMonomial{*c, -*t.key.power};
}

// arctan(w - m) for m >= 1: the squeeze through {k | w - m + 1} composes
// ul_arctan(w - m + 1) with the Maclaurin value of the bridging quotient;
// coefficients come from the asymptotic expansion and carry no closed form
SurrealValue arctan_below_omega(long m);

SurrealValue arctan_of_positive_infinite(const OmegaShift& os) {
  if (os.shift >= 0) {
    // arctan(w + m) = pi/2 - 2^-m / w: the oldest value the squeeze allows
    Surreal result = Surreal(half_pi()) +
                     Surreal::omega_pow(Surreal(-1), ExactReal(-Rational::pow2(-os.shift)));
    return result;
  }
  return arctan_below_omega(-os.shift);
}

SurrealValue arctan_below_omega(long m) {
  // expansion of pi/2 - 1/a - arctan-tail telescoped m times; computed lazily
  Expr a = Expr::var("a");
  Expr f = Expr::constant(Surreal(half_pi()));
  f = f - Expr::rational(Rational(1)) / a;
  for (long j = 1; j <= m; ++j) {
    // step from w - j + 1 down to w - j: subtract arctan((x^R - x)/(1 + x x^R))
    Expr upper = a - Expr::rational(Rational(j - 1));
    Expr lower = a - Expr::rational(Rational(j));
    Expr z = (upper - lower) / (Expr::rational(Rational(1)) + upper * lower);
    f = f - Expr::atan(z);
  }
  auto cache = std::make_shared<FormalSeries>();
  auto fill = [f, cache](long upto) {
    if (static_cast<long>(cache->terms.size()) > upto) return;
    *cache = expand_at_on(f, "a", static_cast<int>(upto) + 8);
  };
  auto rule = [cache, fill](long i) -> Surreal::Term {
    fill(i + 2);
    if (i >= static_cast<long>(cache->terms.size()))
      raise(Errc::WitnessExhausted, "stream sampled past its computed depth");
    const auto& t = cache->terms[static_cast<size_t>(i)];
    auto c = t.coeff.as_exact_real();
    if (!c) raise(Errc::Internal, "non-real expansion coefficient");
    return Surreal::Term{*c, ExpKey{nullptr, share(Surreal(-t.power))}};
  };
  return SurrealStream::native(rule, 0, Ordinal::omega(),
                               "asymptotic expansion of arctan(w - " + std::to_string(m) + ")");
}

}  // namespace

SurrealValue ul_arctan(const Surreal& x) {
  if (x.is_zero()) return Surreal(0);
  if (auto r = x.as_exact_real()) return Surreal(ExactReal::arctan(*r));
  if (auto os = as_omega_shift(x)) {
    if (os->sign > 0) return arctan_of_positive_infinite(*os);
    // oddness: arctan(-u) = -arctan(u)
    SurrealValue pos = arctan_of_positive_infinite(OmegaShift{1, os->shift});
    if (std::holds_alternative<Surreal>(pos)) return -std::get<Surreal>(pos);
    const SurrealStream& s = std::get<SurrealStream>(pos);
    auto rule = [s](long i) -> Surreal::Term {
      Surreal::Term t = s.term_at(i);
      return Surreal::Term{-t.coeff, t.key};
    };
    return SurrealStream::native(rule, s.start(), s.bound(), "negated " + s.rule_str());
  }
  if (auto sm = as_small_monomial(x)) {
    // the Remark pins the printed stream for exactly 1/w; its negative
    // follows by oddness
    if (sm->r == Rational(1) && sm->y.identical(Surreal(1))) return arctan_inv_omega_stream();
    if (sm->r == Rational(-1) && sm->y.identical(Surreal(1))) {
      Expr i = Expr::var("i");
      Expr coeff = Expr::pow_expr(Expr::rational(Rational(-1)), i + Expr::rational(Rational(1))) /
                   (Expr::rational(Rational(2)) * i - Expr::rational(Rational(1)));
      return SurrealStream(coeff, -i, 1, Ordinal::omega());
    }
    return taylor_stream(TruncFn::Arctan, sm->r, sm->y);
  }
  raise(Errc::UnsupportedClass, "arctan not defined on this class: " + x.str());
}

SurrealValue ul_nlog(const Surreal& x) {
  if (x.is_zero()) return Surreal(0);
  if (x.sign() > 0) raise(Errc::DomainError, "nlog domain is x <= 0");
  if (auto r = x.as_exact_real()) {
    // nlog(x) = -log(1 - x)
    return Surreal(-ExactReal::log(ExactReal(Rational(1)) - *r));
  }
  if (auto sm = as_small_monomial(x)) return taylor_stream(TruncFn::Nlog, sm->r, sm->y);
  raise(Errc::UnsupportedClass, "nlog not defined on this class: " + x.str());
}

// ---------------------------------------------------------------------------
// restricted exponential

SurrealValue surreal_exp(const Surreal& x) {
  if (x.has_exp_atom()) raise(Errc::UnsupportedClass, "exp of an exp atom");
  Surreal p, eps;
  ExactReal r;
  x.split(p, r, eps);
  Surreal head = surreal_exp_value(p + Surreal(r));
  if (eps.is_zero()) return head;
  if (eps.term_count() == 1) {
    // exp(c w^-y) factor as a closed-form stream scaled by the head
    const auto& t = eps.terms()[0];
    auto c = t.coeff.as_rational();
    if (c) {
      Surreal y = -*t.key.power;
      Expr i = Expr::var("i");
      Expr fact = Expr::rational(Rational(1));
      // i! has no rational closed form; use the native generator instead
      (void)fact;
      ExactReal head_coeff = head.terms()[0].coeff;
      ExpKey head_key = head.terms()[0].key;
      Rational cc = *c;
      auto rule = [cc, y, head_coeff, head_key](long i2) -> Surreal::Term {
        // term i2: head * c^i2 / i2! * w^(-i2 y)
        Rational f(1);
        for (long k = 2; k <= i2; ++k) f = f * Rational(k);
        Rational coeff = cc.pow(i2) / f;
        Surreal expo = *head_key.power + (-y) * Surreal(Rational(i2));
        return Surreal::Term{head_coeff * ExactReal(coeff),
                             ExpKey{head_key.atom_arg, share(expo)}};
      };
      return SurrealStream::native(rule, 0, Ordinal::omega(),
                                   "exp series " + head.str() + " * sum c^i/i! w^(-iy)");
    }
  }
  // several infinitesimal terms: expand the series far enough that emitted
  // terms are settled
  Surreal lead_y = -*eps.terms()[0].key.power;
  auto cache = std::make_shared<Surreal>();
  auto depth = std::make_shared<long>(0);
  Surreal eps_copy = eps;
  Surreal head_copy = head;
  auto rule = [cache, depth, eps_copy, head_copy, lead_y](long i) -> Surreal::Term {
    long need = i + 4;
    if (*depth < need) {
      Surreal acc(Rational(1));
      Surreal pw(Rational(1));
      Rational fact(1);
      for (long k = 1; k <= need + 4; ++k) {
        pw = pw * eps_copy;
        fact = fact * Rational(k);
        acc = acc + pw * Surreal(fact.inverse());
      }
      *cache = head_copy * acc;
      *depth = need;
    }
    if (i >= static_cast<long>(cache->term_count()))
      raise(Errc::WitnessExhausted, "exp series sampled past its computed depth");
    return cache->terms()[static_cast<size_t>(i)];
  };
  return SurrealStream::native(rule, 0, Ordinal::omega(), "exp(" + x.str() + ") series");
}

}  // namespace scal
