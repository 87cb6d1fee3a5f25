#include "doctest.h"

#include "scal/errors.hpp"
#include "scal/genetic.hpp"
#include "scal/limits.hpp"

using namespace scal;

namespace {

Expr A() { return Expr::var("alpha"); }
Expr X() { return Expr::var("x"); }
Expr r(long n, long d = 1) { return Expr::rational(Rational(n, d)); }

// |f(2^k) - l| as an exact real, for the epsilon-N sanity sample
ExactReal abs_error_at(const Expr& f, long alpha, const Surreal& l) {
  Surreal v = f.eval({{"alpha", Surreal(Rational(alpha))}});
  Surreal d = v - l;
  auto e = d.as_exact_real();
  REQUIRE(e.has_value());
  Ordering s = e->sign();
  return s == Ordering::Less ? -*e : *e;
}

}  // namespace

TEST_CASE("asymptotic expansion") {
  // alpha/(alpha+1) = 1 - t + t^2 - ...
  FormalSeries s = expand_at_on(A() / (A() + r(1)), "alpha", 6);
  REQUIRE(s.terms.size() >= 3);
  CHECK(s.terms[0].power == Rational(0));
  CHECK(s.terms[0].coeff.identical(Surreal(1)));
  CHECK(s.terms[1].power == Rational(1));
  CHECK(s.terms[1].coeff.identical(Surreal(-1)));
  CHECK(s.terms[2].coeff.identical(Surreal(1)));

  // 2 - 2^-alpha: constant 2 plus a remainder below every power
  Expr two_minus = r(2) - Expr::pow_expr(r(2), -A());
  FormalSeries s2 = expand_at_on(two_minus, "alpha", 6);
  REQUIRE(s2.terms.size() == 1);
  CHECK(s2.terms[0].power == Rational(0));
  CHECK(s2.terms[0].coeff.identical(Surreal(2)));
  CHECK(s2.small_sign != 0);
  CHECK(s2.large_sign == 0);

  // exp(c/alpha) with surreal constant c = w: 1 + c t + c^2 t^2/2 + ...
  Expr e = Expr::exp(Expr::constant(Surreal::omega()) / A());
  FormalSeries s3 = expand_at_on(e, "alpha", 5);
  REQUIRE(s3.terms.size() >= 3);
  CHECK(s3.terms[0].coeff.identical(Surreal(1)));
  CHECK(s3.terms[1].coeff.identical(Surreal::omega()));
  CHECK(s3.terms[2].coeff.identical(Surreal::omega() * Surreal::omega() *
                                    Surreal(Rational(1, 2))));
}

TEST_CASE("sequence limits") {
  // f(alpha) = 2 - 1/2^alpha -> 2
  Expr f = r(2) - Expr::pow_expr(r(2), -A());
  LimitResult l = seq_limit(f, "alpha");
  REQUIRE(l.tag == LimitResult::Tag::Number);
  CHECK(l.number.identical(Surreal(2)));

  // f(alpha) = alpha -> the gap On, formula value only
  LimitResult on = seq_limit(A(), "alpha");
  REQUIRE(on.tag == LimitResult::Tag::Gap);
  CHECK(on.gap->kind() == DedekindSection::Kind::On);
  CHECK(on.formula_only);

  LimitResult off = seq_limit(-A(), "alpha");
  CHECK(off.gap->kind() == DedekindSection::Kind::Off);

  // f(alpha) = alpha/(alpha+1) -> 1
  LimitResult one = seq_limit(A() / (A() + r(1)), "alpha");
  REQUIRE(one.tag == LimitResult::Tag::Number);
  CHECK(one.number.identical(Surreal(1)));

  // oscillation: (-1)^alpha has no limit; (-1)^alpha / alpha -> 0
  LimitResult osc = seq_limit(Expr::pow_expr(r(-1), A()), "alpha");
  REQUIRE(osc.tag == LimitResult::Tag::NoLimit);
  CHECK(osc.reason == LimitResult::Reason::Oscillatory);
  LimitResult damped = seq_limit(Expr::pow_expr(r(-1), A()) / A(), "alpha");
  REQUIRE(damped.tag == LimitResult::Tag::Number);
  CHECK(damped.number.is_zero());

  // geometric decay with a negative ratio still vanishes
  LimitResult neg = seq_limit(Expr::pow_expr(r(-3, 4), A()), "alpha");
  REQUIRE(neg.tag == LimitResult::Tag::Number);
  CHECK(neg.number.is_zero());

  // 2^alpha runs off to On
  LimitResult big = seq_limit(Expr::pow_expr(r(2), A()), "alpha");
  REQUIRE(big.tag == LimitResult::Tag::Gap);
  CHECK(big.gap->kind() == DedekindSection::Kind::On);

  // shift lemma: dropping finitely many head terms changes nothing
  for (long k = 1; k <= 5; ++k) {
    Expr shifted = f.substitute("alpha", A() + r(k));
    LimitResult lk = seq_limit(shifted, "alpha");
    REQUIRE(lk.tag == LimitResult::Tag::Number);
    CHECK(lk.number.identical(l.number));
  }

  // free variables are rejected
  CHECK_THROWS_AS(seq_limit(A() + X(), "alpha"), CalcError);

  // epsilon-N sanity: |f(2^k) - 2| decreases along k = 10..20
  ExactReal prev = abs_error_at(f, 1 << 10, Surreal(2));
  for (int k = 11; k <= 20; ++k) {
    ExactReal cur = abs_error_at(f, 1L << k, Surreal(2));
    CHECK(ExactReal::compare(cur, prev) == Ordering::Less);
    prev = cur;
  }
}

TEST_CASE("limit laws on decided pairs") {
  struct Known {
    Expr f;
    Surreal limit;
  };
  std::vector<Known> battery = {
      {r(3), Surreal(3)},
      {A() / (A() + r(1)), Surreal(1)},
      {r(2) - Expr::pow_expr(r(2), -A()), Surreal(2)},
      {Expr::exp(r(1) / A()), Surreal(1)},
      {(A() + r(5)) / (A() + r(2)), Surreal(1)},
      {r(1) / A(), Surreal(0)},
      {Expr::atan(r(1) / A()), Surreal(0)},
      {(r(2) * A() + r(1)) / (A() + r(7)), Surreal(2)},
      {Expr::log((A() + r(1)) / A()), Surreal(0)},
      {Expr::pow_expr(r(1, 2), A()), Surreal(0)},
  };
  int checked = 0;
  for (const auto& u : battery)
    for (const auto& v : battery) {
      LimitResult sum = seq_limit(u.f + v.f, "alpha");
      REQUIRE(sum.tag == LimitResult::Tag::Number);
      CHECK(sum.number.identical(u.limit + v.limit));
      LimitResult prod = seq_limit(u.f * v.f, "alpha");
      REQUIRE(prod.tag == LimitResult::Tag::Number);
      CHECK(prod.number.identical(u.limit * v.limit));
      ++checked;
    }
  CHECK(checked == 100);
}

TEST_CASE("function limits") {
  // constants and polynomials
  LimitResult c = fn_limit(r(7), "x", LimitPoint::at(Surreal(3)), LimitSide::Both);
  CHECK(c.number.identical(Surreal(7)));

  // (exp(x)-1)/x -> 1 at 0
  Expr f = (Expr::exp(X()) - r(1)) / X();
  LimitResult one = fn_limit(f, "x", LimitPoint::at(Surreal(0)), LimitSide::Both);
  REQUIRE(one.tag == LimitResult::Tag::Number);
  CHECK(one.number.identical(Surreal(1)));
  // finite-difference cross-check at dyadic points 2^-k
  for (int k = 3; k <= 10; ++k) {
    Rational h = Rational::pow2(-k);
    Surreal v = f.eval({{"x", Surreal(h)}});
    Surreal gap = v - Surreal(1);
    auto e = gap.as_exact_real();
    REQUIRE(e.has_value());
    Interval iv = e->refine(Rational::pow2(-40));
    CHECK(iv.lo.abs() <= h);
    CHECK(iv.hi.abs() <= h);
  }

  // 1/x from the right of 0 runs to On; two-sided has no single answer
  LimitResult on = fn_limit(r(1) / X(), "x", LimitPoint::at(Surreal(0)), LimitSide::Right);
  REQUIRE(on.tag == LimitResult::Tag::Gap);
  CHECK(on.gap->kind() == DedekindSection::Kind::On);
  LimitResult both = fn_limit(r(1) / X(), "x", LimitPoint::at(Surreal(0)), LimitSide::Both);
  CHECK(both.tag == LimitResult::Tag::NoLimit);

  // x -> INFTY reuses the 1/t substitution
  LimitResult at_inf = fn_limit(r(1) / X(), "x", LimitPoint::infty(), LimitSide::Left);
  REQUIRE(at_inf.tag == LimitResult::Tag::Number);
  CHECK(at_inf.number.is_zero());
  LimitResult at_off = fn_limit(Expr::exp(X()), "x", LimitPoint::off(), LimitSide::Right);
  REQUIRE(at_off.tag == LimitResult::Tag::Number);
  CHECK(at_off.number.is_zero());

  // limits at surreal points work over the exact field
  LimitResult at_w =
      fn_limit(X() * X(), "x", LimitPoint::at(Surreal::omega()), LimitSide::Both);
  REQUIRE(at_w.tag == LimitResult::Tag::Number);
  CHECK(at_w.number.identical(Surreal::omega() * Surreal::omega()));
}

TEST_CASE("derivatives as limits of difference quotients") {
  // d/dx x^2 = 2x, symbolically
  Expr d1 = derivative_expr(X().pow(2), "x");
  CHECK(Expr::equivalent(d1, r(2) * X()));
  // constants die
  CHECK(Expr::equivalent(derivative_expr(r(5), "x"), r(0)));
  // d/dx exp at 0 is 1
  CHECK(derivative_at(Expr::exp(X()), "x", Surreal(0)).identical(Surreal(1)));

  // difference-quotient derivative equals the rule-based one on a battery
  std::vector<Expr> battery = {
      X().pow(2),
      X().pow(3) + r(2) * X(),
      Expr::exp(X()),
      X() * Expr::exp(X()),
      Expr::atan(X()),
      r(1) / (X() + r(3)),
      Expr::exp(X()) * Expr::exp(X()),
      (X().pow(2) + r(1)) / (X() + r(2)),
  };
  for (const auto& f : battery) {
    Expr via_limit = derivative_expr(f, "x");
    Expr via_rules = f.derivative("x");
    CHECK(Expr::equivalent(via_limit, via_rules));
  }
}

TEST_CASE("cauchy classification") {
  // partial sums of sum 1/w^i approach the Type Ia gap
  SurrealStream terms(Expr::rational(Rational(1)), -Expr::var("i"), 0, std::nullopt);
  CauchyResult a = classify_cauchy_stream(terms);
  REQUIRE(a.tag == CauchyResult::Tag::ApproachesTypeIa);
  CHECK(classify_gap(*a.gap) == GapTag::TypeIa);

  CauchyResult b = classify_cauchy(A(), "alpha");
  REQUIRE(b.tag == CauchyResult::Tag::NotCauchy);
  CHECK(b.reason == "unbounded");

  CauchyResult c = classify_cauchy(Expr::pow_expr(r(1, 2), A()), "alpha");
  REQUIRE(c.tag == CauchyResult::Tag::ConvergesTo);
  CHECK(c.value.is_zero());

  CauchyResult d = classify_cauchy(Expr::pow_expr(r(-1), A()), "alpha");
  REQUIRE(d.tag == CauchyResult::Tag::NotCauchy);
  CHECK(d.reason == "oscillatory");

  // a stream whose exponents stall is not Cauchy
  SurrealStream stall(Expr::rational(Rational(1)),
                      Expr::rational(Rational(1)) / Expr::var("i"), 1, std::nullopt);
  CauchyResult e = classify_cauchy_stream(stall);
  CHECK(e.tag == CauchyResult::Tag::NotCauchy);
}

namespace {

// decision recipe on the oracle classes: take the members strictly below the
// sup of the left union (dually above the inf of the right union) and ask
// for the oldest number between; more than one universe element strictly
// inside (sup, inf) signals that the section is not a Dedekind representation
struct OracleReading {
  bool has_limit;
  Surreal value;
};

OracleReading read_oracle(const OracleSection& s) {
  REQUIRE(!s.left.empty());
  REQUIRE(!s.right.empty());
  Rational sup = s.left.back();
  Rational inf = s.right.front();
  std::vector<Rational> between;
  for (const auto& u : s.universe)
    if (sup < u && u < inf) between.push_back(u);
  if (between.size() > 1) return {false, Surreal()};
  std::vector<Surreal> lo, hi;
  for (const auto& u : s.left)
    if (u < sup) lo.push_back(Surreal(u));
  for (const auto& u : s.right)
    if (u > inf) hi.push_back(Surreal(u));
  return {true, simplest_between(lo, hi)};
}

}  // namespace

TEST_CASE("literal dedekind oracle") {
  // 1/2^n heads to 0
  std::vector<Surreal> halves;
  for (int n = 0; n <= 20; ++n) halves.push_back(Surreal(Rational::pow2(-n)));
  OracleReading s = read_oracle(seq_limit_oracle(halves, 6));
  REQUIRE(s.has_limit);
  CHECK(s.value.is_zero());
  // agreement with the engine on the matching closed form
  LimitResult engine = seq_limit(Expr::pow_expr(r(1, 2), A()), "alpha");
  CHECK(engine.number.identical(s.value));

  // a constant sequence cuts exactly at its value
  std::vector<Surreal> constant(10, Surreal(Rational(3, 4)));
  OracleReading cs = read_oracle(seq_limit_oracle(constant, 6));
  REQUIRE(cs.has_limit);
  CHECK(cs.value.identical(Surreal(Rational(3, 4))));

  // alternating 0,1: the classes leave a hole with numbers inside
  std::vector<Surreal> alt;
  for (int n = 0; n < 12; ++n) alt.push_back(Surreal(Rational(n % 2)));
  OracleReading as = read_oracle(seq_limit_oracle(alt, 4));
  CHECK(!as.has_limit);
}
