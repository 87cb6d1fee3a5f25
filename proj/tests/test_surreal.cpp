#include "doctest.h"

#include <random>

#include "scal/errors.hpp"
#include "scal/genetic.hpp"
#include "scal/surreal.hpp"

using namespace scal;

namespace {

Surreal W() { return Surreal::omega(); }
Surreal inv_w() { return Surreal::omega_pow(Surreal(Rational(-1))); }

std::vector<Surreal> random_surreals(int count, std::mt19937& rng) {
  std::uniform_int_distribution<long> num(-20, 20), den(1, 12), pick(0, 3);
  std::vector<Surreal> xs;
  while (static_cast<int>(xs.size()) < count) {
    std::vector<Surreal::Term> terms;
    int nterms = static_cast<int>(pick(rng));
    for (int t = 0; t <= nterms; ++t) {
      Rational c(num(rng), den(rng));
      long e = pick(rng) - 1;  // exponents -1..2
      terms.push_back({ExactReal(c), ExpKey{nullptr, share(Surreal(Rational(e)))}});
    }
    xs.push_back(Surreal::normalize(terms));
  }
  return xs;
}

}  // namespace

TEST_CASE("normalization merges, cancels, and is idempotent") {
  // w + w -> 2w
  std::vector<Surreal::Term> raw;
  raw.push_back({ExactReal(Rational(1)), ExpKey{nullptr, share(Surreal(1))}});
  raw.push_back({ExactReal(Rational(1)), ExpKey{nullptr, share(Surreal(1))}});
  Surreal two_w = Surreal::normalize(raw);
  CHECK(two_w.term_count() == 1);
  CHECK(two_w.str() == "2*w");

  // 1 + (-1) -> 0
  raw.clear();
  raw.push_back({ExactReal(Rational(1)), ExpKey{nullptr, surreal_zero_ptr()}});
  raw.push_back({ExactReal(Rational(-1)), ExpKey{nullptr, surreal_zero_ptr()}});
  CHECK(Surreal::normalize(raw).is_zero());

  // already canonical stays put: w + 3 + (1/2) w^-1
  Surreal x = W() + Surreal(3) + Surreal::omega_pow(Surreal(-1), ExactReal(Rational(1, 2)));
  CHECK(x.str() == "w + 3 + (1/2)*w^-1");
  std::vector<Surreal::Term> again(x.terms().begin(), x.terms().end());
  CHECK(Surreal::normalize(again).identical(x));
}

TEST_CASE("arithmetic on normal forms") {
  CHECK((Surreal(1) + Surreal(1)).str() == "2");
  CHECK((W() + Surreal(0)).identical(W()));
  // (w + 1/w) + (1 - 1/w) = w + 1
  Surreal lhs = (W() + inv_w()) + (Surreal(1) - inv_w());
  CHECK(lhs.identical(W() + Surreal(1)));
  // w * (1/w) = 1
  CHECK((W() * inv_w()).identical(Surreal(1)));
  // (w+1)*(w-1) = w^2 - 1
  Surreal p = (W() + Surreal(1)) * (W() - Surreal(1));
  CHECK(p.str() == "w^2 - 1");
  // exponent arithmetic is the natural sum on ordinal exponents
  Surreal w_sq = Surreal::omega_pow(Surreal(2));
  CHECK((W() * W()).identical(w_sq));
  CHECK(((W() + Surreal(1)) * W()).str() == "w^2 + w");

  CHECK((W() / W()).identical(Surreal(1)));
  CHECK_THROWS_AS((Surreal(1) / (W() + Surreal(1))), CalcError);

  // field axioms on randomized finite normal forms
  std::mt19937 rng(7);
  auto xs = random_surreals(12, rng);
  for (const auto& a : xs)
    for (const auto& b : xs) {
      CHECK((a + b).identical(b + a));
      CHECK((a * b).identical(b * a));
    }
  for (size_t i = 0; i + 2 < xs.size(); i += 3) {
    const Surreal &a = xs[i], &b = xs[i + 1], &c = xs[i + 2];
    CHECK(((a + b) + c).identical(a + (b + c)));
    CHECK(((a * b) * c).identical(a * (b * c)));
    CHECK((a * (b + c)).identical(a * b + a * c));
    CHECK((a + (-a)).is_zero());
    CHECK((a * Surreal(1)).identical(a));
  }
  // multiplicative inverse for single-term forms
  Surreal st = Surreal::omega_pow(Surreal(2), ExactReal(Rational(3, 4)));
  CHECK((st * st.inverse()).identical(Surreal(1)));
}

TEST_CASE("comparison is lexicographic on normal forms") {
  for (long n : {0L, 1L, 5L, 1000L}) CHECK(Surreal::compare(W(), Surreal(Rational(n))) > 0);
  for (long q : {1L, 2L, 7L}) CHECK(Surreal::compare(inv_w(), Surreal(Rational(1, q))) < 0);
  CHECK(Surreal::compare(inv_w(), Surreal(0)) > 0);
  CHECK(Surreal::compare(W() + Surreal(1), W() + Surreal(Rational(1, 2))) > 0);
  CHECK(Surreal::compare(W(), W() - Surreal(1)) > 0);
  CHECK(Surreal::compare(Surreal::omega_pow(Surreal(2)), W() * Surreal(1000)) > 0);

  // trichotomy on a sample
  std::mt19937 rng(9);
  auto xs = random_surreals(10, rng);
  for (const auto& a : xs)
    for (const auto& b : xs) {
      int c = Surreal::compare(a, b);
      int r = Surreal::compare(b, a);
      CHECK(r == -c);
      CHECK(((c < 0) + (c == 0) + (c > 0)) == 1);
    }

  // exp atoms dominate every plain normal form with ordinal exponents
  Surreal atom = Surreal::exp_monomial(W());
  CHECK(Surreal::compare(atom, Surreal::omega_pow(Surreal(1000))) > 0);
  CHECK(Surreal::compare(atom, Surreal::omega_pow(W())) > 0);
  CHECK(Surreal::compare(atom - Surreal(1), W()) > 0);
  Surreal atom2 = Surreal::exp_monomial(W() * Surreal(2));
  CHECK(Surreal::compare(atom2, atom) > 0);
  CHECK_THROWS_AS(atom * atom, CalcError);
  CHECK((atom * W()).str() == "exp(w)*w");
  // a negative-argument atom is infinitesimal
  Surreal tiny = Surreal::exp_monomial(-W());
  CHECK(Surreal::compare(tiny, Surreal::omega_pow(Surreal(-1000))) < 0);
  CHECK(Surreal::compare(tiny, Surreal(0)) > 0);
}

TEST_CASE("conway oracle on literal forms") {
  GamePtr one = game_dyadic(Rational(1));
  GamePtr two = game_dyadic(Rational(2));
  GamePtr half = game_dyadic(Rational(1, 2));

  // {0|} + {0|} = 2 = {1|}
  CHECK(game_eq(game_add(one, one), two));
  // neg({0|1}) = {-1|0} = -1/2
  CHECK(game_eq(game_neg(half), game_dyadic(Rational(-1, 2))));
  // {0|1} + {0|1} = 1
  CHECK(game_eq(game_add(half, half), one));
  // products
  CHECK(game_eq(game_mul(half, two), one));
  CHECK(game_eq(game_mul(game_dyadic(Rational(3, 4)), game_dyadic(Rational(1, 2))),
                game_dyadic(Rational(3, 8))));

  // the rank guard trips past the configured bound
  GamePtr deep = game_dyadic(Rational(1, 1024));
  CHECK(deep->rank == 11);
  CHECK_THROWS_AS(game_add(deep, deep, 8), CalcError);

  // exhaustive agreement with normal-form arithmetic, birthday <= 4
  auto days = dyadics_by_day(4);
  std::vector<Rational> all;
  for (const auto& day : days) all.insert(all.end(), day.begin(), day.end());
  for (const auto& a : all)
    for (const auto& b : all) {
      GamePtr ga = game_dyadic(a), gb = game_dyadic(b);
      CHECK(game_eq(game_add(ga, gb), game_dyadic(a + b)));
      CHECK(game_leq(ga, gb) == (a <= b));
    }
}

TEST_CASE("simplest_between and the birth order") {
  auto simplest = [](std::vector<Surreal> l, std::vector<Surreal> r) {
    return simplest_between(l, r);
  };
  CHECK(simplest({Surreal(0)}, {Surreal(1)}).str() == "1/2");
  CHECK(simplest({}, {}).str() == "0");
  CHECK(simplest({Surreal(Rational(1, 4))}, {Surreal(Rational(3, 8))}).str() == "5/16");
  CHECK(simplest({Surreal(1)}, {}).str() == "2");
  CHECK(simplest({}, {Surreal(Rational(-1, 2))}).str() == "-1");
  CHECK(simplest({Surreal(Rational(1, 3))}, {Surreal(Rational(2, 3))}).str() == "1/2");
  CHECK_THROWS_AS(simplest({Surreal(1)}, {Surreal(0)}), CalcError);

  // minimality against the literal birth order, endpoints up to day 5
  auto days = dyadics_by_day(6);
  std::vector<std::pair<Rational, int>> with_day;
  for (int d = 0; d < static_cast<int>(days.size()); ++d)
    for (const auto& q : days[d]) with_day.push_back({q, d});
  auto day_of = [&](const Rational& q) {
    for (const auto& [v, d] : with_day)
      if (v == q) return d;
    return 1000;
  };
  for (const auto& [l, dl] : with_day) {
    if (dl > 5) continue;
    for (const auto& [r, dr] : with_day) {
      if (dr > 5 || !(l < r)) continue;
      Rational z = *simplest({Surreal(l)}, {Surreal(r)}).as_rational();
      REQUIRE(l < z);
      REQUIRE(z < r);
      int dz = day_of(z);
      REQUIRE(dz != 1000);
      for (const auto& [v, d] : with_day)
        if (d < dz && l < v && v < r)
          FAIL("older value inside the interval: ", v.str());
    }
  }
}

TEST_CASE("birthdays") {
  CHECK(birthday(Surreal(0)).str() == "0");
  CHECK(birthday(Surreal(Rational(1, 2))).str() == "2");
  CHECK(birthday(Surreal(3)).str() == "3");
  CHECK(birthday(Surreal(Rational(-3, 4))).str() == "3");
  CHECK(birthday(W()) == Ordinal::omega());
  CHECK(birthday(Surreal(Rational(1, 3))) == Ordinal::omega());
  CHECK(birthday(inv_w()) == Ordinal::omega());
  CHECK(birthday(W() * Surreal(2) + Surreal(1)) ==
        Ordinal::omega() * Ordinal::from_uint(2) + Ordinal::from_uint(1));
  CHECK_THROWS_AS(birthday(W() + inv_w()), CalcError);

  // dyadic birthdays agree with the enumeration day
  auto days = dyadics_by_day(7);
  for (int d = 0; d < static_cast<int>(days.size()); ++d)
    for (const auto& q : days[d])
      CHECK(birthday(Surreal(q)) == Ordinal::from_uint(static_cast<std::uint64_t>(d)));
}

TEST_CASE("canonical genetic forms") {
  GeneticForm two = to_genetic(Surreal(2));
  REQUIRE(two.left.elements.size() == 1);
  CHECK(two.left.elements[0].str() == "1");
  CHECK(two.right.empty());

  GeneticForm w = to_genetic(W());
  CHECK(w.left.has_family());
  CHECK(w.right.empty());
  CHECK(w.left.family(3).str() == "3");
  CHECK(w.left.family_desc == "positive integers");

  GeneticForm tq = to_genetic(Surreal(Rational(3, 4)));
  REQUIRE(tq.left.elements.size() == 1);
  REQUIRE(tq.right.elements.size() == 1);
  CHECK(tq.left.elements[0].str() == "1/2");
  CHECK(tq.right.elements[0].str() == "1");

  // x^L < x < x^R across supported values, including family samples
  std::vector<Surreal> sample = {
      Surreal(2),
      Surreal(-2),
      Surreal(Rational(3, 4)),
      Surreal(Rational(-5, 8)),
      W(),
      Surreal(Rational(1, 3)),
      Surreal::from_ordinal(Ordinal::omega() * Ordinal::from_uint(2)),
      Surreal::from_ordinal(Ordinal::omega_pow(Ordinal::from_uint(2)))};
  for (const auto& x : sample) {
    GeneticForm g = to_genetic(x);
    for (const auto& l : g.left.elements) CHECK(Surreal::compare(l, x) < 0);
    for (const auto& r : g.right.elements) CHECK(Surreal::compare(x, r) < 0);
    if (g.left.has_family())
      for (long k = 1; k <= 6; ++k) CHECK(Surreal::compare(g.left.family(k), x) < 0);
    if (g.right.has_family())
      for (long k = 1; k <= 6; ++k) CHECK(Surreal::compare(x, g.right.family(k)) < 0);
  }

  // fundamental sequences for limit ordinals
  GeneticForm w2 = to_genetic(Surreal::from_ordinal(Ordinal::omega() * Ordinal::from_uint(2)));
  CHECK(w2.left.family(3).str() == "w + 3");
  GeneticForm wsq = to_genetic(Surreal::from_ordinal(Ordinal::omega_pow(Ordinal::from_uint(2))));
  CHECK(wsq.left.family(3).str() == "3*w");

  CHECK_THROWS_AS(to_genetic(inv_w()), CalcError);
  CHECK_THROWS_AS(to_genetic(Surreal(ExactReal::pi())), CalcError);
}
