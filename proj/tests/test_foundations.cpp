#include "doctest.h"

#include <random>
#include <vector>

#include "scal/errors.hpp"
#include "scal/exact_real.hpp"
#include "scal/ordinal.hpp"
#include "scal/rational.hpp"

using namespace scal;

namespace {

// ---------------------------------------------------------------------------
// independent pi oracle: classic Machin formula with bracketed partial sums

Interval oracle_atan_small(const Rational& q, const Rational& width) {
  Rational prev(0), sum = q, power = q, q2 = q * q;
  long i = 1;
  while ((sum - prev).abs() >= width) {
    power = power * q2 * Rational(-1);
    prev = sum;
    sum += power / Rational(2 * i + 1);
    ++i;
  }
  return {min(prev, sum), max(prev, sum)};
}

Interval oracle_pi(const Rational& width) {
  // pi = 16*arctan(1/5) - 4*arctan(1/239)
  Interval a = oracle_atan_small(Rational(1, 5), width / 64);
  Interval b = oracle_atan_small(Rational(1, 239), width / 64);
  return {Rational(16) * a.lo - Rational(4) * b.hi, Rational(16) * a.hi - Rational(4) * b.lo};
}

// 3.1415926535897932384626433832795028841971694 (43 fractional digits)
const Rational kPiDigits(
    mpz_class("31415926535897932384626433832795028841971694"),
    mpz_class("10000000000000000000000000000000000000000000"));

// ---------------------------------------------------------------------------
// word-concatenation model for small ordinals: an ordinal is the
// non-increasing word of its CNF exponents with multiplicity; the order type
// of a concatenation keeps a letter iff no strictly larger letter follows it

std::vector<Ordinal> to_word(const Ordinal& a) {
  std::vector<Ordinal> w;
  for (const auto& t : a.terms())
    for (std::uint64_t k = 0; k < t.count; ++k) w.push_back(*t.expo);
  return w;
}

Ordinal from_word(std::vector<Ordinal> w) {
  std::vector<Ordinal::Term> terms;
  for (const auto& e : w) {
    if (!terms.empty() && *terms.back().expo == e) {
      terms.back().count += 1;
    } else {
      terms.push_back({std::make_shared<Ordinal>(e), 1});
    }
  }
  return Ordinal::from_terms(std::move(terms));
}

Ordinal oracle_add(const Ordinal& a, const Ordinal& b) {
  std::vector<Ordinal> w = to_word(a), wb = to_word(b);
  w.insert(w.end(), wb.begin(), wb.end());
  std::vector<Ordinal> kept;
  for (size_t i = 0; i < w.size(); ++i) {
    bool absorbed = false;
    for (size_t j = i + 1; j < w.size() && !absorbed; ++j)
      if (w[j] > w[i]) absorbed = true;
    if (!absorbed) kept.push_back(w[i]);
  }
  return from_word(kept);
}

Ordinal oracle_mul(const Ordinal& a, const Ordinal& b) {
  if (a.is_zero() || b.is_zero()) return Ordinal();
  Ordinal acc;
  for (const auto& t : b.terms()) {
    Ordinal piece;
    if (t.expo->is_zero()) {
      for (std::uint64_t k = 0; k < t.count; ++k) piece = oracle_add(piece, a);
    } else {
      piece = Ordinal::omega_pow(oracle_add(a.leading_exponent(), *t.expo), t.count);
    }
    acc = oracle_add(acc, piece);
  }
  return acc;
}

std::vector<Ordinal> small_ordinals() {
  std::vector<Ordinal> xs;
  Ordinal w = Ordinal::omega();
  auto n = [](std::uint64_t k) { return Ordinal::from_uint(k); };
  xs.push_back(n(0));
  xs.push_back(n(1));
  xs.push_back(n(2));
  xs.push_back(n(5));
  xs.push_back(w);
  xs.push_back(w + n(1));
  xs.push_back(w + n(3));
  xs.push_back(w * n(2));
  xs.push_back(w * n(2) + n(1));
  xs.push_back(Ordinal::omega_pow(n(2)));
  xs.push_back(Ordinal::omega_pow(n(2), 3) + w + n(2));
  xs.push_back(Ordinal::omega_pow(n(3)) + Ordinal::omega_pow(n(1), 2));
  xs.push_back(Ordinal::omega_pow(w));  // w^w
  return xs;
}

}  // namespace

TEST_CASE("rational basics and field axioms") {
  CHECK(Rational(1, 2) + Rational(1, 3) == Rational(5, 6));
  CHECK(Rational(2, 4) == Rational(1, 2));
  CHECK(Rational(-3, -6) == Rational(1, 2));
  CHECK(Rational(1, 3).is_dyadic() == false);
  CHECK(Rational(3, 8).is_dyadic() == true);
  CHECK(Rational::pow2(-3) == Rational(1, 8));
  CHECK(Rational(7, 2).floor() == 3);
  CHECK(Rational(-7, 2).floor() == -4);
  CHECK(Rational(7, 2).ceil() == 4);
  CHECK(Rational(22, 7).str() == "22/7");

  std::mt19937 rng(42);
  auto rnd = [&]() {
    std::uniform_int_distribution<long> num(-50, 50), den(1, 30);
    return Rational(num(rng), den(rng));
  };
  for (int i = 0; i < 1000; ++i) {
    Rational a = rnd(), b = rnd(), c = rnd();
    CHECK(a + b == b + a);
    CHECK((a + b) + c == a + (b + c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK(a + Rational(0) == a);
    CHECK(a * Rational(1) == a);
    CHECK(a + (-a) == Rational(0));
    if (!a.is_zero()) CHECK(a * a.inverse() == Rational(1));
  }
}

TEST_CASE("ordinal arithmetic in Cantor normal form") {
  Ordinal w = Ordinal::omega();
  auto n = [](std::uint64_t k) { return Ordinal::from_uint(k); };

  // left absorption and non-commutativity
  CHECK(n(1) + w == w);
  CHECK(w + n(1) > w);
  CHECK(n(2) * w == w);
  CHECK(w * n(2) == w + w);
  CHECK((w + n(1)) + (w + n(1)) == w * n(2) + n(1));
  CHECK((w + n(1)) * n(2) == w * n(2) + n(1));
  CHECK(w * w == Ordinal::omega_pow(n(2)));
  CHECK(Ordinal::natural_add(w + n(1), w + n(1)) == w * n(2) + n(2));

  CHECK(Ordinal::from_uint(3).str() == "3");
  CHECK((Ordinal::omega_pow(n(2), 3) + w + n(2)).str() == "w^2*3 + w + 2");
  CHECK(Ordinal::omega_pow(w).str() == "w^(w)");

  auto xs = small_ordinals();
  for (const auto& a : xs)
    for (const auto& b : xs) {
      CHECK(a + b == oracle_add(a, b));
      CHECK(a * b == oracle_mul(a, b));
    }
  // associativity and strict right monotonicity on all sampled triples
  for (const auto& a : xs)
    for (const auto& b : xs)
      for (const auto& c : xs) {
        CHECK((a + b) + c == a + (b + c));
        CHECK((a * b) * c == a * (b * c));
        if (b < c) CHECK(a + b < a + c);
      }
  // total order: trichotomy on pairs
  for (const auto& a : xs)
    for (const auto& b : xs) {
      int c = Ordinal::compare(a, b);
      CHECK(((c == 0) + (c < 0) + (c > 0)) == 1);
      CHECK(Ordinal::compare(b, a) == -c);
    }
}

TEST_CASE("exact real refinement") {
  RefineBudget budget;

  // a rational is its own enclosure
  Interval third = ExactReal(Rational(1, 3)).refine(Rational(1, 100), budget);
  CHECK(third.contains(Rational(1, 3)));
  CHECK(third.width() <= Rational(1, 100));

  // pi to 1e-6 against the independent Machin oracle and frozen digits
  Interval porc = oracle_pi(Rational(1, 1000000000000L));
  CHECK(porc.contains(kPiDigits));
  Interval piv = ExactReal::pi().refine(Rational(1, 1000000), budget);
  CHECK(piv.width() <= Rational(1, 1000000));
  CHECK(piv.lo >= Rational(3141592, 1000000));
  CHECK(piv.hi <= Rational(3141594, 1000000));
  CHECK(piv.lo <= porc.hi);
  CHECK(piv.hi >= porc.lo);
  CHECK(piv.contains(kPiDigits));

  // arctan(1) - pi/4 normalizes to zero exactly
  ExactReal d = ExactReal::arctan(ExactReal(Rational(1))) -
                ExactReal::pi() * ExactReal(Rational(1, 4));
  CHECK(d.is_zero());
  Interval z = d.refine(Rational(mpz_class(1), mpz_class("1000000000")), budget);
  CHECK(z.contains(Rational(0)));

  // nested refinement on assorted nodes
  std::vector<ExactReal> nodes;
  nodes.push_back(ExactReal::pi());
  nodes.push_back(ExactReal::e());
  nodes.push_back(ExactReal::log(ExactReal(Rational(3))));
  nodes.push_back(ExactReal::arctan(ExactReal(Rational(2))));
  nodes.push_back(ExactReal::pi() * ExactReal::log(ExactReal(Rational(2))) + ExactReal::e());
  nodes.push_back((ExactReal::pi() - ExactReal(Rational(3))).inverse());
  nodes.push_back(ExactReal::exp(ExactReal(Rational(5, 2))));
  nodes.push_back(ExactReal::exp(ExactReal(Rational(-7, 3))));
  for (const auto& x : nodes) {
    Interval prev = x.refine(Rational(1, 10), budget);
    for (long k : {100L, 100000L, 100000000L}) {
      Interval cur = x.refine(Rational(1, k), budget);
      CHECK(cur.lo >= prev.lo);
      CHECK(cur.hi <= prev.hi);
      CHECK(cur.width() <= Rational(1, k));
      prev = cur;
    }
  }

  // budget exhaustion is an error for refine (fresh node, nothing cached)
  RefineBudget tiny;
  tiny.nodes = 3;
  ExactReal fresh = ExactReal::log(ExactReal(Rational(12345, 7)));
  CHECK_THROWS_AS(fresh.refine(Rational(1, 1000000), tiny), CalcError);
  try {
    fresh.refine(Rational(1, 1000000), tiny);
  } catch (const CalcError& e) {
    CHECK(e.code() == Errc::PrecisionExhausted);
  }
}

TEST_CASE("exact real comparison") {
  CHECK(ExactReal::compare(ExactReal(Rational(1, 2)), ExactReal(Rational(1, 3))) ==
        Ordering::Greater);
  CHECK(ExactReal::compare(ExactReal::arctan(ExactReal(Rational(1))),
                           ExactReal::pi() * ExactReal(Rational(1, 4))) == Ordering::Equal);
  // pi < 355/113, decided by interval refinement
  CHECK(ExactReal::compare(ExactReal::pi(), ExactReal(Rational(355, 113))) == Ordering::Less);

  // normalization rules
  CHECK(ExactReal::exp(ExactReal()) == ExactReal(Rational(1)));
  CHECK(ExactReal::log(ExactReal(Rational(1))) == ExactReal());
  CHECK(ExactReal::exp(ExactReal(Rational(1))) == ExactReal::e());
  CHECK(ExactReal::exp(ExactReal::log(ExactReal(Rational(5)))) == ExactReal(Rational(5)));
  CHECK(ExactReal::log(ExactReal::exp(ExactReal(Rational(4)))) == ExactReal(Rational(4)));
  CHECK(ExactReal::exp(ExactReal(Rational(2))) * ExactReal::exp(ExactReal(Rational(-2))) ==
        ExactReal(Rational(1)));
  ExactReal half_pi = ExactReal::pi() * ExactReal(Rational(1, 2));
  CHECK(half_pi + half_pi == ExactReal::pi());
  CHECK((half_pi - ExactReal(Rational(1))) + ExactReal(Rational(1)) == half_pi);
  CHECK(ExactReal::arctan(ExactReal(Rational(-1))) ==
        -(ExactReal::pi() * ExactReal(Rational(1, 4))));
  // exp additivity across symbolic arguments
  CHECK(ExactReal::exp(ExactReal::pi()) * ExactReal::exp(-ExactReal::pi()) ==
        ExactReal(Rational(1)));

  // an identity outside the rule set is honestly Inconclusive
  ExactReal lhs = ExactReal::arctan(ExactReal(Rational(2))) +
                  ExactReal::arctan(ExactReal(Rational(1, 2)));
  RefineBudget budget;
  budget.min_width = Rational::pow2(-96);
  CHECK(ExactReal::compare(lhs, ExactReal::pi() * ExactReal(Rational(1, 2)), budget) ==
        Ordering::Inconclusive);

  // antisymmetry and transitivity on a decided sample
  std::vector<ExactReal> xs;
  xs.push_back(ExactReal());
  xs.push_back(ExactReal(Rational(1)));
  xs.push_back(ExactReal(Rational(1, 2)));
  xs.push_back(ExactReal(Rational(-2, 3)));
  xs.push_back(ExactReal::pi());
  xs.push_back(ExactReal::pi() * ExactReal(Rational(1, 2)));
  xs.push_back(ExactReal::e());
  xs.push_back(ExactReal::log(ExactReal(Rational(2))));
  xs.push_back(ExactReal::arctan(ExactReal(Rational(2))));
  xs.push_back(ExactReal(Rational(355, 113)));
  auto ord = [](const ExactReal& a, const ExactReal& b) { return ExactReal::compare(a, b); };
  for (const auto& a : xs)
    for (const auto& b : xs) {
      Ordering ab = ord(a, b), ba = ord(b, a);
      REQUIRE(ab != Ordering::Inconclusive);
      if (ab == Ordering::Equal) CHECK(ba == Ordering::Equal);
      if (ab == Ordering::Less) CHECK(ba == Ordering::Greater);
      if (ab == Ordering::Greater) CHECK(ba == Ordering::Less);
    }
  for (const auto& a : xs)
    for (const auto& b : xs)
      for (const auto& c : xs)
        if (ord(a, b) == Ordering::Less && ord(b, c) == Ordering::Less)
          CHECK(ord(a, c) == Ordering::Less);
}

TEST_CASE("exact real rendering") {
  CHECK(ExactReal::pi().str() == "pi");
  CHECK((ExactReal::pi() * ExactReal(Rational(1, 2))).str() == "pi/2");
  CHECK((ExactReal::pi() * ExactReal(Rational(3, 4))).str() == "3*pi/4");
  CHECK(ExactReal::e().str() == "e");
  CHECK(ExactReal::exp(ExactReal(Rational(2))).str() == "e^2");
  CHECK(ExactReal::log(ExactReal(Rational(2))).str() == "log(2)");
  CHECK((ExactReal::pi() * ExactReal(Rational(1, 2)) - ExactReal(Rational(1))).str() ==
        "pi/2 - 1");
  CHECK((-ExactReal::log(ExactReal(Rational(2)))).str() == "-log(2)");
  CHECK(ExactReal().str() == "0");
}
