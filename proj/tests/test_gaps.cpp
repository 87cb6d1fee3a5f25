#include "doctest.h"

#include "scal/errors.hpp"
#include "scal/genetic.hpp"
#include "scal/limits.hpp"
#include "scal/section.hpp"

using namespace scal;

namespace {

Surreal W() { return Surreal::omega(); }

// sum over i >= start of w^(-i)
SurrealStream geometric_gap_stream(long start = 0) {
  return SurrealStream(Expr::rational(Rational(1)), -Expr::var("i"), start, std::nullopt);
}

// the section "numbers with real part < 2 | real part >= 2"
DedekindSection real_part_two_gap() {
  return DedekindSection::type2(Surreal(2), -1, DedekindSection::cut(Surreal(0), true));
}

}  // namespace

TEST_CASE("validate_section accepts gaps and rewrites pseudo-gaps") {
  // "all <= 0 | all > 0" is the number 0 under the restriction
  DedekindSection above = DedekindSection::cut(Surreal(0), false);
  DedekindSection v = validate_section(above);
  CHECK(v.kind() == DedekindSection::Kind::Number);
  CHECK(v.number_value().is_zero());

  // On = {No | } stays a gap of Type II flavor
  CHECK(validate_section(DedekindSection::on()).kind() == DedekindSection::Kind::On);
  CHECK(classify_gap(DedekindSection::on()) == GapTag::TypeII);

  // w^Off = 1/On is rejected as a gap and lands on its number
  DedekindSection woff = omega_power_gap(DedekindSection::off());
  CHECK(woff.kind() == DedekindSection::Kind::Number);
  CHECK(woff.number_value().is_zero());

  // idempotence on assorted sections
  std::vector<DedekindSection> sections = {
      DedekindSection::on(), DedekindSection::off(), DedekindSection::infty(),
      DedekindSection::type1(geometric_gap_stream()), real_part_two_gap()};
  for (const auto& s : sections) {
    DedekindSection once = validate_section(s);
    CHECK(validate_section(once).identical(once));
  }

  // exhaustive pseudo-gap battery over dyadics: both cut shapes collapse
  for (const auto& day : dyadics_by_day(6))
    for (const auto& q : day) {
      for (bool below : {true, false}) {
        DedekindSection c = DedekindSection::cut(Surreal(q), below);
        DedekindSection n = validate_section(c);
        REQUIRE(n.kind() == DedekindSection::Kind::Number);
        CHECK(n.number_value().identical(Surreal(q)));
        CHECK(classify_gap(n) == GapTag::NotAGap);
      }
    }

  // a malformed stream is rejected exactly
  SurrealStream increasing(Expr::rational(Rational(1)), Expr::var("i"), 0, std::nullopt);
  CHECK_THROWS_AS(validate_section(DedekindSection::type1(increasing)), CalcError);
}

TEST_CASE("gap classification") {
  CHECK(classify_gap(DedekindSection::type1(geometric_gap_stream())) == GapTag::TypeIa);

  // exponents 1/i tend to 0, not Off
  SurrealStream slow(Expr::rational(Rational(1)),
                     Expr::rational(Rational(1)) / Expr::var("i"), 1, std::nullopt);
  CHECK(classify_gap(DedekindSection::type1(slow)) == GapTag::TypeIb);

  CHECK(classify_gap(real_part_two_gap()) == GapTag::TypeII);
  CHECK(classify_gap(DedekindSection::infty()) == GapTag::TypeII);
  CHECK(classify_gap(DedekindSection::number(Surreal(5))) == GapTag::NotAGap);

  // stability under prefix perturbation: patching finitely many head terms
  // never changes the Ia tag
  DedekindSection base = DedekindSection::type1(geometric_gap_stream());
  for (long k : {0L, 1L, 5L}) {
    Surreal edit = Surreal::omega_pow(Surreal(-k), ExactReal(Rational(3, 8)));
    DedekindSection patched = gap_plus_number(edit, base);
    CHECK(classify_gap(patched) == GapTag::TypeIa);
  }
}

TEST_CASE("gap translation and absorption") {
  DedekindSection g = DedekindSection::type1(geometric_gap_stream());
  CHECK(gap_plus_number(Surreal(0), g).identical(g));

  // 1 (+) sum w^-i adjusts the leading term to 2
  DedekindSection shifted = gap_plus_number(Surreal(1), g);
  REQUIRE(shifted.kind() == DedekindSection::Kind::TypeI);
  Surreal::Term head = shifted.stream().term_at(0);
  CHECK(head.coeff == ExactReal(Rational(2)));
  CHECK(head.key.power->is_zero());
  Surreal::Term next = shifted.stream().term_at(1);
  CHECK(next.coeff == ExactReal(Rational(1)));
  CHECK(next.key.power->identical(Surreal(-1)));

  // the real-part gap absorbs every infinitesimal
  DedekindSection rp = real_part_two_gap();
  Surreal eps = Surreal::omega_pow(Surreal(-1), ExactReal(Rational(1, 7)));
  CHECK(gap_plus_number(eps, rp).identical(rp));
  // but moves under real translation
  DedekindSection moved = gap_plus_number(Surreal(1), rp);
  CHECK(std::get<Surreal>(moved.prefix()).identical(Surreal(3)));

  // window absorption on Type Ia streams: an edit below the sampled window
  // leaves the term rule alone there
  Surreal tiny = Surreal::omega_pow(Surreal(-100), ExactReal(Rational(1)));
  DedekindSection deep = gap_plus_number(tiny, g);
  for (long i = 0; i < 64; ++i) {
    Surreal::Term a = deep.stream().term_at(i);
    Surreal::Term b = g.stream().term_at(i);
    CHECK(ExactReal::struct_compare(a.coeff, b.coeff) == 0);
    CHECK(Surreal::struct_compare(*a.key.power, *b.key.power) == 0);
  }
  CHECK(deep.stream().tail_pending().size() == 1);
}

TEST_CASE("membership through omega powers") {
  // theta strictly above 0: the 0 option keeps 1 on the left
  DedekindSection w_theta = omega_power_gap(DedekindSection::cut(Surreal(1), true));
  CHECK(section_side(w_theta, Surreal(1)) == -1);

  // theta pinned below 3 puts w^3 on the right
  DedekindSection below3 = omega_power_gap(DedekindSection::cut(Surreal(Rational(5, 2)), true));
  CHECK(section_side(below3, Surreal::omega_pow(Surreal(3))) == 1);
  CHECK(section_side(below3, Surreal::omega_pow(Surreal(2))) == -1);

  // theta = the finite/infinite exponent gap: w^Theta sits above every
  // w^q with finite rational q and below w^w
  DedekindSection winfty = omega_power_gap(DedekindSection::infty());
  for (long q : {0L, 1L, 7L, 1000L})
    CHECK(section_side(winfty, Surreal::omega_pow(Surreal(Rational(q)))) == -1);
  CHECK(section_side(winfty, Surreal::omega_pow(W())) == 1);

  // w^(0+) with empty prefix normalizes to the named INFTY
  DedekindSection inf = omega_power_gap(DedekindSection::cut(Surreal(0), false));
  CHECK(inf.kind() == DedekindSection::Kind::Infty);
  CHECK(section_side(inf, Surreal(1000000)) == -1);
  CHECK(section_side(inf, -W()) == -1);
  CHECK(section_side(inf, W()) == 1);
  CHECK(section_side(inf, Surreal::omega_pow(Surreal(Rational(1, 2)))) == 1);

  // the real-part-two gap splits exactly at real part 2
  DedekindSection rp = real_part_two_gap();
  Surreal inv_w = Surreal::omega_pow(Surreal(-1));
  CHECK(section_side(rp, Surreal(Rational(3, 2))) == -1);
  CHECK(section_side(rp, Surreal(2) - Surreal(Rational(1, 100))) == -1);
  CHECK(section_side(rp, Surreal(2) - inv_w) == 1);
  CHECK(section_side(rp, Surreal(2)) == 1);
  CHECK(section_side(rp, Surreal(2) + inv_w) == 1);
  CHECK(section_side(rp, Surreal(1) - W()) == -1);

  // witness exhaustion surfaces as an error, not a guess
  DedekindSection g = DedekindSection::type1(geometric_gap_stream());
  Surreal agree = g.stream().truncate(100);
  CHECK_THROWS_AS(section_side(g, agree, 16), CalcError);

  // ON and OFF sides are trivial
  CHECK(section_side(DedekindSection::on(), Surreal::exp_monomial(W())) == -1);
  CHECK(section_side(DedekindSection::off(), -Surreal::exp_monomial(W())) == 1);
}

TEST_CASE("gap rendering") {
  CHECK(DedekindSection::on().str() == "ON");
  CHECK(DedekindSection::off().str() == "OFF");
  CHECK(DedekindSection::infty().str() == "INFTY");
  DedekindSection g = DedekindSection::type1(geometric_gap_stream());
  CHECK(g.str() ==
        "gap{ 1 + w^-1 + w^-2 + w^-3 + w^-4 + w^-5 + w^-6 + w^-7 + ... ; "
        "sum_{0<=i<On} (1)*w^(-i) }");
  CHECK(real_part_two_gap().str() == "gap{ 2 - w^Theta{cut{0-}} }");
}
