#pragma once

#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "scal/rational.hpp"

namespace scal {

// Closed rational interval with exact endpoints.
struct Interval {
  Rational lo, hi;
  Rational width() const { return hi - lo; }
  bool contains(const Rational& q) const { return lo <= q && q <= hi; }
};

// Budget for interval refinement: a cap on series/evaluation steps and the
// narrowest width that will be attempted before giving up.
struct RefineBudget {
  long long nodes = 1000000;
  Rational min_width = Rational::pow2(-128);
};

enum class Ordering { Less, Equal, Greater, Inconclusive };

class ExactReal;

namespace detail {

enum class AtomKind { Pi, Log, Atan, Inv };

struct RAtom;
using AtomPtr = std::shared_ptr<const RAtom>;

// One multiplicative factor bundle: e^{e_exp} * exp(exp_arg) * prod atoms^k.
// exp_arg, when present, is never rational (rational parts merge into e_exp).
struct Monomial {
  Rational e_exp;
  std::shared_ptr<const ExactReal> exp_arg;
  std::vector<std::pair<AtomPtr, int>> atoms;

  bool is_unit() const { return e_exp.is_zero() && !exp_arg && atoms.empty(); }
};

int mono_compare(const Monomial& a, const Monomial& b);

}  // namespace detail

// Symbolic real constant: a canonical rational linear combination of
// monomials over {pi, e, exp(.), log(.), arctan(.), 1/(.)}. Construction
// applies a fixed normalization rule set (documented in the README);
// equality of canonical forms is syntactic, everything else is decided by
// interval refinement with an honest Inconclusive outcome.
class ExactReal {
 public:
  ExactReal() = default;
  ExactReal(const Rational& q);  // NOLINT: implicit by design
  ExactReal(long n) : ExactReal(Rational(n)) {}
  ExactReal(int n) : ExactReal(Rational(n)) {}

  static ExactReal pi();
  static ExactReal e();
  static ExactReal exp(const ExactReal& x);
  static ExactReal log(const ExactReal& x);
  static ExactReal arctan(const ExactReal& x);

  bool is_zero() const { return terms_.empty(); }
  bool is_rational() const;
  std::optional<Rational> as_rational() const;

  ExactReal operator-() const;
  ExactReal operator+(const ExactReal& o) const;
  ExactReal operator-(const ExactReal& o) const;
  ExactReal operator*(const ExactReal& o) const;
  ExactReal operator/(const ExactReal& o) const;
  ExactReal inverse() const;
  ExactReal pow(long k) const;

  // Syntactic equality of canonical forms.
  bool operator==(const ExactReal& o) const { return struct_compare(*this, o) == 0; }
  bool operator!=(const ExactReal& o) const { return struct_compare(*this, o) != 0; }
  static int struct_compare(const ExactReal& a, const ExactReal& b);

  // Encloses the value in an interval of width <= target.
  Interval refine(const Rational& target_width, RefineBudget& budget) const;
  Interval refine(const Rational& target_width) const;

  static Ordering compare(const ExactReal& a, const ExactReal& b, RefineBudget& budget);
  static Ordering compare(const ExactReal& a, const ExactReal& b);
  // Sign of the value: compare against zero.
  Ordering sign(RefineBudget& budget) const;
  Ordering sign() const;

  std::string str() const;
  // Wrapped in parentheses when the rendering is a sum or has a leading minus.
  std::string str_atom() const;

  const std::vector<std::pair<detail::Monomial, Rational>>& terms() const { return terms_; }

 private:
  friend ExactReal term_value(const detail::Monomial& m, const Rational& coeff);
  void add_term(const detail::Monomial& m, const Rational& coeff);
  static ExactReal from_terms(std::vector<std::pair<detail::Monomial, Rational>> ts);

  // Sorted by mono_compare, descending; no zero coefficients.
  std::vector<std::pair<detail::Monomial, Rational>> terms_;
};

}  // namespace scal
