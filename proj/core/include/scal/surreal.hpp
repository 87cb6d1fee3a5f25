#pragma once

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "scal/exact_real.hpp"
#include "scal/ordinal.hpp"

namespace scal {

class Surreal;
using SurrealPtr = std::shared_ptr<const Surreal>;

// Exponent slot of a normal-form term. A term denotes
//   coeff * exp(atom_arg) * w^power,
// where the optional atom factor is the restricted exponential monomial for
// a purely infinite argument. Atom-bearing terms dominate every plain
// w-power term (of the same sign class); two atoms compare by argument.
struct ExpKey {
  SurrealPtr atom_arg;  // nullable
  SurrealPtr power;     // never null

  bool has_atom() const { return atom_arg != nullptr; }
};

// Surreal number with a finite Conway normal form: an ordered sum of terms
// coeff * w^exponent with exact-real coefficients and strictly decreasing
// surreal exponents. The empty sum is 0. omega-length values live in
// SurrealStream, not here.
class Surreal {
 public:
  struct Term {
    ExactReal coeff;
    ExpKey key;
  };

  Surreal() = default;
  Surreal(const Rational& q);    // NOLINT: implicit by design
  Surreal(const ExactReal& r);   // NOLINT
  Surreal(long n) : Surreal(Rational(n)) {}
  Surreal(int n) : Surreal(Rational(n)) {}

  static Surreal omega();
  static Surreal omega_pow(const Surreal& expo, const ExactReal& coeff = ExactReal(Rational(1)));
  static Surreal from_ordinal(const Ordinal& o);
  // exp(arg) * coeff for purely infinite arg; the quarantined atom factory.
  static Surreal exp_monomial(const Surreal& arg, const ExactReal& coeff = ExactReal(Rational(1)));
  // Canonicalize a raw term list: merge equal exponents, drop zeros, sort.
  static Surreal normalize(std::vector<Term> raw_terms);

  bool is_zero() const { return terms_.empty(); }
  const std::vector<Term>& terms() const { return terms_; }
  size_t term_count() const { return terms_.size(); }

  // Exponent-zero-only views.
  bool is_real_value() const;
  std::optional<ExactReal> as_exact_real() const;
  std::optional<Rational> as_rational() const;
  std::optional<Ordinal> as_ordinal() const;
  bool has_exp_atom() const;

  // Sign classes of the value and of its terms.
  int sign() const;  // -1, 0, 1; may throw InconclusiveComparison
  bool is_purely_infinite() const;   // all exponents > 0 (no atoms)
  bool is_infinitesimal() const;     // all exponents < 0, or atoms with negative args
  // Decomposition x = purely_infinite + real + infinitesimal; rejects atoms.
  void split(Surreal& infinite, ExactReal& real, Surreal& small) const;

  static int compare(const Surreal& a, const Surreal& b);
  bool operator==(const Surreal& o) const { return identical(o); }
  bool operator!=(const Surreal& o) const { return !identical(o); }
  bool operator<(const Surreal& o) const { return compare(*this, o) < 0; }
  bool operator<=(const Surreal& o) const { return compare(*this, o) <= 0; }
  bool operator>(const Surreal& o) const { return compare(*this, o) > 0; }
  bool operator>=(const Surreal& o) const { return compare(*this, o) >= 0; }

  // Structural identity of canonical forms (no refinement involved).
  bool identical(const Surreal& o) const { return struct_compare(*this, o) == 0; }
  static int struct_compare(const Surreal& a, const Surreal& b);

  Surreal operator-() const;
  Surreal operator+(const Surreal& o) const;
  Surreal operator-(const Surreal& o) const;
  Surreal operator*(const Surreal& o) const;
  // Division by a single-term surreal; UnsupportedClass otherwise.
  Surreal operator/(const Surreal& o) const;
  Surreal inverse() const;
  Surreal pow(long k) const;

  std::string str() const;

 private:
  void add_term(const Term& t);

  std::vector<Term> terms_;  // strictly decreasing keys
};

int key_compare(const ExpKey& a, const ExpKey& b);
SurrealPtr share(const Surreal& s);
const SurrealPtr& surreal_zero_ptr();

// exp of a value with no infinitesimal part: exp(p + r) = exp-monomial(p) * e^r.
Surreal surreal_exp_value(const Surreal& x);

std::string exponent_str(const Surreal& e);

}  // namespace scal
