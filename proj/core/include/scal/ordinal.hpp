#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "scal/errors.hpp"

namespace scal {

// Ordinal in Cantor normal form base omega: sum of w^exponent * count with
// strictly decreasing exponents, themselves ordinals in CNF. The empty sum
// is 0. Exponent towers are hereditarily finite, which bounds the
// representable ordinals below epsilon_0.
class Ordinal {
 public:
  struct Term {
    std::shared_ptr<const Ordinal> expo;  // never null
    std::uint64_t count = 0;              // >= 1
  };

  Ordinal() = default;

  static Ordinal from_uint(std::uint64_t n);
  static Ordinal omega();
  // w^e * count
  static Ordinal omega_pow(const Ordinal& e, std::uint64_t count = 1);

  bool is_zero() const { return terms_.empty(); }
  bool is_finite() const;
  // Value if < omega.
  std::optional<std::uint64_t> as_uint() const;
  bool is_successor() const;  // nonzero with a finite last part
  const std::vector<Term>& terms() const { return terms_; }
  const Ordinal& leading_exponent() const;

  static int compare(const Ordinal& a, const Ordinal& b);

  bool operator==(const Ordinal& o) const { return compare(*this, o) == 0; }
  bool operator!=(const Ordinal& o) const { return compare(*this, o) != 0; }
  bool operator<(const Ordinal& o) const { return compare(*this, o) < 0; }
  bool operator<=(const Ordinal& o) const { return compare(*this, o) <= 0; }
  bool operator>(const Ordinal& o) const { return compare(*this, o) > 0; }
  bool operator>=(const Ordinal& o) const { return compare(*this, o) >= 0; }

  // Standard (non-commutative) ordinal sum and product.
  Ordinal operator+(const Ordinal& o) const;
  Ordinal operator*(const Ordinal& o) const;
  // Hessenberg (natural, commutative) sum: coefficients add per exponent.
  static Ordinal natural_add(const Ordinal& a, const Ordinal& b);

  // Predecessor of a successor ordinal.
  Ordinal predecessor() const;

  std::string str() const;

  // Raw constructor; terms must already be in strict CNF order.
  static Ordinal from_terms(std::vector<Term> terms);

 private:
  std::vector<Term> terms_;
};

}  // namespace scal
