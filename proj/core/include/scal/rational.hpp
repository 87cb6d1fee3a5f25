#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

#include "scal/errors.hpp"

namespace scal {

// Arbitrary-precision rational, kept canonical (gcd 1, positive denominator)
// by GMP. Dyadics are the rationals whose denominator is a power of two.
class Rational {
 public:
  Rational() : v_(0) {}
  Rational(long n) : v_(n) {}         // NOLINT: implicit by design
  Rational(int n) : v_(n) {}          // NOLINT
  Rational(const mpz_class& n) : v_(n) {}
  Rational(const mpq_class& q) : v_(q) { v_.canonicalize(); }
  Rational(const mpz_class& num, const mpz_class& den) : v_(num, den) {
    if (den == 0) raise(Errc::DomainError, "rational with zero denominator");
    v_.canonicalize();
  }
  Rational(long num, long den) : Rational(mpz_class(num), mpz_class(den)) {}

  static Rational from_string(const std::string& s);
  // 2^k for k of either sign.
  static Rational pow2(long k);

  const mpz_class& num() const { return v_.get_num(); }
  const mpz_class& den() const { return v_.get_den(); }

  bool is_zero() const { return v_ == 0; }
  bool is_integer() const { return v_.get_den() == 1; }
  bool is_dyadic() const;
  int sign() const { return sgn(v_); }

  Rational operator-() const { return Rational(mpq_class(-v_)); }
  Rational operator+(const Rational& o) const { return Rational(mpq_class(v_ + o.v_)); }
  Rational operator-(const Rational& o) const { return Rational(mpq_class(v_ - o.v_)); }
  Rational operator*(const Rational& o) const { return Rational(mpq_class(v_ * o.v_)); }
  Rational operator/(const Rational& o) const {
    if (o.is_zero()) raise(Errc::DomainError, "division by zero");
    return Rational(mpq_class(v_ / o.v_));
  }
  Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
  Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
  Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
  Rational& operator/=(const Rational& o) { *this = *this / o; return *this; }

  bool operator==(const Rational& o) const { return v_ == o.v_; }
  bool operator!=(const Rational& o) const { return v_ != o.v_; }
  bool operator<(const Rational& o) const { return v_ < o.v_; }
  bool operator<=(const Rational& o) const { return v_ <= o.v_; }
  bool operator>(const Rational& o) const { return v_ > o.v_; }
  bool operator>=(const Rational& o) const { return v_ >= o.v_; }

  Rational abs() const { return Rational(mpq_class(::abs(v_))); }
  Rational inverse() const {
    if (is_zero()) raise(Errc::DomainError, "inverse of zero");
    return Rational(mpq_class(1 / v_));
  }
  Rational pow(long e) const;
  mpz_class floor() const;
  mpz_class ceil() const;

  // "p/q", or just "p" for integers.
  std::string str() const;

  friend int compare(const Rational& a, const Rational& b) { return cmp(a.v_, b.v_); }

 private:
  mpq_class v_;
};

int compare(const Rational& a, const Rational& b);

inline Rational abs(const Rational& q) { return q.abs(); }
Rational min(const Rational& a, const Rational& b);
Rational max(const Rational& a, const Rational& b);

}  // namespace scal
