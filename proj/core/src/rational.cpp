#include "scal/rational.hpp"

namespace scal {

Rational Rational::from_string(const std::string& s) {
  try {
    mpq_class q(s, 10);
    q.canonicalize();
    if (q.get_den() == 0) raise(Errc::ParseError, "zero denominator in '" + s + "'");
    return Rational(q);
  } catch (const std::invalid_argument&) {
    raise(Errc::ParseError, "bad rational literal '" + s + "'");
  }
}

Rational Rational::pow2(long k) {
  mpz_class p;
  mpz_ui_pow_ui(p.get_mpz_t(), 2, static_cast<unsigned long>(k >= 0 ? k : -k));
  return k >= 0 ? Rational(p) : Rational(mpz_class(1), p);
}

bool Rational::is_dyadic() const {
  // denominator a power of two <=> odd part is 1
  mpz_class d = v_.get_den();
  mp_bitcnt_t tz = mpz_scan1(d.get_mpz_t(), 0);
  mpz_class odd = d >> tz;
  return odd == 1;
}

Rational Rational::pow(long e) const {
  if (e == 0) return Rational(1);
  if (is_zero() && e < 0) raise(Errc::DomainError, "zero to negative power");
  unsigned long ue = static_cast<unsigned long>(e >= 0 ? e : -e);
  mpz_class n, d;
  mpz_pow_ui(n.get_mpz_t(), v_.get_num().get_mpz_t(), ue);
  mpz_pow_ui(d.get_mpz_t(), v_.get_den().get_mpz_t(), ue);
  return e >= 0 ? Rational(n, d) : Rational(d, n);
}

mpz_class Rational::floor() const {
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), v_.get_num().get_mpz_t(), v_.get_den().get_mpz_t());
  return q;
}

mpz_class Rational::ceil() const {
  mpz_class q;
  mpz_cdiv_q(q.get_mpz_t(), v_.get_num().get_mpz_t(), v_.get_den().get_mpz_t());
  return q;
}

std::string Rational::str() const {
  if (is_integer()) return v_.get_num().get_str();
  return v_.get_num().get_str() + "/" + v_.get_den().get_str();
}

Rational min(const Rational& a, const Rational& b) { return a <= b ? a : b; }
Rational max(const Rational& a, const Rational& b) { return a >= b ? a : b; }

}  // namespace scal
