#pragma once

// Formal series arithmetic over an exact coefficient field, shared by the
// surreal-valued and symbolic instantiations. Not installed.

#include <algorithm>
#include <vector>

#include "scal/errors.hpp"
#include "scal/expr.hpp"

namespace scal {
namespace engine {

inline int combine_flag(int a, int b) {
  if (a == 0) return b;
  if (b == 0) return a;
  return a == b ? a : 9;
}

inline int mul_flag(int flag, int factor_sign) {
  if (flag == 0) return 0;
  if (flag == 9 || factor_sign == 9 || factor_sign == 0) return 9;
  return flag * factor_sign > 0 ? 1 : -1;
}

template <class F>
struct Series {
  using V = typename F::Value;
  struct Term {
    Rational power;
    V coeff;
    bool osc = false;
  };
  std::vector<Term> terms;  // ascending by (power, osc)
  int small_sign = 0;
  int large_sign = 0;

  bool flag_only() const { return terms.empty(); }
};

template <class F>
class Engine {
 public:
  using S = Series<F>;
  using V = typename F::Value;
  using Term = typename Series<F>::Term;

  explicit Engine(int order) : order_(order) {}
  int order() const { return order_; }

  S zero() const { return S{}; }

  S constant(const V& c) const {
    S s;
    if (!F::is_zero(c)) s.terms.push_back({Rational(0), c, false});
    return s;
  }

  S tpow(const Rational& p, const V& c, bool osc = false) const {
    S s;
    if (!F::is_zero(c) && p < Rational(order_)) s.terms.push_back({p, c, osc});
    return s;
  }

  S add(const S& a, const S& b) const {
    S r;
    r.small_sign = combine_flag(a.small_sign, b.small_sign);
    r.large_sign = combine_flag(a.large_sign, b.large_sign);
    size_t i = 0, j = 0;
    auto before = [](const Term& x, const Term& y) {
      if (x.power != y.power) return x.power < y.power;
      return x.osc < y.osc;
    };
    while (i < a.terms.size() || j < b.terms.size()) {
      if (i == a.terms.size()) {
        r.terms.push_back(b.terms[j++]);
      } else if (j == b.terms.size()) {
        r.terms.push_back(a.terms[i++]);
      } else if (before(a.terms[i], b.terms[j])) {
        r.terms.push_back(a.terms[i++]);
      } else if (before(b.terms[j], a.terms[i])) {
        r.terms.push_back(b.terms[j++]);
      } else {
        V c = F::add(a.terms[i].coeff, b.terms[j].coeff);
        if (!F::is_zero(c)) r.terms.push_back({a.terms[i].power, c, a.terms[i].osc});
        ++i, ++j;
      }
    }
    return r;
  }

  S neg(const S& a) const {
    S r = a;
    for (auto& t : r.terms) t.coeff = F::neg(t.coeff);
    r.small_sign = mul_flag(a.small_sign, -1);
    r.large_sign = mul_flag(a.large_sign, -1);
    return r;
  }

  S scale(const S& a, const V& c, bool osc = false) const {
    if (F::is_zero(c)) return zero();
    S r;
    int cs = sign_or_unknown(c);
    r.small_sign = mul_flag(a.small_sign, cs);
    r.large_sign = mul_flag(a.large_sign, cs);
    for (const auto& t : a.terms) {
      V m = F::mul(t.coeff, c);
      if (!F::is_zero(m)) r.terms.push_back({t.power, m, t.osc || osc});
    }
    return r;
  }

  S mul(const S& a, const S& b) const {
    S r;
    // flags: anything times a flagged part stays beyond all powers
    int sa = leading_sign(a), sb = leading_sign(b);
    r.large_sign = combine_flag(mul_flag(a.large_sign, sb), mul_flag(b.large_sign, sa));
    if (a.large_sign != 0 && b.large_sign != 0)
      r.large_sign = combine_flag(r.large_sign, mul_flag(a.large_sign, b.large_sign));
    r.small_sign = combine_flag(mul_flag(a.small_sign, sb), mul_flag(b.small_sign, sa));
    if (a.small_sign != 0 && b.small_sign != 0)
      r.small_sign = combine_flag(r.small_sign, mul_flag(a.small_sign, b.small_sign));
    if (a.large_sign != 0 && b.small_sign != 0)
      raise(Errc::NotInClass, "product of exponentially large and small parts");
    if (b.large_sign != 0 && a.small_sign != 0)
      raise(Errc::NotInClass, "product of exponentially large and small parts");
    for (const auto& x : a.terms)
      for (const auto& y : b.terms) {
        Rational p = x.power + y.power;
        if (p >= Rational(order_)) continue;
        S piece;
        piece.terms.push_back({p, F::mul(x.coeff, y.coeff), x.osc || y.osc});
        r = add(r, piece);
      }
    return r;
  }

  S inverse(const S& a) const {
    if (a.large_sign != 0)
      raise(Errc::NotInClass, "inverse of an exponentially large part");
    if (a.terms.empty()) {
      if (a.small_sign != 0)
        raise(Errc::NotInClass, "inverse of an exponentially small part");
      raise(Errc::DomainError, "division by a zero series");
    }
    const Term& lead = a.terms[0];
    if (lead.osc) raise(Errc::NotInClass, "inverse of an oscillating lead");
    // a = c0 t^v (1 + u)  =>  1/a = (1/c0) t^-v (1 - u + u^2 - ...)
    V c0 = lead.coeff;
    Rational v = lead.power;
    S u;
    V inv_c0 = F::inv(c0);
    for (size_t i = 1; i < a.terms.size(); ++i) {
      const Term& t = a.terms[i];
      u.terms.push_back({t.power - v, F::mul(t.coeff, inv_c0), t.osc});
    }
    u.small_sign = a.small_sign == 0 ? 0 : 9;
    S acc = constant(F::one());
    S upow = constant(F::one());
    long reps = static_cast<long>(order_) + std::max(0L, -to_long_floor(v)) + 2;
    for (long k = 1; k <= reps; ++k) {
      upow = mul(upow, u);
      if (upow.terms.empty() && upow.small_sign == 0) break;
      acc = add(acc, k % 2 == 0 ? upow : neg(upow));
    }
    return shift(scale(acc, inv_c0), -v);
  }

  S div(const S& a, const S& b) const { return mul(a, inverse(b)); }

  S pow_int(const S& a, long k) const {
    if (k == 0) return constant(F::one());
    S base = k > 0 ? a : inverse(a);
    long n = k > 0 ? k : -k;
    S acc = constant(F::one());
    for (long i = 0; i < n; ++i) acc = mul(acc, base);
    return acc;
  }

  // exp of the series; negative powers collapse onto the scale flags
  S exp(const S& a) const {
    if (a.large_sign != 0) raise(Errc::EssentialSingularity, "exp of a flagged part");
    S neg_part, rest;
    rest.small_sign = a.small_sign;
    for (const auto& t : a.terms)
      (t.power < Rational(0) ? neg_part : rest).terms.push_back(t);
    if (!neg_part.terms.empty()) {
      const Term& dom = neg_part.terms[0];
      if (dom.osc)
        raise(Errc::EssentialSingularity, "exp of an oscillating unbounded part");
      int s = F::sign(dom.coeff);
      S r;
      if (s > 0)
        r.large_sign = 1;
      else if (s < 0)
        r.small_sign = 1;
      else
        raise(Errc::Internal, "zero leading coefficient survived");
      return r;
    }
    // split the constant term out and compose the exponential series
    V c = F::zero();
    S upper;
    for (const auto& t : rest.terms) {
      if (t.power == Rational(0)) {
        if (t.osc) raise(Errc::NotInClass, "exp of an oscillating constant");
        c = F::add(c, t.coeff);
      } else {
        if (t.osc) raise(Errc::NotInClass, "exp of oscillating terms");
        upper.terms.push_back(t);
      }
    }
    S acc = constant(F::one());
    S upow = constant(F::one());
    Rational fact(1);
    for (long k = 1; k <= order_ + 2; ++k) {
      upow = mul(upow, upper);
      if (upow.terms.empty()) break;
      fact = fact * Rational(k);
      acc = add(acc, scale(upow, F::from_rational(fact.inverse())));
    }
    acc = scale(acc, F::exp_of(c));
    acc.small_sign = rest.small_sign == 0 ? 0 : 9;
    return acc;
  }

  S log(const S& a) const {
    if (a.large_sign != 0 || a.terms.empty())
      raise(Errc::EssentialSingularity, "log needs a bounded nonvanishing argument");
    const Term& lead = a.terms[0];
    if (lead.power != Rational(0))
      raise(Errc::EssentialSingularity, "log of a vanishing or unbounded argument");
    if (lead.osc) raise(Errc::NotInClass, "log of an oscillating lead");
    V c = lead.coeff;
    S u;  // a/c - 1
    V inv_c = F::inv(c);
    for (size_t i = 1; i < a.terms.size(); ++i) {
      const Term& t = a.terms[i];
      if (t.osc) raise(Errc::NotInClass, "log of oscillating terms");
      u.terms.push_back({t.power, F::mul(t.coeff, inv_c), false});
    }
    S acc = constant(F::log_of(c));
    S upow = constant(F::one());
    for (long k = 1; k <= order_ + 2; ++k) {
      upow = mul(upow, u);
      if (upow.terms.empty()) break;
      Rational r = Rational(k).inverse();
      if (k % 2 == 0) r = -r;
      acc = add(acc, scale(upow, F::from_rational(r)));
    }
    acc.small_sign = a.small_sign == 0 ? 0 : 9;
    return acc;
  }

  S atan(const S& a) const {
    if (a.large_sign != 0)
      raise(Errc::EssentialSingularity, "arctan of an unbounded part");
    for (const auto& t : a.terms) {
      if (t.power < Rational(0))
        raise(Errc::EssentialSingularity, "arctan of an unbounded argument");
      if (t.osc) raise(Errc::NotInClass, "arctan of oscillating terms");
    }
    V c = F::zero();
    S u;
    for (const auto& t : a.terms) {
      if (t.power == Rational(0))
        c = F::add(c, t.coeff);
      else
        u.terms.push_back(t);
    }
    // arctan(c+u) = arctan(c) + sum b_{k-1}/k u^k with
    // 1/(1+(c+s)^2) = sum b_k s^k
    std::vector<V> b = recip_quadratic(c);
    S acc = constant(F::atan_of(c));
    S upow = constant(F::one());
    for (long k = 1; k <= order_ + 2; ++k) {
      upow = mul(upow, u);
      if (upow.terms.empty()) break;
      V ak = F::mul(b[static_cast<size_t>(k - 1)],
                    F::from_rational(Rational(k).inverse()));
      acc = add(acc, scale(upow, ak));
    }
    acc.small_sign = a.small_sign == 0 ? 0 : 9;
    return acc;
  }

  S shift(const S& a, const Rational& dp) const {
    S r;
    r.small_sign = a.small_sign;
    r.large_sign = a.large_sign;
    for (const auto& t : a.terms) {
      Rational p = t.power + dp;
      if (p < Rational(order_)) r.terms.push_back({p, t.coeff, t.osc});
    }
    return r;
  }

 private:
  int order_;

  static long to_long_floor(const Rational& q) {
    return static_cast<long>(q.floor().get_si());
  }

  static int sign_or_unknown(const V& v) {
    try {
      return F::sign(v);
    } catch (const CalcError&) {
      return 9;
    }
  }

  static int leading_sign(const S& a) {
    if (a.terms.empty()) return a.small_sign != 0 ? a.small_sign : a.large_sign;
    return sign_or_unknown(a.terms[0].coeff);
  }

  // coefficients of 1/(1+(c+s)^2) as a power series in s
  std::vector<V> recip_quadratic(const V& c) const {
    long n = order_ + 3;
    std::vector<V> den(3, F::zero());
    den[0] = F::add(F::one(), F::mul(c, c));
    den[1] = F::mul(F::from_rational(Rational(2)), c);
    den[2] = F::one();
    std::vector<V> b(static_cast<size_t>(n), F::zero());
    V inv0 = F::inv(den[0]);
    for (long k = 0; k < n; ++k) {
      V acc = k == 0 ? F::one() : F::zero();
      for (long j = 1; j <= 2 && j <= k; ++j)
        acc = F::add(acc, F::neg(F::mul(den[static_cast<size_t>(j)],
                                        b[static_cast<size_t>(k - j)])));
      b[static_cast<size_t>(k)] = F::mul(acc, inv0);
    }
    return b;
  }
};

}  // namespace engine
}  // namespace scal
