#include "scal/exact_real.hpp"

#include <algorithm>
#include <mutex>
#include <unordered_map>

#include "scal/errors.hpp"

namespace scal {
namespace detail {

struct RAtom {
  AtomKind kind;
  ExactReal arg;  // unused for Pi

  // best interval computed so far
  mutable std::mutex cache_mutex;
  mutable bool cached = false;
  mutable Interval cache;

  RAtom(AtomKind k, ExactReal a) : kind(k), arg(std::move(a)) {}
};

int atom_compare(const RAtom& a, const RAtom& b) {
  if (a.kind != b.kind) return static_cast<int>(a.kind) < static_cast<int>(b.kind) ? -1 : 1;
  return ExactReal::struct_compare(a.arg, b.arg);
}

int mono_compare(const Monomial& a, const Monomial& b) {
  size_t n = std::min(a.atoms.size(), b.atoms.size());
  for (size_t i = 0; i < n; ++i) {
    int c = atom_compare(*a.atoms[i].first, *b.atoms[i].first);
    if (c != 0) return c;
    if (a.atoms[i].second != b.atoms[i].second)
      return a.atoms[i].second < b.atoms[i].second ? -1 : 1;
  }
  if (a.atoms.size() != b.atoms.size())
    return a.atoms.size() < b.atoms.size() ? -1 : 1;
  if (!!a.exp_arg != !!b.exp_arg) return a.exp_arg ? 1 : -1;
  if (a.exp_arg) {
    int c = ExactReal::struct_compare(*a.exp_arg, *b.exp_arg);
    if (c != 0) return c;
  }
  return compare(a.e_exp, b.e_exp);
}

}  // namespace detail

using detail::AtomKind;
using detail::AtomPtr;
using detail::Monomial;
using detail::RAtom;

// ---------------------------------------------------------------------------
// interval arithmetic on exact rational endpoints

namespace {

Interval iv_point(const Rational& q) { return {q, q}; }

Interval iv_add(const Interval& a, const Interval& b) { return {a.lo + b.lo, a.hi + b.hi}; }

Interval iv_neg(const Interval& a) { return {-a.hi, -a.lo}; }

Interval iv_scale(const Rational& c, const Interval& a) {
  if (c.sign() >= 0) return {c * a.lo, c * a.hi};
  return {c * a.hi, c * a.lo};
}

Interval iv_mul(const Interval& a, const Interval& b) {
  Rational c1 = a.lo * b.lo, c2 = a.lo * b.hi, c3 = a.hi * b.lo, c4 = a.hi * b.hi;
  return {min(min(c1, c2), min(c3, c4)), max(max(c1, c2), max(c3, c4))};
}

// requires 0 outside [a.lo, a.hi]
Interval iv_inverse(const Interval& a) {
  return {a.hi.inverse(), a.lo.inverse()};
}

Interval iv_int_pow(const Interval& a, int k) {
  if (k == 0) return iv_point(1);
  bool neg = k < 0;
  int n = neg ? -k : k;
  Interval r = iv_point(1);
  Interval base = a;
  // even powers of sign-straddling intervals pin the low end at zero
  for (int i = 0; i < n; ++i) r = iv_mul(r, base);
  if (n % 2 == 0 && a.lo.sign() < 0 && a.hi.sign() > 0) r.lo = Rational(0);
  if (neg) {
    if (r.lo.sign() <= 0 && r.hi.sign() >= 0)
      raise(Errc::PrecisionExhausted, "interval power straddles zero");
    r = iv_inverse(r);
  }
  return r;
}

void charge(RefineBudget& b, long long amount = 1) {
  b.nodes -= amount;
  if (b.nodes < 0) raise(Errc::PrecisionExhausted, "refinement node budget exhausted");
}

// ---------------------------------------------------------------------------
// series enclosures on rational arguments

// arctan(q) for |q| < 1 by the alternating Maclaurin series. Consecutive
// partial sums bracket the value and the brackets nest.
Interval atan_small_interval(const Rational& q, const Rational& width, RefineBudget& budget) {
  Rational prev(0);
  Rational sum = q;
  Rational power = q;
  Rational q2 = q * q;
  long i = 1;
  for (;;) {
    charge(budget);
    if ((sum - prev).abs() < width) return {min(prev, sum), max(prev, sum)};
    power = power * q2 * Rational(-1);
    prev = sum;
    sum += power / Rational(2 * i + 1);
    ++i;
  }
}

Interval pi_interval_raw(const Rational& width, RefineBudget& budget) {
  // pi = 4*(arctan(1/2) + arctan(1/3))
  Interval a = atan_small_interval(Rational(1, 2), width / 16, budget);
  Interval b = atan_small_interval(Rational(1, 3), width / 16, budget);
  return iv_scale(Rational(4), iv_add(a, b));
}

Interval pi_interval(const Rational& width, RefineBudget& budget) {
  static std::mutex m;
  static bool valid = false;
  static Interval cache;
  {
    std::lock_guard<std::mutex> lock(m);
    if (valid && cache.width() <= width) return cache;
  }
  Interval fresh = pi_interval_raw(width, budget);
  std::lock_guard<std::mutex> lock(m);
  if (!valid || fresh.width() < cache.width()) {
    cache = fresh;
    valid = true;
  }
  return cache;
}

// exp(f) for 0 <= f <= 1.
Interval exp_frac_interval(const Rational& f, const Rational& width, RefineBudget& budget) {
  Rational sum(1);
  Rational term(1);
  long k = 1;
  for (;;) {
    charge(budget);
    term = term * f / Rational(k);
    sum += term;
    // remainder after the k-th term is < 2 * next term for f <= 1; kept past
    // k = 4 so the upper endpoints decrease monotonically and brackets nest
    Rational rem = term * f / Rational(k + 1) * Rational(2);
    if (k >= 4 && rem < width) return {sum, sum + rem};
    ++k;
  }
}

Interval exp_rat_interval(const Rational& q, const Rational& width, RefineBudget& budget) {
  if (q.is_zero()) return iv_point(1);
  if (q.sign() < 0) {
    // exp(q) = 1 / exp(-q); exp(-q) >= 1 so inversion keeps the width
    Interval pos = exp_rat_interval(-q, width, budget);
    return iv_inverse(pos);
  }
  mpz_class n = q.floor();
  Rational f = q - Rational(n);
  long ni = static_cast<long>(n.get_si());
  // e^n needs extra precision before the integer power blows the width up
  Rational w = width;
  for (long i = 0; i < ni + 2; ++i) w = w / Rational(4);
  Interval e1 = exp_frac_interval(Rational(1), w, budget);
  Interval r = iv_int_pow(e1, static_cast<int>(ni));
  Interval ef = exp_frac_interval(f, w, budget);
  Interval total = iv_mul(r, ef);
  if (total.width() > width) {
    // widen the request and retry once more precisely
    Rational w2 = w * width / total.width() / Rational(4);
    e1 = exp_frac_interval(Rational(1), w2, budget);
    r = iv_int_pow(e1, static_cast<int>(ni));
    ef = exp_frac_interval(f, w2, budget);
    total = iv_mul(r, ef);
  }
  return total;
}

// log(m) for 1 <= m <= 2 via atanh: log m = 2*sum z^(2i+1)/(2i+1), z=(m-1)/(m+1)
Interval log_mant_interval(const Rational& m, const Rational& width, RefineBudget& budget) {
  Rational z = (m - Rational(1)) / (m + Rational(1));  // in [0, 1/3]
  Rational z2 = z * z;
  Rational sum(0);
  Rational power = z;
  long i = 0;
  for (;;) {
    charge(budget);
    sum += power / Rational(2 * i + 1);
    Rational next = power * z2;
    // remainder <= next/(2i+3) * 1/(1-z^2)
    Rational rem = next / Rational(2 * i + 3) / (Rational(1) - z2);
    if (Rational(2) * rem < width) return {Rational(2) * sum, Rational(2) * (sum + rem)};
    power = next;
    ++i;
  }
}

Interval log2_interval(const Rational& width, RefineBudget& budget) {
  static std::mutex m;
  static bool valid = false;
  static Interval cache;
  {
    std::lock_guard<std::mutex> lock(m);
    if (valid && cache.width() <= width) return cache;
  }
  Interval fresh = log_mant_interval(Rational(2), width, budget);
  std::lock_guard<std::mutex> lock(m);
  if (!valid || fresh.width() < cache.width()) {
    cache = fresh;
    valid = true;
  }
  return cache;
}

Interval log_rat_interval(const Rational& q, const Rational& width, RefineBudget& budget) {
  if (q.sign() <= 0) raise(Errc::DomainError, "log of a non-positive value");
  if (q == Rational(1)) return iv_point(0);
  if (q < Rational(1)) return iv_neg(log_rat_interval(q.inverse(), width, budget));
  // scale q into [1,2) by powers of two
  long k = 0;
  Rational m = q;
  while (m >= Rational(2)) {
    m = m / Rational(2);
    ++k;
    charge(budget);
  }
  Interval lm = log_mant_interval(m, width / 2, budget);
  if (k == 0) return lm;
  Interval l2 = log2_interval(width / (2 * k), budget);
  return iv_add(lm, iv_scale(Rational(k), l2));
}

Interval atan_rat_interval(const Rational& q, const Rational& width, RefineBudget& budget) {
  if (q.is_zero()) return iv_point(0);
  if (q.sign() < 0) return iv_neg(atan_rat_interval(-q, width, budget));
  if (q < Rational(1)) return atan_small_interval(q, width, budget);
  // arctan(q) = pi/2 - arctan(1/q), and 1/q <= 1; at q == 1 split at 1/2
  if (q == Rational(1)) {
    Interval p = pi_interval(width * 2, budget);
    return iv_scale(Rational(1, 4), p);
  }
  Interval p = pi_interval(width, budget);
  Interval h = iv_scale(Rational(1, 2), p);
  Interval t = atan_small_interval(q.inverse(), width / 2, budget);
  return iv_add(h, iv_neg(t));
}

}  // namespace

// ---------------------------------------------------------------------------
// atom / monomial / term refinement

namespace {

Interval refine_value(const ExactReal& v, const Rational& width, RefineBudget& budget);

Interval atom_interval(const RAtom& atom, const Rational& width, RefineBudget& budget) {
  {
    std::lock_guard<std::mutex> lock(atom.cache_mutex);
    if (atom.cached && atom.cache.width() <= width) return atom.cache;
  }
  Interval result;
  switch (atom.kind) {
    case AtomKind::Pi:
      result = pi_interval(width, budget);
      break;
    case AtomKind::Log: {
      if (auto q = atom.arg.as_rational()) {
        result = log_rat_interval(*q, width, budget);
      } else {
        // monotone: bound through the endpoints of the argument interval
        Rational w = width / 2;
        for (;;) {
          Interval a = refine_value(atom.arg, w, budget);
          if (a.lo.sign() <= 0) {
            if (a.hi.sign() <= 0) raise(Errc::DomainError, "log of a non-positive value");
            w = w / 4;
            charge(budget);
            continue;
          }
          Interval lo = log_rat_interval(a.lo, w, budget);
          Interval hi = log_rat_interval(a.hi, w, budget);
          result = {lo.lo, hi.hi};
          if (result.width() <= width) break;
          w = w / 4;
        }
      }
      break;
    }
    case AtomKind::Atan: {
      if (auto q = atom.arg.as_rational()) {
        result = atan_rat_interval(*q, width, budget);
      } else {
        Rational w = width / 2;
        for (;;) {
          Interval a = refine_value(atom.arg, w, budget);
          Interval lo = atan_rat_interval(a.lo, w, budget);
          Interval hi = atan_rat_interval(a.hi, w, budget);
          result = {lo.lo, hi.hi};
          if (result.width() <= width) break;
          w = w / 4;
        }
      }
      break;
    }
    case AtomKind::Inv: {
      Rational w = width / 2;
      for (;;) {
        Interval a = refine_value(atom.arg, w, budget);
        if (a.lo.sign() <= 0 && a.hi.sign() >= 0) {
          // cannot invert until the argument separates from zero
          if (w < budget.min_width)
            raise(Errc::PrecisionExhausted, "divisor not separable from zero");
          w = w / 4;
          charge(budget);
          continue;
        }
        result = iv_inverse(a);
        if (result.width() <= width) break;
        w = w / 4;
      }
      break;
    }
  }
  std::lock_guard<std::mutex> lock(atom.cache_mutex);
  if (!atom.cached) {
    atom.cache = result;
    atom.cached = true;
  } else {
    // both enclose the value, so the intersection does too and nests
    atom.cache.lo = max(atom.cache.lo, result.lo);
    atom.cache.hi = min(atom.cache.hi, result.hi);
  }
  return atom.cache;
}

Interval mono_interval(const Monomial& m, const Rational& width, RefineBudget& budget) {
  Rational w = width;
  for (;;) {
    Interval acc = iv_point(1);
    if (!m.e_exp.is_zero()) acc = exp_rat_interval(m.e_exp, w, budget);
    if (m.exp_arg) {
      Interval a = refine_value(*m.exp_arg, w, budget);
      Interval lo = exp_rat_interval(a.lo, w, budget);
      Interval hi = exp_rat_interval(a.hi, w, budget);
      acc = iv_mul(acc, {lo.lo, hi.hi});
    }
    for (const auto& [atom, power] : m.atoms) {
      Interval base = atom_interval(*atom, w, budget);
      acc = iv_mul(acc, iv_int_pow(base, power));
    }
    if (acc.width() <= width) return acc;
    w = w / 16;
    charge(budget);
  }
}

Interval refine_value(const ExactReal& v, const Rational& width, RefineBudget& budget) {
  if (v.terms().empty()) return iv_point(0);
  Rational w = width;
  for (;;) {
    Interval total = iv_point(0);
    Rational per = w / Rational(static_cast<long>(v.terms().size()));
    for (const auto& [mono, coeff] : v.terms()) {
      Rational cw = per / max(Rational(1), coeff.abs()) / 2;
      total = iv_add(total, iv_scale(coeff, mono_interval(mono, cw, budget)));
    }
    if (total.width() <= width) return total;
    w = w / 16;
    charge(budget);
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// canonical construction

ExactReal::ExactReal(const Rational& q) {
  if (!q.is_zero()) terms_.push_back({Monomial{}, q});
}

void ExactReal::add_term(const Monomial& m, const Rational& coeff) {
  if (coeff.is_zero()) return;
  auto it = std::lower_bound(
      terms_.begin(), terms_.end(), m,
      [](const auto& t, const Monomial& key) { return detail::mono_compare(t.first, key) > 0; });
  if (it != terms_.end() && detail::mono_compare(it->first, m) == 0) {
    it->second += coeff;
    if (it->second.is_zero()) terms_.erase(it);
  } else {
    terms_.insert(it, {m, coeff});
  }
}

ExactReal ExactReal::from_terms(std::vector<std::pair<Monomial, Rational>> ts) {
  ExactReal r;
  for (auto& [m, c] : ts) r.add_term(m, c);
  return r;
}

ExactReal term_value(const Monomial& m, const Rational& coeff) {
  ExactReal r;
  r.add_term(m, coeff);
  return r;
}

ExactReal ExactReal::pi() {
  Monomial m;
  m.atoms.push_back({std::make_shared<RAtom>(AtomKind::Pi, ExactReal()), 1});
  return term_value(m, Rational(1));
}

ExactReal ExactReal::e() {
  Monomial m;
  m.e_exp = Rational(1);
  return term_value(m, Rational(1));
}

bool ExactReal::is_rational() const {
  return terms_.empty() || (terms_.size() == 1 && terms_[0].first.is_unit());
}

std::optional<Rational> ExactReal::as_rational() const {
  if (terms_.empty()) return Rational(0);
  if (terms_.size() == 1 && terms_[0].first.is_unit()) return terms_[0].second;
  return std::nullopt;
}

int ExactReal::struct_compare(const ExactReal& a, const ExactReal& b) {
  size_t n = std::min(a.terms_.size(), b.terms_.size());
  for (size_t i = 0; i < n; ++i) {
    int c = detail::mono_compare(a.terms_[i].first, b.terms_[i].first);
    if (c != 0) return c;
    c = scal::compare(a.terms_[i].second, b.terms_[i].second);
    if (c != 0) return c;
  }
  if (a.terms_.size() != b.terms_.size())
    return a.terms_.size() < b.terms_.size() ? -1 : 1;
  return 0;
}

ExactReal ExactReal::operator-() const {
  ExactReal r = *this;
  for (auto& [m, c] : r.terms_) c = -c;
  return r;
}

ExactReal ExactReal::operator+(const ExactReal& o) const {
  ExactReal r = *this;
  for (const auto& [m, c] : o.terms_) r.add_term(m, c);
  return r;
}

ExactReal ExactReal::operator-(const ExactReal& o) const { return *this + (-o); }

namespace {

// product of two monomials; may expand when negative Inv powers resolve
ExactReal mono_product(const Monomial& a, const Rational& ca, const Monomial& b,
                       const Rational& cb) {
  Monomial m;
  m.e_exp = a.e_exp + b.e_exp;
  // exp arguments add; a rational sum migrates into the e exponent
  if (a.exp_arg && b.exp_arg) {
    ExactReal sum = *a.exp_arg + *b.exp_arg;
    if (auto q = sum.as_rational())
      m.e_exp += *q;
    else
      m.exp_arg = std::make_shared<const ExactReal>(std::move(sum));
  } else if (a.exp_arg) {
    m.exp_arg = a.exp_arg;
  } else if (b.exp_arg) {
    m.exp_arg = b.exp_arg;
  }
  std::vector<std::pair<AtomPtr, int>> merged;
  size_t i = 0, j = 0;
  while (i < a.atoms.size() || j < b.atoms.size()) {
    if (i == a.atoms.size()) {
      merged.push_back(b.atoms[j++]);
    } else if (j == b.atoms.size()) {
      merged.push_back(a.atoms[i++]);
    } else {
      int c = detail::atom_compare(*a.atoms[i].first, *b.atoms[j].first);
      if (c < 0) {
        merged.push_back(a.atoms[i++]);
      } else if (c > 0) {
        merged.push_back(b.atoms[j++]);
      } else {
        int p = a.atoms[i].second + b.atoms[j].second;
        if (p != 0) merged.push_back({a.atoms[i].first, p});
        ++i, ++j;
      }
    }
  }
  // resolve negative reciprocal powers: Inv(u)^-k multiplies the value by u^k
  ExactReal multiplier(Rational(1));
  bool have_multiplier = false;
  std::vector<std::pair<AtomPtr, int>> atoms;
  for (auto& [atom, power] : merged) {
    if (atom->kind == AtomKind::Inv && power < 0) {
      ExactReal u = atom->arg;
      for (int k = 0; k < -power; ++k) {
        multiplier = multiplier * u;
        have_multiplier = true;
      }
    } else {
      atoms.push_back({atom, power});
    }
  }
  m.atoms = std::move(atoms);
  ExactReal base = term_value(m, ca * cb);
  return have_multiplier ? base * multiplier : base;
}

}  // namespace

ExactReal ExactReal::operator*(const ExactReal& o) const {
  ExactReal acc;
  for (const auto& [ma, ca] : terms_)
    for (const auto& [mb, cb] : o.terms_) acc = acc + mono_product(ma, ca, mb, cb);
  return acc;
}

ExactReal ExactReal::inverse() const {
  if (terms_.empty()) raise(Errc::DomainError, "division by zero");
  if (terms_.size() == 1) {
    const auto& [m, c] = terms_[0];
    Monomial inv;
    inv.e_exp = -m.e_exp;
    if (m.exp_arg) {
      ExactReal negated = -*m.exp_arg;
      inv.exp_arg = std::make_shared<const ExactReal>(std::move(negated));
    }
    ExactReal multiplier(Rational(1));
    bool have_multiplier = false;
    for (const auto& [atom, power] : m.atoms) {
      if (atom->kind == AtomKind::Inv) {
        // 1 / Inv(u)^k = u^k
        for (int k = 0; k < power; ++k) {
          multiplier = multiplier * atom->arg;
          have_multiplier = true;
        }
      } else {
        inv.atoms.push_back({atom, -power});
      }
    }
    ExactReal base = term_value(inv, c.inverse());
    return have_multiplier ? base * multiplier : base;
  }
  // multi-term divisor becomes an opaque reciprocal atom, leading sign pulled out
  if (terms_[0].second.sign() < 0) return -((-*this).inverse());
  Monomial m;
  m.atoms.push_back({std::make_shared<RAtom>(AtomKind::Inv, *this), 1});
  return term_value(m, Rational(1));
}

ExactReal ExactReal::operator/(const ExactReal& o) const { return *this * o.inverse(); }

ExactReal ExactReal::pow(long k) const {
  if (k == 0) return ExactReal(Rational(1));
  ExactReal base = k > 0 ? *this : inverse();
  long n = k > 0 ? k : -k;
  ExactReal acc(Rational(1));
  for (long i = 0; i < n; ++i) acc = acc * base;
  return acc;
}

ExactReal ExactReal::exp(const ExactReal& x) {
  Rational rat_part(0);
  ExactReal rest;
  for (const auto& [m, c] : x.terms_) {
    if (m.is_unit())
      rat_part = c;
    else
      rest.add_term(m, c);
  }
  if (rest.is_zero()) {
    Monomial m;
    m.e_exp = rat_part;
    return term_value(m, Rational(1));
  }
  // exp(log u) = u, applied for a bare log atom with coefficient 1
  if (rest.terms_.size() == 1 && rest.terms_[0].second == Rational(1)) {
    const Monomial& m = rest.terms_[0].first;
    if (!m.exp_arg && m.e_exp.is_zero() && m.atoms.size() == 1 &&
        m.atoms[0].first->kind == AtomKind::Log && m.atoms[0].second == 1) {
      Monomial scale;
      scale.e_exp = rat_part;
      return m.atoms[0].first->arg * term_value(scale, Rational(1));
    }
  }
  Monomial m;
  m.e_exp = rat_part;
  m.exp_arg = std::make_shared<const ExactReal>(std::move(rest));
  return term_value(m, Rational(1));
}

ExactReal ExactReal::log(const ExactReal& x) {
  if (auto q = x.as_rational()) {
    if (q->sign() <= 0) raise(Errc::DomainError, "log of a non-positive value");
    if (*q == Rational(1)) return ExactReal();
    Monomial m;
    m.atoms.push_back({std::make_shared<RAtom>(AtomKind::Log, x), 1});
    return term_value(m, Rational(1));
  }
  // log(e^r * exp(v)) = r + v for a pure exponential monomial
  if (x.terms_.size() == 1 && x.terms_[0].second == Rational(1) &&
      x.terms_[0].first.atoms.empty()) {
    const Monomial& m = x.terms_[0].first;
    ExactReal r{m.e_exp};
    if (m.exp_arg) r = r + *m.exp_arg;
    return r;
  }
  Monomial m;
  m.atoms.push_back({std::make_shared<RAtom>(AtomKind::Log, x), 1});
  return term_value(m, Rational(1));
}

ExactReal ExactReal::arctan(const ExactReal& x) {
  if (x.is_zero()) return ExactReal();
  if (auto q = x.as_rational()) {
    if (*q == Rational(1)) return pi() * ExactReal(Rational(1, 4));
    if (*q == Rational(-1)) return pi() * ExactReal(Rational(-1, 4));
  }
  // oddness: keep the leading coefficient positive
  if (x.terms_[0].second.sign() < 0) return -arctan(-x);
  Monomial m;
  m.atoms.push_back({std::make_shared<RAtom>(AtomKind::Atan, x), 1});
  return term_value(m, Rational(1));
}

// ---------------------------------------------------------------------------
// refinement and comparison

namespace {

std::mutex g_value_cache_mutex;
std::unordered_map<std::string, Interval> g_value_cache;

}  // namespace

Interval ExactReal::refine(const Rational& target_width, RefineBudget& budget) const {
  if (target_width.sign() <= 0) raise(Errc::DomainError, "non-positive target width");
  Interval iv = refine_value(*this, target_width, budget);
  // intersect against the best enclosure seen for this canonical form, so
  // successive refinements of one value are nested
  std::string key = str();
  std::lock_guard<std::mutex> lock(g_value_cache_mutex);
  auto it = g_value_cache.find(key);
  if (it != g_value_cache.end()) {
    iv.lo = max(iv.lo, it->second.lo);
    iv.hi = min(iv.hi, it->second.hi);
  }
  g_value_cache[key] = iv;
  return iv;
}

Interval ExactReal::refine(const Rational& target_width) const {
  RefineBudget budget;
  return refine(target_width, budget);
}

Ordering ExactReal::compare(const ExactReal& a, const ExactReal& b, RefineBudget& budget) {
  ExactReal d = a - b;
  return d.sign(budget);
}

Ordering ExactReal::compare(const ExactReal& a, const ExactReal& b) {
  RefineBudget budget;
  return compare(a, b, budget);
}

Ordering ExactReal::sign(RefineBudget& budget) const {
  if (terms_.empty()) return Ordering::Equal;
  if (auto q = as_rational()) return q->sign() > 0 ? Ordering::Greater : Ordering::Less;
  Rational width(1);
  try {
    for (;;) {
      Interval iv = refine_value(*this, width, budget);
      if (iv.lo.sign() > 0) return Ordering::Greater;
      if (iv.hi.sign() < 0) return Ordering::Less;
      if (width < budget.min_width) return Ordering::Inconclusive;
      width = width / Rational(65536);
    }
  } catch (const CalcError& e) {
    if (e.code() == Errc::PrecisionExhausted) return Ordering::Inconclusive;
    throw;
  }
}

Ordering ExactReal::sign() const {
  RefineBudget budget;
  return sign(budget);
}

// ---------------------------------------------------------------------------
// rendering

namespace {

std::string mono_str(const Monomial& m) {
  std::vector<std::string> factors;
  if (!m.e_exp.is_zero()) {
    if (m.e_exp == Rational(1))
      factors.push_back("e");
    else if (m.e_exp.is_integer())
      factors.push_back("e^" + m.e_exp.str());
    else
      factors.push_back("e^(" + m.e_exp.str() + ")");
  }
  if (m.exp_arg) factors.push_back("exp(" + m.exp_arg->str() + ")");
  for (const auto& [atom, power] : m.atoms) {
    std::string base;
    switch (atom->kind) {
      case AtomKind::Pi: base = "pi"; break;
      case AtomKind::Log: base = "log(" + atom->arg.str() + ")"; break;
      case AtomKind::Atan: base = "arctan(" + atom->arg.str() + ")"; break;
      case AtomKind::Inv: base = "(" + atom->arg.str() + ")^-1"; break;
    }
    if (power == 1) {
      factors.push_back(base);
    } else if (atom->kind == AtomKind::Inv) {
      factors.push_back("(" + atom->arg.str() + ")^" + std::to_string(-power));
    } else {
      factors.push_back(base + "^" + std::to_string(power));
    }
  }
  std::string s;
  for (size_t i = 0; i < factors.size(); ++i) {
    if (i) s += "*";
    s += factors[i];
  }
  return s;
}

// |coeff| * mono as a product, e.g. "pi/2", "3*pi/4", "2*log(2)"
std::string term_str(const Monomial& m, const Rational& coeff_abs) {
  if (m.is_unit()) return coeff_abs.str();
  std::string ms = mono_str(m);
  const mpz_class& p = coeff_abs.num();
  const mpz_class& q = coeff_abs.den();
  std::string s;
  if (p != 1) s += p.get_str() + "*";
  s += ms;
  if (q != 1) s += "/" + q.get_str();
  return s;
}

}  // namespace

std::string ExactReal::str() const {
  if (terms_.empty()) return "0";
  std::string s;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    if (first) {
      if (c.sign() < 0) s += "-";
      first = false;
    } else {
      s += c.sign() < 0 ? " - " : " + ";
    }
    s += term_str(m, c.abs());
  }
  return s;
}

std::string ExactReal::str_atom() const {
  std::string s = str();
  if (terms_.size() > 1 || (!terms_.empty() && terms_[0].second.sign() < 0))
    return "(" + s + ")";
  // products with a division tail parse fine; fractions of bare rationals too
  return s;
}

}  // namespace scal
