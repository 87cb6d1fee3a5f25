#include "scal/surreal.hpp"

#include <algorithm>

#include "scal/errors.hpp"

namespace scal {

const SurrealPtr& surreal_zero_ptr() {
  static const SurrealPtr z = std::make_shared<Surreal>();
  return z;
}

SurrealPtr share(const Surreal& s) {
  if (s.is_zero()) return surreal_zero_ptr();
  return std::make_shared<Surreal>(s);
}

namespace {

int exact_sign(const ExactReal& c) {
  Ordering o = c.sign();
  if (o == Ordering::Inconclusive)
    raise(Errc::InconclusiveComparison, "coefficient sign undecided: " + c.str());
  return o == Ordering::Greater ? 1 : (o == Ordering::Less ? -1 : 0);
}

}  // namespace

int key_compare(const ExpKey& a, const ExpKey& b) {
  if (a.has_atom() != b.has_atom()) {
    const ExpKey& with = a.has_atom() ? a : b;
    int s = with.atom_arg->sign();
    if (s == 0) raise(Errc::IllFormed, "exp atom with zero argument");
    int rel = s > 0 ? 1 : -1;  // positive atoms dominate, negative ones sink
    return a.has_atom() ? rel : -rel;
  }
  if (a.has_atom()) {
    int c = Surreal::compare(*a.atom_arg, *b.atom_arg);
    if (c != 0) return c;
  }
  return Surreal::compare(*a.power, *b.power);
}

Surreal::Surreal(const Rational& q) : Surreal(ExactReal(q)) {}

Surreal::Surreal(const ExactReal& r) {
  if (!r.is_zero()) terms_.push_back({r, ExpKey{nullptr, surreal_zero_ptr()}});
}

Surreal Surreal::omega() { return omega_pow(Surreal(Rational(1))); }

Surreal Surreal::omega_pow(const Surreal& expo, const ExactReal& coeff) {
  Surreal r;
  if (!coeff.is_zero()) r.terms_.push_back({coeff, ExpKey{nullptr, share(expo)}});
  return r;
}

Surreal Surreal::from_ordinal(const Ordinal& o) {
  Surreal r;
  for (const auto& t : o.terms()) {
    Surreal e = from_ordinal(*t.expo);
    r.terms_.push_back({ExactReal(Rational(static_cast<long>(t.count))),
                        ExpKey{nullptr, share(e)}});
  }
  return r;
}

Surreal Surreal::exp_monomial(const Surreal& arg, const ExactReal& coeff) {
  if (!arg.is_purely_infinite())
    raise(Errc::UnsupportedClass, "exp monomial needs a purely infinite argument");
  Surreal r;
  if (!coeff.is_zero())
    r.terms_.push_back({coeff, ExpKey{share(arg), surreal_zero_ptr()}});
  return r;
}

void Surreal::add_term(const Term& t) {
  if (t.coeff.is_zero()) return;
  auto it = std::lower_bound(terms_.begin(), terms_.end(), t.key,
                             [](const Term& have, const ExpKey& key) {
                               return key_compare(have.key, key) > 0;
                             });
  if (it != terms_.end() && key_compare(it->key, t.key) == 0) {
    ExactReal merged = it->coeff + t.coeff;
    if (merged.is_zero())
      terms_.erase(it);
    else
      it->coeff = merged;
  } else {
    terms_.insert(it, t);
  }
}

Surreal Surreal::normalize(std::vector<Term> raw_terms) {
  Surreal r;
  for (auto& t : raw_terms) r.add_term(t);
  return r;
}

bool Surreal::is_real_value() const {
  if (terms_.empty()) return true;
  return terms_.size() == 1 && !terms_[0].key.has_atom() && terms_[0].key.power->is_zero();
}

std::optional<ExactReal> Surreal::as_exact_real() const {
  if (terms_.empty()) return ExactReal();
  if (!is_real_value()) return std::nullopt;
  return terms_[0].coeff;
}

std::optional<Rational> Surreal::as_rational() const {
  auto r = as_exact_real();
  if (!r) return std::nullopt;
  return r->as_rational();
}

std::optional<Ordinal> Surreal::as_ordinal() const {
  std::vector<Ordinal::Term> terms;
  for (const auto& t : terms_) {
    if (t.key.has_atom()) return std::nullopt;
    auto c = t.coeff.as_rational();
    if (!c || !c->is_integer() || c->sign() <= 0) return std::nullopt;
    if (!c->num().fits_ulong_p()) return std::nullopt;
    auto e = t.key.power->as_ordinal();
    if (!e) return std::nullopt;
    terms.push_back({std::make_shared<Ordinal>(*e), c->num().get_ui()});
  }
  if (!terms.empty()) {
    for (size_t i = 0; i + 1 < terms.size(); ++i)
      if (Ordinal::compare(*terms[i].expo, *terms[i + 1].expo) <= 0) return std::nullopt;
  }
  return Ordinal::from_terms(std::move(terms));
}

bool Surreal::has_exp_atom() const {
  for (const auto& t : terms_)
    if (t.key.has_atom()) return true;
  return false;
}

int Surreal::sign() const {
  if (terms_.empty()) return 0;
  return exact_sign(terms_[0].coeff);
}

bool Surreal::is_purely_infinite() const {
  if (terms_.empty()) return false;
  for (const auto& t : terms_) {
    if (t.key.has_atom()) return false;
    if (t.key.power->sign() <= 0) return false;
  }
  return true;
}

bool Surreal::is_infinitesimal() const {
  if (terms_.empty()) return false;
  for (const auto& t : terms_) {
    if (t.key.has_atom()) {
      if (t.key.atom_arg->sign() >= 0) return false;
    } else if (t.key.power->sign() >= 0) {
      return false;
    }
  }
  return true;
}

void Surreal::split(Surreal& infinite, ExactReal& real, Surreal& small) const {
  infinite = Surreal();
  real = ExactReal();
  small = Surreal();
  for (const auto& t : terms_) {
    if (t.key.has_atom())
      raise(Errc::UnsupportedClass, "cannot split a value carrying exp atoms");
    int s = t.key.power->sign();
    if (s > 0)
      infinite.terms_.push_back(t);
    else if (s == 0)
      real = t.coeff;
    else
      small.terms_.push_back(t);
  }
}

int Surreal::compare(const Surreal& a, const Surreal& b) {
  if (struct_compare(a, b) == 0) return 0;
  Surreal d = a - b;
  return d.sign();
}

int Surreal::struct_compare(const Surreal& a, const Surreal& b) {
  size_t n = std::min(a.terms_.size(), b.terms_.size());
  for (size_t i = 0; i < n; ++i) {
    const Term& x = a.terms_[i];
    const Term& y = b.terms_[i];
    if (x.key.has_atom() != y.key.has_atom()) return x.key.has_atom() ? 1 : -1;
    if (x.key.has_atom()) {
      int c = struct_compare(*x.key.atom_arg, *y.key.atom_arg);
      if (c != 0) return c;
    }
    int c = struct_compare(*x.key.power, *y.key.power);
    if (c != 0) return c;
    c = ExactReal::struct_compare(x.coeff, y.coeff);
    if (c != 0) return c;
  }
  if (a.terms_.size() != b.terms_.size())
    return a.terms_.size() < b.terms_.size() ? -1 : 1;
  return 0;
}

Surreal Surreal::operator-() const {
  Surreal r = *this;
  for (auto& t : r.terms_) t.coeff = -t.coeff;
  return r;
}

Surreal Surreal::operator+(const Surreal& o) const {
  Surreal r = *this;
  for (const auto& t : o.terms_) r.add_term(t);
  return r;
}

Surreal Surreal::operator-(const Surreal& o) const { return *this + (-o); }

Surreal Surreal::operator*(const Surreal& o) const {
  Surreal acc;
  for (const auto& x : terms_) {
    for (const auto& y : o.terms_) {
      if (x.key.has_atom() && y.key.has_atom())
        raise(Errc::UnsupportedClass, "product of two exp atoms is quarantined");
      ExpKey key;
      key.atom_arg = x.key.has_atom() ? x.key.atom_arg : y.key.atom_arg;
      key.power = share(*x.key.power + *y.key.power);
      acc.add_term({x.coeff * y.coeff, key});
    }
  }
  return acc;
}

Surreal Surreal::inverse() const {
  if (terms_.empty()) raise(Errc::DomainError, "division by zero");
  if (terms_.size() != 1)
    raise(Errc::UnsupportedClass,
          "closed-form division needs a single-term divisor, got " + str());
  const Term& t = terms_[0];
  ExpKey key;
  if (t.key.has_atom()) key.atom_arg = share(-*t.key.atom_arg);
  key.power = share(-*t.key.power);
  Surreal r;
  r.terms_.push_back({t.coeff.inverse(), key});
  return r;
}

Surreal Surreal::operator/(const Surreal& o) const { return *this * o.inverse(); }

Surreal Surreal::pow(long k) const {
  if (k == 0) return Surreal(Rational(1));
  Surreal base = k > 0 ? *this : inverse();
  long n = k > 0 ? k : -k;
  Surreal acc(Rational(1));
  for (long i = 0; i < n; ++i) acc = acc * base;
  return acc;
}

Surreal surreal_exp_value(const Surreal& x) {
  Surreal p, eps;
  ExactReal r;
  x.split(p, r, eps);
  if (!eps.is_zero())
    raise(Errc::UnsupportedClass, "exp of a value with an infinitesimal part");
  ExactReal real_factor = ExactReal::exp(r);
  if (p.is_zero()) return Surreal(real_factor);
  return Surreal::exp_monomial(p, real_factor);
}

// ---------------------------------------------------------------------------
// rendering

std::string exponent_str(const Surreal& e) {
  if (auto q = e.as_rational()) {
    if (q->is_integer()) return q->str();
    return "(" + q->str() + ")";
  }
  // bare +/- omega reads naturally without parentheses
  if (e.term_count() == 1 && !e.terms()[0].key.has_atom()) {
    const auto& t = e.terms()[0];
    auto c = t.coeff.as_rational();
    auto p = t.key.power->as_rational();
    if (c && p && *p == Rational(1) && (*c == Rational(1) || *c == Rational(-1)))
      return *c == Rational(1) ? "w" : "-w";
  }
  return "(" + e.str() + ")";
}

namespace {

// coefficient rendered for use in front of "w^e"; empty for 1
std::string coeff_prefix(const ExactReal& c) {
  if (auto q = c.as_rational()) {
    if (*q == Rational(1)) return "";
    if (q->is_integer()) return q->str() + "*";
    return "(" + q->str() + ")*";
  }
  if (c.terms().size() == 1) return c.str() + "*";
  return "(" + c.str() + ")*";
}

}  // namespace

std::string Surreal::str() const {
  if (terms_.empty()) return "0";
  std::string s;
  bool first = true;
  for (const auto& t : terms_) {
    bool negative = !t.coeff.terms().empty() && t.coeff.terms()[0].second.sign() < 0;
    ExactReal mag = negative ? -t.coeff : t.coeff;
    if (first) {
      if (negative) s += "-";
      first = false;
    } else {
      s += negative ? " - " : " + ";
    }
    std::string base;
    if (t.key.has_atom()) base = "exp(" + t.key.atom_arg->str() + ")";
    const Surreal& p = *t.key.power;
    if (!p.is_zero()) {
      if (!base.empty()) base += "*";
      auto q = p.as_rational();
      if (q && *q == Rational(1))
        base += "w";
      else
        base += "w^" + exponent_str(p);
    }
    if (base.empty())
      s += mag.terms().size() > 1 ? "(" + mag.str() + ")" : mag.str();
    else
      s += coeff_prefix(mag) + base;
  }
  return s;
}

}  // namespace scal
