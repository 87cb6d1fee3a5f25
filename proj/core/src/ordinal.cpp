#include "scal/ordinal.hpp"

#include <algorithm>

namespace scal {

namespace {

const std::shared_ptr<const Ordinal>& zero_ptr() {
  static const std::shared_ptr<const Ordinal> z = std::make_shared<Ordinal>();
  return z;
}

std::shared_ptr<const Ordinal> share(const Ordinal& o) {
  if (o.is_zero()) return zero_ptr();
  return std::make_shared<Ordinal>(o);
}

}  // namespace

Ordinal Ordinal::from_uint(std::uint64_t n) {
  Ordinal r;
  if (n > 0) r.terms_.push_back({zero_ptr(), n});
  return r;
}

Ordinal Ordinal::omega() { return omega_pow(from_uint(1)); }

Ordinal Ordinal::omega_pow(const Ordinal& e, std::uint64_t count) {
  Ordinal r;
  if (count > 0) r.terms_.push_back({share(e), count});
  return r;
}

Ordinal Ordinal::from_terms(std::vector<Term> terms) {
  Ordinal r;
  r.terms_ = std::move(terms);
  for (size_t i = 0; i < r.terms_.size(); ++i) {
    if (r.terms_[i].count == 0 || !r.terms_[i].expo)
      raise(Errc::IllFormed, "bad CNF term");
    if (i + 1 < r.terms_.size() &&
        compare(*r.terms_[i].expo, *r.terms_[i + 1].expo) <= 0)
      raise(Errc::IllFormed, "CNF exponents not strictly decreasing");
  }
  return r;
}

bool Ordinal::is_finite() const {
  return terms_.empty() || (terms_.size() == 1 && terms_[0].expo->is_zero());
}

std::optional<std::uint64_t> Ordinal::as_uint() const {
  if (terms_.empty()) return 0;
  if (is_finite()) return terms_[0].count;
  return std::nullopt;
}

bool Ordinal::is_successor() const {
  return !terms_.empty() && terms_.back().expo->is_zero();
}

const Ordinal& Ordinal::leading_exponent() const {
  if (terms_.empty()) raise(Errc::DomainError, "leading exponent of 0");
  return *terms_[0].expo;
}

int Ordinal::compare(const Ordinal& a, const Ordinal& b) {
  size_t n = std::min(a.terms_.size(), b.terms_.size());
  for (size_t i = 0; i < n; ++i) {
    int c = compare(*a.terms_[i].expo, *b.terms_[i].expo);
    if (c != 0) return c;
    if (a.terms_[i].count != b.terms_[i].count)
      return a.terms_[i].count < b.terms_[i].count ? -1 : 1;
  }
  if (a.terms_.size() != b.terms_.size())
    return a.terms_.size() < b.terms_.size() ? -1 : 1;
  return 0;
}

Ordinal Ordinal::operator+(const Ordinal& o) const {
  if (o.is_zero()) return *this;
  const Ordinal& lead = *o.terms_[0].expo;
  Ordinal r;
  // keep the terms of *this that survive absorption by o's leading term
  for (const Term& t : terms_) {
    int c = compare(*t.expo, lead);
    if (c > 0) {
      r.terms_.push_back(t);
    } else if (c == 0) {
      r.terms_.push_back({t.expo, t.count + o.terms_[0].count});
      r.terms_.insert(r.terms_.end(), o.terms_.begin() + 1, o.terms_.end());
      return r;
    } else {
      break;
    }
  }
  r.terms_.insert(r.terms_.end(), o.terms_.begin(), o.terms_.end());
  return r;
}

Ordinal Ordinal::operator*(const Ordinal& o) const {
  if (is_zero() || o.is_zero()) return Ordinal();
  Ordinal acc;
  for (const Term& t : o.terms_) {
    Ordinal piece;
    if (t.expo->is_zero()) {
      // a * m: the leading count scales, the tail is appended once
      piece.terms_ = terms_;
      piece.terms_[0].count *= t.count;
    } else {
      // a * w^f * m = w^(e1 + f) * m   for f > 0
      Ordinal e = *terms_[0].expo + *t.expo;
      piece.terms_.push_back({share(e), t.count});
    }
    acc = acc + piece;
  }
  return acc;
}

Ordinal Ordinal::natural_add(const Ordinal& a, const Ordinal& b) {
  Ordinal r;
  size_t i = 0, j = 0;
  while (i < a.terms_.size() || j < b.terms_.size()) {
    if (i == a.terms_.size()) {
      r.terms_.push_back(b.terms_[j++]);
    } else if (j == b.terms_.size()) {
      r.terms_.push_back(a.terms_[i++]);
    } else {
      int c = compare(*a.terms_[i].expo, *b.terms_[j].expo);
      if (c > 0) {
        r.terms_.push_back(a.terms_[i++]);
      } else if (c < 0) {
        r.terms_.push_back(b.terms_[j++]);
      } else {
        r.terms_.push_back({a.terms_[i].expo, a.terms_[i].count + b.terms_[j].count});
        ++i, ++j;
      }
    }
  }
  return r;
}

Ordinal Ordinal::predecessor() const {
  if (!is_successor()) raise(Errc::DomainError, "predecessor of a non-successor");
  Ordinal r = *this;
  if (r.terms_.back().count > 1)
    r.terms_.back().count -= 1;
  else
    r.terms_.pop_back();
  return r;
}

std::string Ordinal::str() const {
  if (terms_.empty()) return "0";
  std::string s;
  bool first = true;
  for (const Term& t : terms_) {
    if (!first) s += " + ";
    first = false;
    if (t.expo->is_zero()) {
      s += std::to_string(t.count);
      continue;
    }
    bool exp_is_one = t.expo->as_uint() && *t.expo->as_uint() == 1;
    if (exp_is_one)
      s += "w";
    else if (t.expo->is_finite())
      s += "w^" + t.expo->str();
    else
      s += "w^(" + t.expo->str() + ")";
    if (t.count != 1) s += "*" + std::to_string(t.count);
  }
  return s;
}

}  // namespace scal
