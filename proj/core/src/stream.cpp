#include "scal/stream.hpp"

#include "scal/errors.hpp"

namespace scal {

SurrealStream::SurrealStream(Expr coeff_rule, Expr expo_rule, long start,
                             std::optional<Ordinal> bound)
    : coeff_rule_(std::move(coeff_rule)),
      expo_rule_(std::move(expo_rule)),
      start_(start),
      bound_(std::move(bound)),
      rule_from_(start) {}

SurrealStream SurrealStream::native(NativeRule rule, long start,
                                    std::optional<Ordinal> bound,
                                    std::string description) {
  SurrealStream s(Expr::rational(Rational(0)), Expr::rational(Rational(0)), start,
                  std::move(bound));
  s.native_rule_ = std::move(rule);
  s.native_desc_ = std::move(description);
  return s;
}

Surreal::Term SurrealStream::term_at(long i) const {
  long pi = i;
  if (pi < static_cast<long>(patch_.size())) return patch_[pi];
  long rule_index = rule_from_ + (pi - static_cast<long>(patch_.size()));
  if (native_rule_) return native_rule_(rule_index);
  std::map<std::string, Surreal> env{{"i", Surreal(Rational(rule_index))}};
  Surreal c = coeff_rule_.eval(env);
  Surreal e = expo_rule_.eval(env);
  auto cr = c.as_exact_real();
  if (!cr) raise(Errc::IllFormed, "stream coefficient is not a real at i=" +
                                      std::to_string(rule_index));
  return Surreal::Term{*cr, ExpKey{nullptr, share(e)}};
}

Surreal SurrealStream::truncate(long k) const {
  std::vector<Surreal::Term> terms;
  for (long i = 0; i < k; ++i) {
    if (bound_ && bound_->is_finite()) {
      auto n = bound_->as_uint();
      if (i >= static_cast<long>(*n)) break;
    }
    terms.push_back(term_at(i));
  }
  return Surreal::normalize(terms);
}

void SurrealStream::validate_window(long window) const {
  std::optional<Surreal> prev;
  for (long i = 0; i < window; ++i) {
    Surreal::Term t = term_at(i);
    if (t.coeff.is_zero())
      raise(Errc::IllFormed, "zero stream coefficient at position " + std::to_string(i));
    if (t.key.has_atom()) raise(Errc::IllFormed, "exp atom inside a stream term");
    if (prev && Surreal::compare(*prev, *t.key.power) <= 0)
      raise(Errc::IllFormed, "stream exponents not strictly decreasing");
    prev = *t.key.power;
  }
}

SurrealStream SurrealStream::plus_number(const Surreal& n, long window) const {
  if (n.is_zero()) return *this;
  SurrealStream out = *this;
  // every term of n reaching into the sampled window merges into the patch;
  // anything below the window edge rides along behind the rule
  Surreal last_exp = *term_at(window - 1).key.power;
  std::vector<Surreal::Term> head, below;
  for (const auto& t : n.terms()) {
    if (t.key.has_atom()) raise(Errc::UnsupportedClass, "exp atom added to a stream");
    if (Surreal::compare(*t.key.power, last_exp) >= 0)
      head.push_back(t);
    else
      below.push_back(t);
  }
  if (!head.empty()) {
    std::vector<Surreal::Term> terms;
    for (long i = 0; i < window; ++i) terms.push_back(term_at(i));
    long consumed_rule = rule_from_ + (window - static_cast<long>(patch_.size()));
    for (const auto& t : head) terms.push_back(t);
    Surreal merged = Surreal::normalize(terms);
    out.patch_.assign(merged.terms().begin(), merged.terms().end());
    out.rule_from_ = consumed_rule;
  }
  for (const auto& t : below) out.tail_pending_.push_back(t);
  return out;
}

bool SurrealStream::identical(const SurrealStream& a, const SurrealStream& b) {
  if (a.is_native() || b.is_native()) return false;
  if (a.start_ != b.start_ || a.rule_from_ != b.rule_from_) return false;
  if (a.bound_.has_value() != b.bound_.has_value()) return false;
  if (a.bound_ && *a.bound_ != *b.bound_) return false;
  if (!Expr::equivalent(a.coeff_rule_, b.coeff_rule_)) return false;
  if (!Expr::equivalent(a.expo_rule_, b.expo_rule_)) return false;
  auto same_terms = [](const std::vector<Surreal::Term>& x,
                       const std::vector<Surreal::Term>& y) {
    if (x.size() != y.size()) return false;
    for (size_t i = 0; i < x.size(); ++i) {
      if (ExactReal::struct_compare(x[i].coeff, y[i].coeff) != 0) return false;
      if (Surreal::struct_compare(*x[i].key.power, *y[i].key.power) != 0) return false;
    }
    return true;
  };
  return same_terms(a.patch_, b.patch_) && same_terms(a.tail_pending_, b.tail_pending_);
}

std::string SurrealStream::rule_str() const {
  std::string bound = bound_ ? bound_->str() : "On";
  if (native_rule_)
    return "sum_{" + std::to_string(rule_from_) + "<=i<" + bound + "} [" + native_desc_ + "]";
  return "sum_{" + std::to_string(rule_from_) + "<=i<" + bound + "} (" +
         coeff_rule_.str() + ")*w^(" + expo_rule_.str() + ")";
}

std::string SurrealStream::str(long preview_terms) const {
  Surreal head = truncate(preview_terms);
  std::string s = "stream{ " + head.str() + " + ... ; " + rule_str() + " }";
  if (!tail_pending_.empty()) {
    Surreal below = Surreal::normalize(tail_pending_);
    s += " (+ lower-order " + below.str() + ")";
  }
  return s;
}

std::string value_str(const SurrealValue& v) {
  if (std::holds_alternative<Surreal>(v)) return std::get<Surreal>(v).str();
  return std::get<SurrealStream>(v).str();
}

namespace {

// i-th term of either flavor; nullopt past the end of a finite form
std::optional<Surreal::Term> term_of(const SurrealValue& v, long i) {
  if (std::holds_alternative<Surreal>(v)) {
    const auto& terms = std::get<Surreal>(v).terms();
    if (i < static_cast<long>(terms.size())) return terms[i];
    return std::nullopt;
  }
  const SurrealStream& s = std::get<SurrealStream>(v);
  if (s.bound() && s.bound()->is_finite()) {
    auto n = s.bound()->as_uint();
    if (i >= static_cast<long>(*n)) return std::nullopt;
  }
  return s.term_at(i);
}

int exact_sign_or_raise(const ExactReal& c) {
  Ordering o = c.sign();
  if (o == Ordering::Inconclusive)
    raise(Errc::InconclusiveComparison, "coefficient sign undecided");
  return o == Ordering::Greater ? 1 : (o == Ordering::Less ? -1 : 0);
}

}  // namespace

int value_compare(const SurrealValue& a, const SurrealValue& b, long window) {
  for (long i = 0; i < window; ++i) {
    auto ta = term_of(a, i);
    auto tb = term_of(b, i);
    if (!ta && !tb) return 0;
    if (!ta) return -exact_sign_or_raise(tb->coeff);
    if (!tb) return exact_sign_or_raise(ta->coeff);
    int kc = key_compare(ta->key, tb->key);
    if (kc > 0) return exact_sign_or_raise(ta->coeff);
    if (kc < 0) return -exact_sign_or_raise(tb->coeff);
    Ordering co = ExactReal::compare(ta->coeff, tb->coeff);
    if (co == Ordering::Inconclusive)
      raise(Errc::InconclusiveComparison, "stream coefficient comparison undecided");
    if (co == Ordering::Greater) return 1;
    if (co == Ordering::Less) return -1;
  }
  raise(Errc::WitnessExhausted,
        "no difference within the comparison window of " + std::to_string(window));
}

}  // namespace scal
