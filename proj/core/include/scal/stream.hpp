#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "scal/expr.hpp"
#include "scal/ordinal.hpp"
#include "scal/surreal.hpp"

namespace scal {

// Ordinal-indexed generator of normal-form terms: for i >= start the i-th
// term is coeff(i) * w^expo(i), with exponents strictly decreasing. A bound
// of On (nullopt) makes this Type I gap data; an ordinal bound is an
// omega-length (or longer) number. A finite patch may override the head,
// and terms that sort below every generated exponent ride along in
// tail_pending.
class SurrealStream {
 public:
  SurrealStream(Expr coeff_rule, Expr expo_rule, long start,
                std::optional<Ordinal> bound);

  // Stream backed by a computed generator instead of closed-form rules;
  // used for evaluator outputs whose coefficients have no closed form.
  // Such streams cannot serve as Type I gap data.
  using NativeRule = std::function<Surreal::Term(long)>;
  static SurrealStream native(NativeRule rule, long start, std::optional<Ordinal> bound,
                              std::string description);
  bool is_native() const { return static_cast<bool>(native_rule_); }

  const Expr& coeff_rule() const { return coeff_rule_; }
  const Expr& expo_rule() const { return expo_rule_; }
  long start() const { return start_; }
  const std::optional<Ordinal>& bound() const { return bound_; }  // nullopt = On
  bool is_on_length() const { return !bound_.has_value(); }
  const std::vector<Surreal::Term>& patch() const { return patch_; }
  const std::vector<Surreal::Term>& tail_pending() const { return tail_pending_; }
  // first rule index not overridden by the patch
  long rule_from() const { return rule_from_; }

  // i-th term (patch first, then the rule); i counts from 0 over the patch.
  Surreal::Term term_at(long i) const;
  // sum of the first k terms as a finite normal form
  Surreal truncate(long k) const;

  // sampled invariants: exponents strictly decreasing, coefficients nonzero
  void validate_window(long window = 16) const;

  // merge a finite normal form into the head of the stream; terms below the
  // whole sampled window land in tail_pending
  SurrealStream plus_number(const Surreal& n, long window = 64) const;

  static bool identical(const SurrealStream& a, const SurrealStream& b);

  std::string str(long preview_terms = 8) const;
  // the generator without the preview, e.g. "sum_{1<=i<w} (...)*w^(...)"
  std::string rule_str() const;

 private:
  Expr coeff_rule_;
  Expr expo_rule_;
  long start_;
  std::optional<Ordinal> bound_;
  std::vector<Surreal::Term> patch_;
  long rule_from_;
  std::vector<Surreal::Term> tail_pending_;
  NativeRule native_rule_;
  std::string native_desc_;
};

// A value that is either a finite normal form or a stream-backed number.
using SurrealValue = std::variant<Surreal, SurrealStream>;

std::string value_str(const SurrealValue& v);
// compare by walking terms; WitnessExhausted if no difference shows up
// within the window
int value_compare(const SurrealValue& a, const SurrealValue& b, long window = 64);

}  // namespace scal
