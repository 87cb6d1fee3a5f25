#pragma once

#include <optional>
#include <string>
#include <vector>

#include "scal/section.hpp"
#include "scal/series.hpp"

namespace scal {

struct LimitResult {
  enum class Tag { Number, Gap, NoLimit };
  enum class Reason { None, Oscillatory, UndefinedAtScale, Inconclusive };

  Tag tag = Tag::NoLimit;
  Surreal number;
  std::optional<DedekindSection> gap;
  Reason reason = Reason::None;
  // gap results report the value of the limit formula only; no epsilon-N
  // closeness is claimed for gaps
  bool formula_only = false;

  static LimitResult of_number(Surreal v);
  static LimitResult of_gap(DedekindSection g);
  static LimitResult no_limit(Reason r);

  std::string str() const;
};

const char* limit_reason_name(LimitResult::Reason r);

// Limit of the On-length sequence alpha |-> f(alpha) for closed-form f.
LimitResult seq_limit(const Expr& f, const std::string& var);

enum class LimitSide { Left, Right, Both };

struct LimitPoint {
  enum class Kind { Number, On, Off, Infty } kind = Kind::Number;
  Surreal value;
  static LimitPoint at(Surreal v) { return {Kind::Number, std::move(v)}; }
  static LimitPoint on() { return {Kind::On, Surreal()}; }
  static LimitPoint off() { return {Kind::Off, Surreal()}; }
  static LimitPoint infty() { return {Kind::Infty, Surreal()}; }
};

LimitResult fn_limit(const Expr& e, const std::string& var, const LimitPoint& at,
                     LimitSide side);

// Derivative computed as the limit of the difference quotient in h, with the
// base point symbolic; cross-checkable against Expr::derivative.
Expr derivative_expr(const Expr& e, const std::string& var);
Surreal derivative_at(const Expr& e, const std::string& var, const Surreal& x0);

struct CauchyResult {
  enum class Tag { ConvergesTo, ApproachesTypeIa, NotCauchy };
  Tag tag = Tag::NotCauchy;
  Surreal value;
  std::optional<DedekindSection> gap;
  std::string reason;

  std::string str() const;
};

CauchyResult classify_cauchy(const Expr& f, const std::string& var);
// Classify the partial sums of the series whose terms the stream generates.
CauchyResult classify_cauchy_stream(const SurrealStream& series_terms);

// The limit formula computed literally over the finite universe of dyadics
// with birthday <= bound: union over i of the intersection over j >= i of
// the left (right) Dedekind classes of the prefix terms.
struct OracleSection {
  std::vector<Rational> left;
  std::vector<Rational> right;
  std::vector<Rational> universe;
};
OracleSection seq_limit_oracle(const std::vector<Surreal>& prefix, int birthday_bound);

}  // namespace scal
