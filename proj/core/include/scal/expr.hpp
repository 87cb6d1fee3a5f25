#pragma once

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "scal/surreal.hpp"

namespace scal {

// Symbolic expression in the admissible closed-form class: rational
// operations, integer powers, exp, log, arctan over variables and exact
// constants, closed under composition. Geometric powers r^E are carried by
// a dedicated node and treated as exp(E*log r).
class Expr {
 public:
  enum class Op {
    Const,   // surreal constant
    Var,     // named variable
    Add,
    Sub,
    Mul,
    Div,
    Neg,
    PowInt,  // base^k, k integer
    PowExpr, // base^exponent, base a constant or variable
    Exp,
    Log,
    Atan,
  };

  Expr();  // the constant 0
  static Expr constant(const Surreal& v);
  static Expr rational(const Rational& q);
  static Expr var(const std::string& name);

  Expr operator+(const Expr& o) const;
  Expr operator-(const Expr& o) const;
  Expr operator*(const Expr& o) const;
  Expr operator/(const Expr& o) const;
  Expr operator-() const;
  Expr pow(long k) const;
  static Expr pow_expr(const Expr& base, const Expr& exponent);
  static Expr exp(const Expr& e);
  static Expr log(const Expr& e);
  static Expr atan(const Expr& e);
  // nlog(x) = -log(1-x)
  static Expr nlog(const Expr& e);

  Op op() const;
  const std::vector<Expr>& children() const;
  const Surreal& const_value() const;  // Op::Const
  const std::string& var_name() const; // Op::Var
  long int_power() const;              // Op::PowInt

  std::set<std::string> variables() const;
  bool contains_var(const std::string& name) const;

  Expr substitute(const std::string& name, const Expr& replacement) const;

  // Exact evaluation with every variable bound.
  Surreal eval(const std::map<std::string, Surreal>& env) const;

  // Rule-based symbolic derivative, for cross-checking the limit engine.
  Expr derivative(const std::string& name) const;

  // Exact equality as rational functions over transcendental atoms.
  static bool equivalent(const Expr& a, const Expr& b);

  std::string str() const;

  bool is_zero_const() const;
  std::optional<Rational> as_rational_const() const;

 private:
  struct Node;
  explicit Expr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  static Expr make(Op op, std::vector<Expr> kids, Surreal value = Surreal(),
                   std::string name = {}, long k = 0);
  std::shared_ptr<const Node> node_;
};

namespace nf {
struct NF;
}

// Canonical rational-function value over transcendental atoms; the exact
// coefficient field for symbolic series work. Equality is decided by
// cross-multiplied polynomial identity, exp factors merge by argument.
class SymValue {
 public:
  SymValue();  // zero
  static SymValue of(const Expr& e);
  static SymValue of_rational(const Rational& q);

  SymValue operator+(const SymValue& o) const;
  SymValue operator-(const SymValue& o) const;
  SymValue operator*(const SymValue& o) const;
  SymValue operator/(const SymValue& o) const;
  SymValue operator-() const;

  bool is_zero() const;
  static bool equal(const SymValue& a, const SymValue& b);
  std::optional<Rational> as_rational() const;

  SymValue exp() const;
  SymValue log() const;
  SymValue atan() const;

  Expr to_expr() const;
  std::string str() const;

 private:
  explicit SymValue(std::shared_ptr<const nf::NF> v) : nf_(std::move(v)) {}
  std::shared_ptr<const nf::NF> nf_;
};

}  // namespace scal
