#pragma once

#include <string>
#include <vector>

#include "scal/expr.hpp"

namespace scal {

// Formal expansion in an indeterminate t over a scale lattice: rational
// powers of t plus flags for parts beyond all powers (exponentially large
// or small in 1/t). Terms carry an oscillation tag for bounded sign-flips.
struct FormalSeries {
  struct Term {
    Rational power;
    Surreal coeff;
    bool oscillating = false;
  };
  std::vector<Term> terms;  // ascending powers
  int small_sign = 0;       // 0 none; +1/-1; 9 sign unknown or oscillating
  int large_sign = 0;

  std::string str() const;
};

// Expansion as the named variable tends to On, in t = 1/var.
FormalSeries expand_at_on(const Expr& e, const std::string& var, int order = 12);
// Expansion around a finite point from one side, in t = |var - a|.
FormalSeries expand_at_point(const Expr& e, const std::string& var, const Surreal& a,
                             bool from_right, int order = 12);

namespace detail_series {

// Same expansion with symbolic coefficients; free variables other than the
// expansion variable stay exact symbols.
struct SymSeries {
  struct Term {
    Rational power;
    SymValue coeff;
    bool oscillating = false;
  };
  std::vector<Term> terms;
  int small_sign = 0;
  int large_sign = 0;
};

SymSeries expand_sym(const Expr& e, const std::string& var, bool at_on, const Surreal& a,
                     bool from_right, int order);

}  // namespace detail_series

}  // namespace scal
