#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "scal/surreal.hpp"

namespace scal {

// One side of a genetic form: a finite set of surreals, optionally extended
// by an indexed cofinal family k |-> value for k = 1, 2, ... Limit values
// like w = { k : k in Z>0 | } carry the family instead of a literal class.
struct OptionSet {
  std::vector<Surreal> elements;
  std::function<Surreal(long)> family;
  std::string family_desc;

  bool has_family() const { return static_cast<bool>(family); }
  bool empty() const { return elements.empty() && !family; }
};

struct GeneticForm {
  OptionSet left;
  OptionSet right;
};

// Canonical genetic options for the supported class: integers, dyadics,
// non-dyadic reals (day-omega approximants), ordinals in CNF, and omega
// itself. Everything else raises UnsupportedClass.
GeneticForm to_genetic(const Surreal& x);

// Birthday via sign-expansion length for the supported class: dyadics,
// non-dyadic reals (day omega), ordinals, +-1/w.
Ordinal birthday(const Surreal& x);

// The oldest number strictly between the two finite sets (every left element
// below every right element). Empty sides mean unbounded. Rational-valued
// endpoints only.
Surreal simplest_between(const std::vector<Surreal>& left,
                         const std::vector<Surreal>& right);

Rational simplest_rational_between(const std::optional<Rational>& lo,
                                   const std::optional<Rational>& hi);

// ---------------------------------------------------------------------------
// Test-scale recursive Conway arithmetic on literal {L|R} forms.

class Game;
using GamePtr = std::shared_ptr<const Game>;

class Game {
 public:
  std::vector<GamePtr> left;
  std::vector<GamePtr> right;
  int rank = 0;  // structural birthday: 1 + max over options

  static GamePtr make(std::vector<GamePtr> l, std::vector<GamePtr> r);
};

// Canonical game form of a dyadic, built through the birth order.
GamePtr game_dyadic(const Rational& q);

bool game_leq(const GamePtr& a, const GamePtr& b);
bool game_eq(const GamePtr& a, const GamePtr& b);
GamePtr game_neg(const GamePtr& a);
// Recursive Conway addition/multiplication, for inputs whose structural
// birthday is within the given bound (DepthExceeded otherwise).
GamePtr game_add(const GamePtr& a, const GamePtr& b, int birthday_bound = 8);
GamePtr game_mul(const GamePtr& a, const GamePtr& b, int birthday_bound = 8);

// Dyadics enumerated through the birth order, one vector per day.
std::vector<std::vector<Rational>> dyadics_by_day(int max_day);

}  // namespace scal
