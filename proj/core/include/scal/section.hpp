#pragma once

#include <memory>
#include <optional>
#include <string>

#include "scal/stream.hpp"

namespace scal {

enum class GapTag { NotAGap, TypeIa, TypeIb, TypeII };
const char* gap_tag_name(GapTag t);

// A Dedekind section of the surreal line, held intensionally: a number's
// section, Type I data (an On-length normal form), Type II data
// (prefix (+|-) w^Theta), the named gaps ON/OFF/INFTY, or a one-sided cut
// at a number (legal only as a Theta; the restricted gap definition folds a
// top-level cut back onto its number).
class DedekindSection {
 public:
  enum class Kind { Number, TypeI, TypeII, On, Off, Infty, Cut };

  static DedekindSection number(Surreal v);
  static DedekindSection type1(SurrealStream s);
  static DedekindSection type2(SurrealValue prefix, int sign, DedekindSection theta);
  static DedekindSection on();
  static DedekindSection off();
  static DedekindSection infty();
  static DedekindSection cut(Surreal v, bool below);

  Kind kind() const { return kind_; }
  bool is_gap() const {
    return kind_ != Kind::Number && kind_ != Kind::Cut;
  }
  const Surreal& number_value() const;     // Number / Cut
  bool cut_below() const { return cut_below_; }
  const SurrealStream& stream() const;     // TypeI
  const SurrealValue& prefix() const;      // TypeII
  int sign() const { return sign_; }       // TypeII
  const DedekindSection& theta() const;    // TypeII

  bool identical(const DedekindSection& o) const;

  std::string str() const;

 private:
  Kind kind_ = Kind::Number;
  Surreal value_;
  bool cut_below_ = false;
  std::shared_ptr<const SurrealStream> stream_;
  std::shared_ptr<const SurrealValue> prefix_;
  int sign_ = 1;
  std::shared_ptr<const DedekindSection> theta_;
};

// Accept a genuine gap or number under the restricted definition; rewrite
// excluded pseudo-gaps to their number. IllFormed rejections are exact.
DedekindSection validate_section(const DedekindSection& s);

// Structural Type I/II tag; Ia vs Ib decided by the limit of the exponent
// rule (UndecidableAsymptotics outside the closed-form class).
GapTag classify_gap(const DedekindSection& s);

// n (+) g: translation of a gap by a number.
DedekindSection gap_plus_number(const Surreal& n, const DedekindSection& g,
                                long window = 64);

// w^Theta as a section, exposed through side queries.
DedekindSection omega_power_gap(const DedekindSection& theta);

// Which side of the section x falls on: -1 left, +1 right, 0 exactly-at
// (numbers only). WitnessExhausted when the sampling budget runs out.
int section_side(const DedekindSection& s, const Surreal& x, long witness_budget = 64);

}  // namespace scal
