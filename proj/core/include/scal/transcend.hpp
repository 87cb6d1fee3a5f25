#pragma once

#include <string>
#include <vector>

#include "scal/genetic.hpp"
#include "scal/stream.hpp"

namespace scal {

enum class TruncFn { Arctan, Nlog };

// [z]_n: the degree-n truncation of the Maclaurin expansion of the named
// function (arctan, or nlog(z) = -log(1-z)).
Surreal maclaurin_trunc(TruncFn fn, const Surreal& z, long n);
ExactReal maclaurin_trunc(TruncFn fn, const ExactReal& z, long n);

// Which options of a genetic form survive the side conditions of the
// genetic definitions. Removed options cite the inequality that fired.
struct OptionFilterReport {
  struct Entry {
    std::string option;
    bool kept = true;
    std::string condition;  // the violated inequality, for removed options
  };
  std::vector<Entry> left;
  std::vector<Entry> right;
  bool re_represented = false;
  std::string note;

  bool left_all_removed() const;
  bool right_all_removed() const;
  std::string str() const;
};

OptionFilterReport option_filter(const Surreal& x, const GeneticForm& form, TruncFn fn,
                                 long family_samples = 4, long trunc_samples = 3);
OptionFilterReport option_filter(const Surreal& x, TruncFn fn);

// The genetic arctangent. Supported class: reals, +-(w + m) and +-(w - m)
// for natural m, and single-term infinitesimals r*w^(-y).
SurrealValue ul_arctan(const Surreal& x);
// The genetic nlog(x) = -log(1-x) on x <= 0; reals and the S-class fast path.
SurrealValue ul_nlog(const Surreal& x);

// Restricted exponential: exp(p + r + eps) with p purely infinite, r real,
// eps a finite-normal-form infinitesimal.
SurrealValue surreal_exp(const Surreal& x);

}  // namespace scal
