#pragma once

#include <stdexcept>
#include <string>

namespace scal {

// Stable error codes. The CLI maps them onto process exit codes:
//   0 success, 2 parse error, 3 domain/class error, 4 inconclusive
//   comparison, 5 not summable / not in the closed-form class.
enum class Errc {
  ParseError,
  DomainError,
  UnsupportedClass,
  IllFormed,
  DepthExceeded,
  WitnessExhausted,
  PrecisionExhausted,
  InconclusiveComparison,
  NotSummable,
  NotInClass,
  EssentialSingularity,
  UndecidableAsymptotics,
  Internal,
};

const char* errc_name(Errc c);
int errc_exit_code(Errc c);

class CalcError : public std::runtime_error {
 public:
  CalcError(Errc code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  Errc code() const { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void raise(Errc code, const std::string& what) {
  throw CalcError(code, std::string(errc_name(code)) + ": " + what);
}

}  // namespace scal
