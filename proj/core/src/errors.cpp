#include "scal/errors.hpp"

namespace scal {

const char* errc_name(Errc c) {
  switch (c) {
    case Errc::ParseError: return "ParseError";
    case Errc::DomainError: return "DomainError";
    case Errc::UnsupportedClass: return "UnsupportedClass";
    case Errc::IllFormed: return "IllFormed";
    case Errc::DepthExceeded: return "DepthExceeded";
    case Errc::WitnessExhausted: return "WitnessExhausted";
    case Errc::PrecisionExhausted: return "PrecisionExhausted";
    case Errc::InconclusiveComparison: return "InconclusiveComparison";
    case Errc::NotSummable: return "NotSummable";
    case Errc::NotInClass: return "NotInClass";
    case Errc::EssentialSingularity: return "EssentialSingularity";
    case Errc::UndecidableAsymptotics: return "UndecidableAsymptotics";
    case Errc::Internal: return "Internal";
  }
  return "Unknown";
}

int errc_exit_code(Errc c) {
  switch (c) {
    case Errc::ParseError:
      return 2;
    case Errc::DomainError:
    case Errc::UnsupportedClass:
    case Errc::IllFormed:
    case Errc::DepthExceeded:
    case Errc::WitnessExhausted:
    case Errc::PrecisionExhausted:
      return 3;
    case Errc::InconclusiveComparison:
      return 4;
    case Errc::NotSummable:
    case Errc::NotInClass:
    case Errc::EssentialSingularity:
    case Errc::UndecidableAsymptotics:
      return 5;
    case Errc::Internal:
      return 1;
  }
  return 1;
}

}  // namespace scal
