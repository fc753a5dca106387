#include "cafp/error.hpp"

namespace cafp {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::NotDivisible: return "NotDivisible";
    case ErrorKind::DivisionByZero: return "DivisionByZero";
    case ErrorKind::LengthMismatch: return "LengthMismatch";
    case ErrorKind::DenominatorVanishes: return "DenominatorVanishes";
    case ErrorKind::NotSkewSymmetrizable: return "NotSkewSymmetrizable";
    case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorKind::SignCoherenceViolation: return "SignCoherenceViolation";
    case ErrorKind::ZeroVector: return "ZeroVector";
    case ErrorKind::IntegralityViolation: return "IntegralityViolation";
    case ErrorKind::CrossCheckMismatch: return "CrossCheckMismatch";
    case ErrorKind::ResidualX: return "ResidualX";
    case ErrorKind::Overflow: return "Overflow";
    case ErrorKind::Parse: return "Parse";
  }
  return "Unknown";
}

}  // namespace cafp
