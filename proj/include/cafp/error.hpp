#pragma once

#include <stdexcept>
#include <string>

namespace cafp {

enum class ErrorKind {
  NotDivisible,
  DivisionByZero,
  LengthMismatch,
  DenominatorVanishes,
  NotSkewSymmetrizable,
  IndexOutOfRange,
  SignCoherenceViolation,
  ZeroVector,
  IntegralityViolation,
  CrossCheckMismatch,
  ResidualX,
  Overflow,
  Parse,
};

const char* to_string(ErrorKind kind) noexcept;

// Every failure in the library surfaces as this exception; kind() tells the
// caller which contract was broken.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace cafp
