#pragma once

#include <cstdint>

#include "cafp/polynomial.hpp"

namespace cafp {

/// Quotient of two sparse polynomials with lazy normalization: no gcd is ever
/// taken, only the sign of the denominator's graded-lex leading coefficient is
/// fixed to be positive.
class RationalFunction {
 public:
  RationalFunction() = default;
  RationalFunction(SparsePolynomial num);  // NOLINT: polynomials embed implicitly
  RationalFunction(SparsePolynomial num, SparsePolynomial den);

  static RationalFunction one(std::size_t nvars) { return RationalFunction(SparsePolynomial::one(nvars)); }

  const SparsePolynomial& num() const noexcept { return num_; }
  const SparsePolynomial& den() const noexcept { return den_; }
  std::size_t nvars() const noexcept { return num_.nvars(); }
  bool is_zero() const noexcept { return num_.is_zero(); }

  /// f^e for any integer e. Throws Error(DivisionByZero) for 0^(negative).
  RationalFunction pow(std::int64_t e) const;
  RationalFunction inverse() const;

  friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b);
  friend RationalFunction operator/(const RationalFunction& a, const RationalFunction& b);
  friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b);
  friend RationalFunction operator-(const RationalFunction& a, const RationalFunction& b);

  /// Equality as elements of the fraction field (cross-multiplication).
  friend bool equivalent(const RationalFunction& a, const RationalFunction& b);

 private:
  SparsePolynomial num_;
  SparsePolynomial den_;
};

/// acc * f^e, unreduced.
RationalFunction frac_pow_mul(const RationalFunction& acc, const RationalFunction& f, std::int64_t e);

/// The polynomial equal to f. Throws Error(NotDivisible) when f is not one.
SparsePolynomial frac_to_polynomial(const RationalFunction& f);

}  // namespace cafp
