#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

#include "cafp/exponent_vector.hpp"

namespace cafp {

using Integer = mpz_class;

/// Generalized binomial h(h-1)...(h-m+1)/m!, exact for any integer h.
Integer gen_binomial(std::int64_t h, std::uint64_t m);

struct Term {
  ExponentVector exponent;
  Integer coefficient;
};

/// Sparse multivariate Laurent polynomial over the integers.
///
/// Terms are kept strictly ascending in graded-lex order with no zero
/// coefficients, so two equal polynomials have identical term lists.
class SparsePolynomial {
 public:
  SparsePolynomial() = default;
  /// The zero polynomial in `nvars` variables.
  explicit SparsePolynomial(std::size_t nvars) : nvars_(nvars) {}

  static SparsePolynomial constant(std::size_t nvars, const Integer& c);
  static SparsePolynomial one(std::size_t nvars) { return constant(nvars, 1); }
  static SparsePolynomial monomial(ExponentVector e, const Integer& c = 1);
  /// x_i (0-based) in `nvars` variables.
  static SparsePolynomial variable(std::size_t nvars, std::size_t i);
  /// Sorts, merges duplicate exponents and drops zeros.
  static SparsePolynomial from_terms(std::size_t nvars, std::vector<Term> terms);

  std::size_t nvars() const noexcept { return nvars_; }
  std::size_t size() const noexcept { return terms_.size(); }
  bool is_zero() const noexcept { return terms_.empty(); }
  bool is_one() const;
  bool is_monomial() const noexcept { return terms_.size() == 1; }
  const std::vector<Term>& terms() const noexcept { return terms_; }

  /// True when every exponent is nonnegative.
  bool is_polynomial() const;
  Integer coefficient(const ExponentVector& e) const;
  Integer constant_term() const { return coefficient(ExponentVector(nvars_)); }
  /// Graded-lex leading term. Requires a nonzero polynomial.
  const Term& leading_term() const { return terms_.back(); }

  /// Componentwise maximum exponent (zero vector for the zero polynomial).
  ExponentVector degree_vector() const;
  /// Componentwise minimum exponent (zero vector for the zero polynomial).
  ExponentVector min_exponents() const;
  /// Bit length of the largest |coefficient|.
  std::size_t max_coefficient_bits() const;

  SparsePolynomial pow(std::uint64_t e) const;
  /// Multiply by the monomial x^shift.
  SparsePolynomial shifted(const ExponentVector& shift) const;

  SparsePolynomial& operator+=(const SparsePolynomial& o);
  SparsePolynomial& operator-=(const SparsePolynomial& o);
  SparsePolynomial& operator*=(const SparsePolynomial& o);
  SparsePolynomial& operator*=(const Integer& c);

  friend SparsePolynomial operator+(SparsePolynomial a, const SparsePolynomial& b) { return a += b; }
  friend SparsePolynomial operator-(SparsePolynomial a, const SparsePolynomial& b) { return a -= b; }
  friend SparsePolynomial operator*(const SparsePolynomial& a, const SparsePolynomial& b);
  friend SparsePolynomial operator*(SparsePolynomial a, const Integer& c) { return a *= c; }
  friend SparsePolynomial operator-(SparsePolynomial a) { return a *= Integer(-1); }
  friend bool operator==(const SparsePolynomial& a, const SparsePolynomial& b);
  friend bool operator!=(const SparsePolynomial& a, const SparsePolynomial& b) { return !(a == b); }

 private:
  std::size_t nvars_ = 0;
  std::vector<Term> terms_;
};

/// Exact quotient q with q * den == num.
///
/// When both inputs are genuine polynomials the quotient must be a polynomial
/// as well; otherwise the division happens in the Laurent ring. Throws
/// Error(NotDivisible) when no such q exists, Error(DivisionByZero) for den == 0.
SparsePolynomial poly_exact_div(const SparsePolynomial& num, const SparsePolynomial& den);

/// poly_exact_div, or nullopt when the division is not exact.
std::optional<SparsePolynomial> try_exact_div(const SparsePolynomial& num, const SparsePolynomial& den);

/// Exact division in the Laurent ring regardless of the inputs' supports.
SparsePolynomial laurent_exact_div(const SparsePolynomial& num, const SparsePolynomial& den);

/// Product of `base^exponent` factors, skipping zero exponents.
SparsePolynomial product_of_powers(std::span<const SparsePolynomial> bases,
                                   std::span<const std::uint64_t> exponents, std::size_t nvars);

/// Default variable names y1..yn.
std::vector<std::string> y_names(std::size_t n);
/// Names for the mixed alphabet x1..xn, y1..yn.
std::vector<std::string> xy_names(std::size_t n);

/// Canonical text: graded-lex ascending, `c*y1^a*y2^b`, `^1` and unit
/// coefficients omitted, e.g. `1 + 3*y1 + y1^3*y2^4`.
std::string to_string(const SparsePolynomial& p, std::span<const std::string> names = {});

/// Inverse of to_string. Throws Error(Parse).
SparsePolynomial parse_polynomial(std::string_view text, std::size_t nvars,
                                  std::span<const std::string> names = {});

std::ostream& operator<<(std::ostream& os, const SparsePolynomial& p);

namespace detail {
// Switch for the packed-key fast paths; tests turn it off to exercise the
// generic map-based code on the same inputs.
void set_packing_enabled(bool enabled) noexcept;
bool packing_enabled() noexcept;
}  // namespace detail

}  // namespace cafp
