#pragma once

#include "cafp/exponent_vector.hpp"

namespace cafp {

/// Element y^v of the tropical semifield Trop(y_1..y_n). Multiplication adds
/// exponents, tropical addition takes the componentwise minimum.
class TropicalElement {
 public:
  TropicalElement() = default;
  explicit TropicalElement(ExponentVector exponents) : v_(std::move(exponents)) {}

  static TropicalElement one(std::size_t n) { return TropicalElement(ExponentVector(n)); }

  const ExponentVector& exponents() const noexcept { return v_; }
  std::size_t size() const noexcept { return v_.size(); }

  TropicalElement inverse() const { return TropicalElement(-v_); }
  TropicalElement pow(Exponent e) const { return TropicalElement(e * v_); }

  friend TropicalElement operator*(const TropicalElement& a, const TropicalElement& b);
  friend TropicalElement operator/(const TropicalElement& a, const TropicalElement& b);
  friend bool operator==(const TropicalElement& a, const TropicalElement& b) { return a.v_ == b.v_; }

 private:
  ExponentVector v_;
};

/// a ⊕ b. Throws Error(LengthMismatch).
TropicalElement trop_add(const TropicalElement& a, const TropicalElement& b);

}  // namespace cafp
