#include "cafp/rational_function.hpp"

#include "cafp/error.hpp"

namespace cafp {

RationalFunction::RationalFunction(SparsePolynomial num)
    : num_(std::move(num)), den_(SparsePolynomial::one(num_.nvars())) {}

RationalFunction::RationalFunction(SparsePolynomial num, SparsePolynomial den)
    : num_(std::move(num)), den_(std::move(den)) {
  if (num_.nvars() != den_.nvars()) throw Error(ErrorKind::LengthMismatch, "numerator and denominator alphabets");
  if (den_.is_zero()) throw Error(ErrorKind::DivisionByZero, "zero denominator");
  if (sgn(den_.leading_term().coefficient) < 0) {
    num_ = -std::move(num_);
    den_ = -std::move(den_);
  }
}

RationalFunction RationalFunction::inverse() const {
  if (num_.is_zero()) throw Error(ErrorKind::DivisionByZero, "inverse of zero");
  return RationalFunction(den_, num_);
}

RationalFunction RationalFunction::pow(std::int64_t e) const {
  if (e >= 0) return RationalFunction(num_.pow(static_cast<std::uint64_t>(e)), den_.pow(static_cast<std::uint64_t>(e)));
  return inverse().pow(-e);
}

RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
  return RationalFunction(a.num_ * b.num_, a.den_ * b.den_);
}

RationalFunction operator/(const RationalFunction& a, const RationalFunction& b) { return a * b.inverse(); }

RationalFunction operator+(const RationalFunction& a, const RationalFunction& b) {
  if (a.den_ == b.den_) return RationalFunction(a.num_ + b.num_, a.den_);
  return RationalFunction(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

RationalFunction operator-(const RationalFunction& a, const RationalFunction& b) {
  return a + RationalFunction(-b.num_, b.den_);
}

bool equivalent(const RationalFunction& a, const RationalFunction& b) {
  return a.num_ * b.den_ == b.num_ * a.den_;
}

RationalFunction frac_pow_mul(const RationalFunction& acc, const RationalFunction& f, std::int64_t e) {
  if (e < 0 && f.is_zero()) throw Error(ErrorKind::DivisionByZero, "negative power of zero");
  if (e == 0) return acc;
  return acc * f.pow(e);
}

SparsePolynomial frac_to_polynomial(const RationalFunction& f) {
  if (f.den().is_one()) return f.num();
  return poly_exact_div(f.num(), f.den());
}

}  // namespace cafp
