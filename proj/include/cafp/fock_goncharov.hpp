#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "cafp/rational_function.hpp"
#include "cafp/trace.hpp"

namespace cafp {

// Mixed alphabet: variables 0..n-1 are x_1..x_n, variables n..2n-1 are
// y_1..y_n, and yhat_i = y_i prod_j x_j^{b0_ji}.

/// Data of one q-automorphism q_{k;t}: x^m -> x^m (1 + yhat^{c+})^{-(m, d_k c)_D},
/// where c = pre_c is the c-vector of k at the seed the edge starts from.
struct QStep {
  std::size_t index = 0;      ///< 0-based position in the trace
  std::size_t direction = 0;  ///< 0-based k
  ExponentVector pre_c;
  ExponentVector c_plus;
  ExponentVector c_hat_plus;  ///< B0 c_plus
  std::int64_t d_dir = 1;     ///< d_k
  SkewSymmetrizer d;

  /// The automorphism of the same edge traversed the other way.
  QStep reversed() const;
};

/// Step j of the trace is q_{i_j; t_{j-1}}, whose c-vector is -c_j.
std::vector<QStep> q_steps(const MutationTrace& trace);

/// Exponent of (1 + yhat^{c+}) in the image of x^m. Throws Error(IntegralityViolation).
std::int64_t q_exponent(const QStep& step, const ExponentVector& m);
/// Exponent of (1 + yhat^{c+}) in the image of yhat^n, computed in the ĉ-form
/// (n, d_k B0 c)_D.
std::int64_t q_yhat_exponent(const QStep& step, const ExponentVector& n);

/// yhat^n = y^n x^{B0 n} in the mixed alphabet.
SparsePolynomial yhat_monomial(const ExponentVector& n, const IntMatrix& b0);
/// 1 + yhat^{c+} in the mixed alphabet.
SparsePolynomial q_unit(const QStep& step);

RationalFunction q_apply_monomial(const QStep& step, const ExponentVector& m);
RationalFunction q_apply_yhat(const QStep& step, const ExponentVector& n, const IntMatrix& b0);
/// The automorphism applied to an arbitrary mixed-alphabet fraction.
RationalFunction q_apply(const QStep& step, const RationalFunction& f);

/// q_{i_1;t_0} o ... o q_{i_upto;t_{upto-1}} applied to f: the last listed
/// step acts first.
RationalFunction q_composite(const MutationTrace& trace, std::size_t upto, const RationalFunction& f);

/// F_{var;t_l} read off from the full composite applied to x^{g_{var;t_l}}.
///
/// The composite is kept as x^g times a product of powers of mixed
/// polynomials and divided out once at the end. Every term x^a y^b of the
/// quotient must satisfy a = B0 b; it then contributes y^b to F.
/// Throws Error(ResidualX) otherwise, Error(NotDivisible) if the quotient is
/// not a Laurent polynomial.
SparsePolynomial q_composite_f(const MutationTrace& trace, std::size_t var);

/// Inverse of hat substitution: maps each term x^{B0 b} y^b to y^b.
/// Throws Error(ResidualX) when some term has a different x-part.
SparsePolynomial collect_yhat(const SparsePolynomial& mixed, const IntMatrix& b0);

}  // namespace cafp
