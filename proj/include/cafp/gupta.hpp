#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "cafp/rational_function.hpp"
#include "cafp/trace.hpp"

namespace cafp {

/// The factors L_1..L_l of the product formula,
///   L_1 = 1 + z_1,  L_k = 1 + z_k prod_{j<k} L_j^{A[k][j]},  z_k = y^{c_k^+}.
///
/// Each L_k is stored over a basis of polynomials N_1..N_k as
/// L_k = prod_i N_i^{exponents(k)[i]}. N_k is the numerator of L_k over the
/// common denominator of its inner product, with every earlier N_i divided
/// out as often as the division is exact. Products of L's then cancel
/// syntactically without any gcd computation.
class LFactorChain {
 public:
  std::size_t size() const noexcept { return basis_.size(); }
  std::size_t nvars() const noexcept { return nvars_; }
  const std::vector<SparsePolynomial>& basis() const noexcept { return basis_; }
  const std::vector<std::int64_t>& exponents(std::size_t k) const { return exps_.at(k); }

  /// L_k as a fraction.
  RationalFunction factor(std::size_t k) const;
  /// Exponents over the basis of prod_j L_j^{h_j}.
  std::vector<std::int64_t> combine(std::span<const std::int64_t> h) const;
  /// prod_j L_j^{h_j} as numerator over denominator, basis powers cancelled.
  RationalFunction product(std::span<const std::int64_t> h) const;

 private:
  friend LFactorChain l_factors(const MutationTrace&);

  std::size_t nvars_ = 0;
  std::vector<SparsePolynomial> basis_;
  std::vector<std::vector<std::int64_t>> exps_;
};

LFactorChain l_factors(const MutationTrace& trace);

/// The same factors built literally with frac_pow_mul, without the basis
/// bookkeeping. Denominators grow quickly; meant for small traces and tests.
std::vector<RationalFunction> l_factors_unreduced(const MutationTrace& trace);

/// F_{var;t_l} = prod_j L_j^{E[var][j]} reduced to a polynomial.
SparsePolynomial f_product(const MutationTrace& trace, std::size_t var);

struct SumResult {
  SparsePolynomial poly;
  /// True when a tuple with nonzero contribution exceeded the cap and was
  /// dropped. Coefficients of monomials <= cap are exact either way.
  bool cap_limited = false;
  std::uint64_t tuples = 0;
};

/// Binomial expansion of prod_j L_j^{h_j} for arbitrary integer h, truncated
/// to monomials y^v with v <= cap componentwise.
SumResult expand_product(const MutationTrace& trace, std::span<const std::int64_t> h, const ExponentVector& cap);

/// The summation formula for F_{var;t_l}: expand_product with h = E[var].
SumResult f_sum(const MutationTrace& trace, std::size_t var, const ExponentVector& cap);

struct TupleFamily {
  std::vector<std::uint64_t> suffix;  ///< (m_2, ..., m_l)
  SparsePolynomial contribution;      ///< sum over m_1 within the cap
};

/// Contributions of the summation formula grouped by (m_2, ..., m_l), in
/// lexicographic order of the suffix. Families whose capped sum is zero are
/// kept so cancellations stay visible.
std::vector<TupleFamily> f_sum_families(const MutationTrace& trace, std::size_t var, const ExponentVector& cap);

struct TildeC {
  std::vector<ExponentVector> via_d;          ///< componentwise (d_{i_j}/d_i) c_{i,j}
  std::vector<ExponentVector> via_companion;  ///< c-vectors of the -B0^T pattern
};

/// Computes tilde-c_j both ways and asserts that they agree and that their
/// ordinary dot products reproduce the E and A tables. Throws
/// Error(IntegralityViolation) or Error(CrossCheckMismatch).
TildeC tilde_c(const MutationTrace& trace);

}  // namespace cafp
