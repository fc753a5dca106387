#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "cafp/matrix.hpp"
#include "cafp/polynomial.hpp"

namespace cafp {

/// Positive integers d_1..d_n with d_j b_ij = -d_i b_ji. The diagonal matrix
/// D of the D-inner product is diag(1/d_i).
class SkewSymmetrizer {
 public:
  SkewSymmetrizer() = default;
  /// Throws Error(NotSkewSymmetrizable) when an entry is not positive.
  explicit SkewSymmetrizer(std::vector<std::int64_t> d);

  std::size_t size() const noexcept { return d_.size(); }
  std::int64_t operator[](std::size_t i) const { return d_[i]; }
  const std::vector<std::int64_t>& values() const noexcept { return d_; }

  bool symmetrizes(const IntMatrix& b) const;

  friend bool operator==(const SkewSymmetrizer&, const SkewSymmetrizer&) = default;

 private:
  std::vector<std::int64_t> d_;
};

/// Componentwise-minimal skew-symmetrizer per connected component of the
/// nonzero pattern of b; isolated indices get 1.
SkewSymmetrizer skew_symmetrizer(const IntMatrix& b);

/// +1 when all entries are >= 0, -1 when all are <= 0.
/// Throws Error(ZeroVector) or Error(SignCoherenceViolation).
int tropical_sign(const ExponentVector& c);

/// (u, v)_D * scale = scale * sum_i u_i v_i / d_i, exactly.
mpq_class inner_product_D(const ExponentVector& u, const ExponentVector& v, const SkewSymmetrizer& d,
                          std::int64_t scale = 1);

/// inner_product_D asserted to be an integer; throws Error(IntegralityViolation).
std::int64_t integral_inner_product_D(const ExponentVector& u, const ExponentVector& v, const SkewSymmetrizer& d,
                                      std::int64_t scale = 1);

/// Tropical data of the c-vector in one column of a seed.
struct CVectorData {
  ExponentVector c;
  int epsilon = 1;
  ExponentVector c_plus;
  ExponentVector c_hat_plus;  ///< B0 c_plus

  friend bool operator==(const CVectorData&, const CVectorData&) = default;
};

/// A seed of the cluster pattern with principal coefficients at t0: exchange
/// matrix, C- and G-matrices (columns are c- and g-vectors) and, unless
/// disabled, the F-polynomials in y_1..y_n.
class SeedState {
 public:
  SeedState() = default;
  SeedState(IntMatrix b0, SkewSymmetrizer d, IntMatrix b, IntMatrix c, IntMatrix g,
            std::vector<SparsePolynomial> f);

  /// The seed at t0. Throws Error(NotSkewSymmetrizable).
  static SeedState initial(const IntMatrix& b0, bool track_f = true);
  /// Same, with an explicit skew-symmetrizer that must symmetrize b0.
  static SeedState initial(const IntMatrix& b0, const SkewSymmetrizer& d, bool track_f = true);

  std::size_t rank() const noexcept { return b_.rows(); }
  const IntMatrix& b0() const noexcept { return b0_; }
  const SkewSymmetrizer& d() const noexcept { return d_; }
  const IntMatrix& b() const noexcept { return b_; }
  const IntMatrix& c() const noexcept { return c_; }
  const IntMatrix& g() const noexcept { return g_; }
  bool tracks_f() const noexcept { return !f_.empty(); }
  const std::vector<SparsePolynomial>& f() const noexcept { return f_; }
  const SparsePolynomial& f(std::size_t i) const { return f_.at(i); }

  ExponentVector c_vector(std::size_t k) const { return c_.column(k); }
  ExponentVector g_vector(std::size_t k) const { return g_.column(k); }
  CVectorData c_vector_data(std::size_t k) const;

  friend bool operator==(const SeedState&, const SeedState&) = default;

 private:
  IntMatrix b0_;
  SkewSymmetrizer d_;
  IntMatrix b_;
  IntMatrix c_;
  IntMatrix g_;
  std::vector<SparsePolynomial> f_;
};

/// Mutation in direction k (0-based): B by matrix mutation, C by the bottom
/// block of extended-matrix mutation, G by the sign-coherent g-vector
/// recurrence and F_k by the [c]_+ form of the F-polynomial recurrence.
SeedState mutate_seed(const SeedState& s, std::size_t k);

struct CheckResult {
  std::string name;
  bool passed = true;
  std::string detail;
};

struct VerificationReport {
  std::vector<CheckResult> checks;

  bool passed() const;
  const CheckResult* find(const std::string& name) const;
  void add(std::string name, bool passed, std::string detail = {});
};

/// Checks sign-coherence, first duality G B = B0 C, the vector form of the
/// second duality, that d still symmetrizes B, that chat^+ = B0 c^+ is the
/// signed column of G B, and that every F has constant term 1 and
/// nonnegative exponents.
VerificationReport verify_seed(const SeedState& s);

/// f(y) with y_i replaced by the hat variable y_i * prod_j x_j^{b0_ji}, as a
/// Laurent polynomial in the mixed alphabet x_1..x_n, y_1..y_n.
SparsePolynomial hat_substitute(const SparsePolynomial& f, const IntMatrix& b0);

/// x^m as a monomial in the mixed alphabet.
SparsePolynomial x_monomial(const ExponentVector& m);

/// Separation formula x_{i;t} = x^{g_i} F_i(yhat), as a Laurent polynomial in
/// the mixed alphabet. Requires a seed that tracks F.
SparsePolynomial cluster_variable(const SeedState& s, std::size_t i);

/// Smallest x-monomial exponent v with x^v * p free of negative x-powers.
ExponentVector x_denominator(const SparsePolynomial& mixed, std::size_t n);

}  // namespace cafp
