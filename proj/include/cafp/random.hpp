#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "cafp/matrix.hpp"

namespace cafp {

struct RandomPatternOptions {
  std::size_t min_n = 2;
  std::size_t max_n = 4;
  std::int64_t max_entry = 3;  ///< bound on |b_ij|
  std::size_t max_len = 8;
  /// Probability that a direction repeats the previous one.
  double repeat_probability = 0.2;
  /// Patterns with max_f_volume above this are redrawn; 0 disables the bound.
  std::uint64_t max_volume = 0;
};

struct RandomPattern {
  IntMatrix b0;
  std::vector<std::size_t> seq;  ///< 0-based
};

/// Degree vectors of F_{1;t}..F_{n;t} (columns) at the end of `seq`, by the
/// max-plus image of the F-polynomial recurrence. Exact, because
/// F-polynomials have positive coefficients.
IntMatrix f_degree_vectors(const IntMatrix& b0, std::span<const std::size_t> seq);

/// Largest prod_i (deg_i + 1) over the F-polynomials of every seed visited
/// along `seq`; bounds their term counts. Saturates at UINT64_MAX.
std::uint64_t max_f_volume(const IntMatrix& b0, std::span<const std::size_t> seq);

/// A skew-symmetrizable matrix with entries bounded by max_entry: symmetrizer
/// values are drawn from {1,2,3} and each pair (b_ij, b_ji) uniformly from the
/// admissible ones, zero included. The sequence length is uniform in
/// [0, max_len]. With max_volume set, draws are repeated until the pattern
/// satisfies it.
RandomPattern random_pattern(std::mt19937_64& rng, const RandomPatternOptions& options = {});

}  // namespace cafp
