#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "cafp/seed.hpp"

namespace cafp {

struct TraceStep {
  std::size_t direction = 0;  ///< 0-based mutation direction i_j
  CVectorData data;           ///< c-vector of i_j at t_j, i.e. after the step
  ExponentVector g;           ///< g-vector of i_j at t_j
};

/// Data recorded along a mutation sequence t0 -> t1 -> ... -> t_l, together
/// with the exponent tables of the product formula:
///   E[i][j] = (g_{i;t_l}, d_{i_j} c_j)_D   for every variable i,
///   A[k][j] = (chat_k^+, d_{i_j} c_j)_D    for j < k.
class MutationTrace {
 public:
  const IntMatrix& b0() const noexcept { return seeds_.front().b0(); }
  const SkewSymmetrizer& d() const noexcept { return seeds_.front().d(); }
  std::size_t rank() const noexcept { return seeds_.front().rank(); }
  std::size_t length() const noexcept { return steps_.size(); }
  bool empty() const noexcept { return steps_.empty(); }
  bool tracks_f() const noexcept { return seeds_.front().tracks_f(); }

  const std::vector<TraceStep>& steps() const noexcept { return steps_; }
  const TraceStep& step(std::size_t j) const { return steps_.at(j); }
  /// seeds()[j] is the seed at t_j; seeds()[0] is t0.
  const std::vector<SeedState>& seeds() const noexcept { return seeds_; }
  const SeedState& final_seed() const noexcept { return seeds_.back(); }
  const IntMatrix& g_end() const noexcept { return seeds_.back().g(); }
  std::vector<std::size_t> directions() const;

  /// The variable whose F-polynomial the headline formula produces: i_l, or
  /// 0 for the empty sequence.
  std::size_t last_direction() const noexcept { return steps_.empty() ? 0 : steps_.back().direction; }

  std::int64_t e(std::size_t var, std::size_t j) const { return e_.at(var).at(j); }
  std::int64_t a(std::size_t k, std::size_t j) const { return a_.at(k).at(j); }
  const std::vector<std::vector<std::int64_t>>& e_table() const noexcept { return e_; }
  const std::vector<std::vector<std::int64_t>>& a_table() const noexcept { return a_; }

 private:
  friend MutationTrace build_trace(const IntMatrix&, const SkewSymmetrizer&, std::span<const std::size_t>, bool);

  std::vector<TraceStep> steps_;
  std::vector<SeedState> seeds_;
  std::vector<std::vector<std::int64_t>> e_;
  std::vector<std::vector<std::int64_t>> a_;
};

/// Runs mutate_seed along `seq` (0-based directions) and fills in the tables.
/// With track_f = false the F-polynomials are not computed, which keeps the
/// formula engines independent of the recurrence.
MutationTrace build_trace(const IntMatrix& b0, const SkewSymmetrizer& d, std::span<const std::size_t> seq,
                          bool track_f = true);
MutationTrace build_trace(const IntMatrix& b0, std::span<const std::size_t> seq, bool track_f = true);

}  // namespace cafp
