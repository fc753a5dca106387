#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cafp/engines.hpp"
#include "cafp/random.hpp"

namespace cafp {

enum VerifySuite : unsigned {
  kSuiteDualities = 1u << 0,      ///< first/second duality, d symmetrizes B_t, chat^+ = B0 c^+
  kSuiteSignCoherence = 1u << 1,  ///< every C_t column has one sign
  kSuiteEngines = 1u << 2,        ///< four-engine agreement, per-variable product, F constant terms, delta-pairing of E
  kSuiteInvolution = 1u << 3,     ///< double mutation and q-step reversal are identities
  kSuiteTildeC = 1u << 4,         ///< both constructions of tilde-c agree with E and A
  kSuiteAll = (1u << 5) - 1,
};

/// "dualities", "signcoherence", "engines", "involution", "tildec".
const char* suite_name(VerifySuite s);
/// Comma-separated names or "all". Throws Error(Parse).
unsigned parse_suites(std::string_view list);

struct VerifyFailure {
  std::string suite;
  std::string check;
  std::ptrdiff_t seed = -1;  ///< index j of the seed t_j, -1 when not tied to one
  std::string detail;
};

struct VerifyResult {
  std::vector<VerifyFailure> failures;
  std::size_t seeds = 0;   ///< seeds visited
  std::size_t checks = 0;  ///< individual checks run
  bool passed() const noexcept { return failures.empty(); }
};

/// Runs the selected suites at every seed visited along `seq` (0-based).
/// `rng_seed` drives the random monomials of the q-step involution check.
VerifyResult verify_pattern(const IntMatrix& b0, std::span<const std::size_t> seq, unsigned suites,
                            std::uint64_t rng_seed = 0);

/// Dualities and sign-coherence on a seed given directly as (B, C, G) over
/// the initial matrix b0, e.g. a stored fixture. Other suites do not apply.
VerifyResult verify_fixture(const IntMatrix& b0, const IntMatrix& b, const IntMatrix& c, const IntMatrix& g,
                            unsigned suites);

struct BatchCase {
  RandomPattern pattern;
  VerifyResult result;
};

/// `count` patterns drawn from one mt19937_64 seeded with `seed`, verified on
/// up to `threads` threads. Cases are drawn sequentially before any work
/// starts, so the outcome does not depend on the thread count.
std::vector<BatchCase> verify_random(std::uint64_t seed, std::size_t count, const RandomPatternOptions& options,
                                     unsigned suites, unsigned threads = 1);

}  // namespace cafp
