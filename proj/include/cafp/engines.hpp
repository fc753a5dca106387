#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cafp/trace.hpp"

namespace cafp {

enum class Engine { Recurrence, Product, Sum, FockGoncharov };

inline constexpr Engine kAllEngines[] = {Engine::Recurrence, Engine::Product, Engine::Sum, Engine::FockGoncharov};

/// "recurrence", "product", "sum" or "fg".
const char* to_string(Engine e);
/// Inverse of to_string. Throws Error(Parse).
Engine parse_engine(std::string_view name);

struct EngineRun {
  Engine engine = Engine::Recurrence;
  SparsePolynomial f;
  double millis = 0;
  bool ok = false;      ///< false when the engine threw
  std::string error;    ///< the exception text when !ok
};

struct CrossCheckOptions {
  /// 0-based variable; defaults to the last mutation direction.
  std::optional<std::size_t> var;
  /// Cap of the summation engine; defaults to the degree vector of the
  /// recurrence result.
  std::optional<ExponentVector> cap;
  std::vector<Engine> engines{std::begin(kAllEngines), std::end(kAllEngines)};
  /// Run independent engines concurrently.
  bool parallel = false;
};

struct CrossCheckReport {
  std::size_t var = 0;
  ExponentVector cap;
  bool cap_limited = false;  ///< summation dropped nonzero tuples beyond the cap
  std::vector<EngineRun> runs;
  bool agree = false;        ///< every engine ran and all outputs are equal
  std::string detail;        ///< first disagreement, if any

  const EngineRun* find(Engine e) const;
};

/// Runs one engine alone. The recurrence engine needs a trace built with
/// track_f = true; the others ignore the tracked F-polynomials.
SparsePolynomial run_engine(Engine e, const MutationTrace& trace, std::size_t var, const ExponentVector& cap);

/// Builds the trace along `seq` (0-based) and runs the selected engines. The
/// recurrence engine's time includes building its F-tracking trace; the
/// other engines share a trace without F-polynomials.
CrossCheckReport cross_check_engines(const IntMatrix& b0, std::span<const std::size_t> seq,
                                     const CrossCheckOptions& options = {});

}  // namespace cafp
