#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cafp/matrix.hpp"
#include "cafp/polynomial.hpp"
#include "cafp/random.hpp"

namespace cafp {

/// A stored seed (B, C, G) to be checked against the pattern's B0, used for
/// regression fixtures.
struct FixtureSeed {
  IntMatrix b, c, g;
  friend bool operator==(const FixtureSeed&, const FixtureSeed&) = default;
};

/// The input document {n, rows, seq, cap?, seed?}. Directions are 1-based.
struct PatternInput {
  IntMatrix rows;
  std::vector<std::size_t> seq;
  std::optional<ExponentVector> cap;
  std::optional<FixtureSeed> fixture;

  std::size_t n() const noexcept { return rows.rows(); }
  /// The sequence as 0-based directions.
  std::vector<std::size_t> directions() const;

  friend bool operator==(const PatternInput&, const PatternInput&) = default;
};

/// Parses and validates the shape of an input document: square rows, n
/// matching if given, directions in 1..n, cap of length n and nonnegative.
/// Skew-symmetrizability is not checked here. Throws Error(Parse).
PatternInput parse_pattern_input(std::string_view json);
std::string render_pattern_input(const PatternInput& input);

/// Same shape checks as parse_pattern_input, for inputs assembled from flags.
void validate_pattern_input(const PatternInput& input);

/// A matrix given either as JSON rows or as whitespace-separated integers,
/// one row per line. Throws Error(Parse).
IntMatrix parse_matrix_text(std::string_view text);
/// "1,2,1" -> {1,2,1}. Throws Error(Parse).
std::vector<std::int64_t> parse_int_list(std::string_view text);

/// Term list [{"exp":[...],"coef":"..."}] in graded-lex order, coefficients
/// as decimal strings.
std::string render_terms(const SparsePolynomial& p);
/// Inverse of render_terms. Terms must be strictly increasing in graded-lex
/// order with nonzero coefficients. Throws Error(Parse).
SparsePolynomial parse_terms(std::string_view json, std::size_t nvars);

/// Exit statuses shared by the C API and the command line.
enum Status : int {
  kStatusOk = 0,
  kStatusInternal = 1,
  kStatusParse = 2,
  kStatusInvalidMatrix = 3,
  kStatusIdentityViolation = 4,
  kStatusEngineDisagreement = 5,
};

/// Status for an exception escaping a command.
Status status_for(const std::exception& e) noexcept;

struct CommandResult {
  std::string document;  ///< JSON, or a table for text/CSV bench output
  Status status = kStatusOk;
};

CommandResult run_trace(const PatternInput& input);

struct FpolyOptions {
  std::string method = "all";          ///< recurrence|product|sum|fg|all
  std::optional<std::size_t> variable;  ///< 1-based; defaults to the last direction
  bool timing = false;                  ///< include wall times (makes output nondeterministic)
  bool parallel = false;
};
CommandResult run_fpoly(const PatternInput& input, const FpolyOptions& options);

/// Suites along the sequence, plus dualities/sign-coherence on the fixture
/// seed when the input carries one.
CommandResult run_verify(const PatternInput& input, unsigned suites);

struct RandomVerifyOptions {
  std::uint64_t seed = 1;
  std::size_t count = 50;
  RandomPatternOptions patterns;
  unsigned suites = 0;
  unsigned threads = 1;
};
CommandResult run_verify_random(const RandomVerifyOptions& options);

enum class BenchFormat { Text, Csv, Json };

struct BenchCase {
  std::string label;
  PatternInput input;
};

/// Per-engine wall time, term count and coefficient size for each case.
CommandResult run_bench(const std::vector<BenchCase>& cases, BenchFormat format, unsigned repeats = 1);

/// The Kronecker matrix [[0,r],[-r,0]] with the alternating sequence 1,2,1,...
PatternInput kronecker_input(std::int64_t r, std::size_t length);

}  // namespace cafp
