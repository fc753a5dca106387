#pragma once

#include <cstdint>
#include <random>
#include <span>

#include "cafp/rational_function.hpp"

namespace cafp {

/// Largest prime below 2^62.
inline constexpr std::uint64_t kDefaultPrime = 4611686018427387847ULL;

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p);
std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t p);
std::uint64_t invmod(std::uint64_t a, std::uint64_t p);

/// Value of f at `point` in Z/p. Negative exponents need a nonzero coordinate
/// and a vanishing denominator throws Error(DenominatorVanishes).
std::uint64_t eval_mod_p(const SparsePolynomial& f, std::span<const std::uint64_t> point, std::uint64_t p);
std::uint64_t eval_mod_p(const RationalFunction& f, std::span<const std::uint64_t> point, std::uint64_t p);

/// Schwartz-Zippel comparison at `trials` random points. Points where either
/// side has a vanishing denominator are redrawn.
bool probably_equal(const RationalFunction& a, const RationalFunction& b, std::mt19937_64& rng,
                    int trials = 20, std::uint64_t p = kDefaultPrime);

}  // namespace cafp
