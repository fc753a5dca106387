#pragma once

#include <cstdint>

#include "cafp/error.hpp"

namespace cafp::checked {

inline std::int64_t add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw Error(ErrorKind::Overflow, "64-bit integer addition");
  return r;
}

inline std::int64_t mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw Error(ErrorKind::Overflow, "64-bit integer multiplication");
  return r;
}

inline std::int64_t pos(std::int64_t a) { return a > 0 ? a : 0; }

}  // namespace cafp::checked
