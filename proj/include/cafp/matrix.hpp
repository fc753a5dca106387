#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <ostream>
#include <vector>

#include "cafp/exponent_vector.hpp"

namespace cafp {

/// Dense row-major integer matrix. Arithmetic is overflow-checked and throws
/// Error(Overflow) instead of wrapping.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols, 0) {}
  IntMatrix(std::initializer_list<std::initializer_list<std::int64_t>> rows);

  static IntMatrix identity(std::size_t n);
  /// Throws Error(LengthMismatch) on ragged input.
  static IntMatrix from_rows(const std::vector<std::vector<std::int64_t>>& rows);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }

  std::int64_t operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }
  std::int64_t& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }

  ExponentVector column(std::size_t j) const;
  ExponentVector row(std::size_t i) const;
  void set_column(std::size_t j, const ExponentVector& v);
  std::vector<std::vector<std::int64_t>> to_rows() const;

  IntMatrix transpose() const;
  /// M v.
  ExponentVector apply(const ExponentVector& v) const;

  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
  friend IntMatrix operator-(const IntMatrix& a);
  friend bool operator==(const IntMatrix& a, const IntMatrix& b) = default;

  friend std::ostream& operator<<(std::ostream& os, const IntMatrix& m);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<std::int64_t> a_;
};

/// Matrix mutation in direction k (0-based). Works for the n x n exchange
/// matrix as well as for a 2n x n extended matrix: only columns index k.
IntMatrix mutate_matrix(const IntMatrix& b, std::size_t k);

}  // namespace cafp
