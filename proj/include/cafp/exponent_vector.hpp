#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <numeric>
#include <ostream>

#include <boost/container/small_vector.hpp>

namespace cafp {

using Exponent = std::int64_t;

/// Integer vector of fixed length n. Used for monomial exponents (possibly
/// negative), c-/g-vectors and elements of the tropical semifield.
class ExponentVector {
 public:
  using Storage = boost::container::small_vector<Exponent, 8>;
  using const_iterator = Storage::const_iterator;
  using iterator = Storage::iterator;

  ExponentVector() = default;
  explicit ExponentVector(std::size_t n) : e_(n, 0) {}
  ExponentVector(std::initializer_list<Exponent> il) : e_(il) {}
  template <class It>
  ExponentVector(It first, It last) : e_(first, last) {}

  static ExponentVector unit(std::size_t n, std::size_t i) {
    ExponentVector v(n);
    v[i] = 1;
    return v;
  }

  std::size_t size() const noexcept { return e_.size(); }
  bool empty() const noexcept { return e_.empty(); }
  Exponent operator[](std::size_t i) const { return e_[i]; }
  Exponent& operator[](std::size_t i) { return e_[i]; }
  const Exponent* data() const noexcept { return e_.data(); }
  const_iterator begin() const noexcept { return e_.begin(); }
  const_iterator end() const noexcept { return e_.end(); }
  iterator begin() noexcept { return e_.begin(); }
  iterator end() noexcept { return e_.end(); }

  bool is_zero() const noexcept {
    return std::all_of(e_.begin(), e_.end(), [](Exponent x) { return x == 0; });
  }
  bool is_nonnegative() const noexcept {
    return std::all_of(e_.begin(), e_.end(), [](Exponent x) { return x >= 0; });
  }
  Exponent total_degree() const noexcept { return std::accumulate(e_.begin(), e_.end(), Exponent{0}); }

  /// [v]_+ componentwise.
  ExponentVector positive_part() const {
    ExponentVector r(*this);
    for (auto& x : r.e_) x = std::max<Exponent>(x, 0);
    return r;
  }
  /// [-v]_+ componentwise.
  ExponentVector negative_part() const { return (-*this).positive_part(); }

  /// Componentwise a <= b.
  bool dominated_by(const ExponentVector& o) const {
    for (std::size_t i = 0; i < e_.size(); ++i)
      if (e_[i] > o.e_[i]) return false;
    return true;
  }

  ExponentVector& operator+=(const ExponentVector& o) {
    for (std::size_t i = 0; i < e_.size(); ++i) e_[i] += o.e_[i];
    return *this;
  }
  ExponentVector& operator-=(const ExponentVector& o) {
    for (std::size_t i = 0; i < e_.size(); ++i) e_[i] -= o.e_[i];
    return *this;
  }
  ExponentVector& operator*=(Exponent s) {
    for (auto& x : e_) x *= s;
    return *this;
  }
  friend ExponentVector operator+(ExponentVector a, const ExponentVector& b) { return a += b; }
  friend ExponentVector operator-(ExponentVector a, const ExponentVector& b) { return a -= b; }
  friend ExponentVector operator*(Exponent s, ExponentVector a) { return a *= s; }
  friend ExponentVector operator-(ExponentVector a) { return a *= -1; }

  friend bool operator==(const ExponentVector& a, const ExponentVector& b) { return a.e_ == b.e_; }
  friend bool operator!=(const ExponentVector& a, const ExponentVector& b) { return !(a == b); }

  /// Plain lexicographic comparison, first coordinate most significant.
  friend bool operator<(const ExponentVector& a, const ExponentVector& b) {
    return std::lexicographical_compare(a.e_.begin(), a.e_.end(), b.e_.begin(), b.e_.end());
  }

  friend std::ostream& operator<<(std::ostream& os, const ExponentVector& v) {
    os << '(';
    for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
    return os << ')';
  }

 private:
  Storage e_;
};

/// Graded-lex order: total degree first, then lexicographic.
struct GradedLexLess {
  bool operator()(const ExponentVector& a, const ExponentVector& b) const {
    const Exponent da = a.total_degree();
    const Exponent db = b.total_degree();
    if (da != db) return da < db;
    return a < b;
  }
};

struct ExponentVectorHash {
  std::size_t operator()(const ExponentVector& v) const noexcept {
    std::uint64_t h = 0x9e3779b97f4a7c15ULL;
    for (Exponent x : v) {
      h ^= static_cast<std::uint64_t>(x) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return static_cast<std::size_t>(h);
  }
};

}  // namespace cafp
