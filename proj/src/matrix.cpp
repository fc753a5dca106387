#include "cafp/matrix.hpp"

#include "cafp/error.hpp"
#include "checked.hpp"

namespace cafp {

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<std::int64_t>> rows) {
  std::vector<std::vector<std::int64_t>> v;
  for (const auto& r : rows) v.emplace_back(r);
  *this = from_rows(v);
}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<std::vector<std::int64_t>>& rows) {
  const std::size_t cols = rows.empty() ? 0 : rows.front().size();
  IntMatrix m(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) throw Error(ErrorKind::LengthMismatch, "ragged matrix rows");
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

ExponentVector IntMatrix::column(std::size_t j) const {
  ExponentVector v(rows_);
  for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
  return v;
}

ExponentVector IntMatrix::row(std::size_t i) const {
  ExponentVector v(cols_);
  for (std::size_t j = 0; j < cols_; ++j) v[j] = (*this)(i, j);
  return v;
}

void IntMatrix::set_column(std::size_t j, const ExponentVector& v) {
  if (v.size() != rows_) throw Error(ErrorKind::LengthMismatch, "column length");
  for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = v[i];
}

std::vector<std::vector<std::int64_t>> IntMatrix::to_rows() const {
  std::vector<std::vector<std::int64_t>> out(rows_, std::vector<std::int64_t>(cols_));
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out[i][j] = (*this)(i, j);
  return out;
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

ExponentVector IntMatrix::apply(const ExponentVector& v) const {
  if (v.size() != cols_) throw Error(ErrorKind::LengthMismatch, "matrix-vector product");
  ExponentVector r(rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    std::int64_t s = 0;
    for (std::size_t j = 0; j < cols_; ++j) s = checked::add(s, checked::mul((*this)(i, j), v[j]));
    r[i] = s;
  }
  return r;
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols_ != b.rows_) throw Error(ErrorKind::LengthMismatch, "matrix product");
  IntMatrix r(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t j = 0; j < b.cols_; ++j) {
      std::int64_t s = 0;
      for (std::size_t k = 0; k < a.cols_; ++k) s = checked::add(s, checked::mul(a(i, k), b(k, j)));
      r(i, j) = s;
    }
  return r;
}

IntMatrix operator-(const IntMatrix& a) {
  IntMatrix r = a;
  for (auto& x : r.a_) x = -x;
  return r;
}

std::ostream& operator<<(std::ostream& os, const IntMatrix& m) {
  os << '[';
  for (std::size_t i = 0; i < m.rows_; ++i) {
    os << (i ? ",[" : "[");
    for (std::size_t j = 0; j < m.cols_; ++j) os << (j ? "," : "") << m(i, j);
    os << ']';
  }
  return os << ']';
}

IntMatrix mutate_matrix(const IntMatrix& b, std::size_t k) {
  if (k >= b.cols() || b.rows() < b.cols())
    throw Error(ErrorKind::IndexOutOfRange, "mutation direction " + std::to_string(k + 1));
  IntMatrix r(b.rows(), b.cols());
  for (std::size_t i = 0; i < b.rows(); ++i) {
    for (std::size_t j = 0; j < b.cols(); ++j) {
      if (i == k || j == k) {
        r(i, j) = -b(i, j);
      } else {
        const std::int64_t bik = b(i, k), bkj = b(k, j);
        r(i, j) = checked::add(b(i, j), checked::add(checked::mul(bik, checked::pos(bkj)),
                                                     checked::mul(checked::pos(-bik), bkj)));
      }
    }
  }
  return r;
}

}  // namespace cafp
