#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "fqspread/error.hpp"
#include "fqspread/field.hpp"

namespace fqs {

// Dense row-major matrix of field elements.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static Matrix identity(const Field& F, std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = F.one();
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  Felt& at(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  Felt at(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::vector<Felt> row(std::size_t i) const {
    return {data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
            data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_)};
  }

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Felt> data_;
};

inline Matrix multiply(const Field& F, const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) throw Error(ErrorCode::DimensionMismatch, "matrix product shape");
  Matrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) {
      Felt acc = F.zero();
      for (std::size_t k = 0; k < a.cols(); ++k) acc = F.add(acc, F.mul(a.at(i, k), b.at(k, j)));
      out.at(i, j) = acc;
    }
  return out;
}

inline Matrix transpose(const Matrix& a) {
  Matrix out(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out.at(j, i) = a.at(i, j);
  return out;
}

// Bareiss fraction-free elimination; pivot is the first nonzero entry below
// the diagonal, each row swap flips the sign.
inline Felt determinant(const Field& F, Matrix m) {
  if (m.rows() != m.cols()) throw Error(ErrorCode::DimensionMismatch, "determinant of non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return F.one();
  bool negate = false;
  Felt prev = F.one();
  for (std::size_t k = 0; k + 1 < n; ++k) {
    std::size_t piv = k;
    while (piv < n && m.at(piv, k).index == 0) ++piv;
    if (piv == n) return F.zero();
    if (piv != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m.at(k, j), m.at(piv, j));
      negate = !negate;
    }
    const Felt inv_prev = F.inv(prev);
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        const Felt t = F.sub(F.mul(m.at(i, j), m.at(k, k)), F.mul(m.at(i, k), m.at(k, j)));
        m.at(i, j) = F.mul(t, inv_prev);
      }
      m.at(i, k) = F.zero();
    }
    prev = m.at(k, k);
  }
  const Felt det = m.at(n - 1, n - 1);
  return negate ? F.neg(det) : det;
}

// Rank of the given rows by Gaussian elimination.
inline std::size_t rank(const Field& F, std::vector<std::vector<Felt>> rows) {
  if (rows.empty()) return 0;
  const std::size_t cols = rows[0].size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
    std::size_t piv = r;
    while (piv < rows.size() && rows[piv][c].index == 0) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[r], rows[piv]);
    const Felt inv = F.inv(rows[r][c]);
    for (std::size_t i = r + 1; i < rows.size(); ++i) {
      if (rows[i][c].index == 0) continue;
      const Felt f = F.mul(rows[i][c], inv);
      for (std::size_t j = c; j < cols; ++j) rows[i][j] = F.sub(rows[i][j], F.mul(f, rows[r][j]));
    }
    ++r;
  }
  return r;
}

inline std::size_t rank(const Field& F, const Matrix& m) {
  std::vector<std::vector<Felt>> rows;
  for (std::size_t i = 0; i < m.rows(); ++i) rows.push_back(m.row(i));
  return rank(F, std::move(rows));
}

}  // namespace fqs
