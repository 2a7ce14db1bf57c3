#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "gbdual/errors.hpp"
#include "gbdual/numeric.hpp"

namespace gbdual {

/// Dense row-major matrix over an exact scalar type.
///
/// `T` must be constructible from an `int` (0 and 1 are used as the additive
/// and multiplicative identities) and support the ring operators. The
/// elimination routines further down additionally need division, i.e. `T`
/// must be a field (Rational, Cyclotomic).
template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, T(0)) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t k = 0; k < n; ++k) m(k, k) = T(1);
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return data_.empty(); }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<T> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
  std::span<const T> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }

  /// Row-major flattening; the inverse of `fromFlat`.
  const std::vector<T>& flat() const { return data_; }

  static Matrix fromFlat(std::size_t rows, std::size_t cols, std::vector<T> values) {
    if (values.size() != rows * cols) throw ValidationError("flat matrix data has wrong length");
    Matrix m;
    m.rows_ = rows;
    m.cols_ = cols;
    m.data_ = std::move(values);
    return m;
  }

  std::vector<T> column(std::size_t j) const {
    std::vector<T> out;
    out.reserve(rows_);
    for (std::size_t i = 0; i < rows_; ++i) out.push_back((*this)(i, j));
    return out;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) return false;
    for (std::size_t k = 0; k < a.data_.size(); ++k)
      if (!(a.data_[k] == b.data_[k])) return false;
    return true;
  }

  Matrix& operator+=(const Matrix& o) {
    requireSameShape(o);
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
    return *this;
  }
  Matrix& operator-=(const Matrix& o) {
    requireSameShape(o);
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
    return *this;
  }
  Matrix& operator*=(const T& s) {
    for (auto& x : data_) x *= s;
    return *this;
  }

  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend Matrix operator*(Matrix a, const T& s) { return a *= s; }
  friend Matrix operator*(const T& s, Matrix a) { return a *= s; }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw ValidationError("matrix product shape mismatch");
    Matrix out(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const T& aik = a(i, k);
        if (isZero(aik)) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) {
          const T& bkj = b(k, j);
          if (isZero(bkj)) continue;
          out(i, j) += aik * bkj;
        }
      }
    return out;
  }

  bool isZeroMatrix() const {
    return std::all_of(data_.begin(), data_.end(), [](const T& x) { return isZero(x); });
  }

 private:
  void requireSameShape(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw ValidationError("matrix shape mismatch");
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

template <class T>
Matrix<T> transpose(const Matrix<T>& a) {
  Matrix<T> out(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(j, i) = a(i, j);
  return out;
}

/// Conjugate transpose.
template <class T>
Matrix<T> adjoint(const Matrix<T>& a) {
  Matrix<T> out(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(j, i) = conjugate(a(i, j));
  return out;
}

/// Kronecker product; the left factor indexes the most significant digit.
template <class T>
Matrix<T> kron(const Matrix<T>& a, const Matrix<T>& b) {
  Matrix<T> out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const T& aij = a(i, j);
      if (isZero(aij)) continue;
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l) {
          const T& bkl = b(k, l);
          if (isZero(bkl)) continue;
          out(i * b.rows() + k, j * b.cols() + l) = aij * bkl;
        }
    }
  return out;
}

template <class T>
T trace(const Matrix<T>& a) {
  T out(0);
  for (std::size_t k = 0; k < std::min(a.rows(), a.cols()); ++k) out += a(k, k);
  return out;
}

/// Reduced row-echelon basis of a subspace of T^n, grown one vector at a time.
///
/// Rows are kept fully reduced and sorted by pivot, so two instances span the
/// same subspace exactly when their rows coincide.
template <class T>
class EchelonBasis {
 public:
  explicit EchelonBasis(std::size_t ambientDim) : dim_(ambientDim) {}

  std::size_t ambientDimension() const { return dim_; }
  std::size_t rank() const { return rows_.size(); }
  const std::vector<std::vector<T>>& rows() const { return rows_; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }

  /// Returns true when `v` was independent of the current rows.
  bool insert(std::vector<T> v) {
    if (v.size() != dim_) throw ValidationError("echelon insert: wrong vector length");
    reduce(v);
    auto lead = std::find_if(v.begin(), v.end(), [](const T& x) { return !isZero(x); });
    if (lead == v.end()) return false;
    const std::size_t p = static_cast<std::size_t>(lead - v.begin());
    const T inv = T(1) / v[p];
    for (std::size_t k = p; k < dim_; ++k)
      if (!isZero(v[k])) v[k] *= inv;
    for (auto& row : rows_) {
      if (isZero(row[p])) continue;
      const T factor = row[p];
      for (std::size_t k = p; k < dim_; ++k)
        if (!isZero(v[k])) row[k] -= factor * v[k];
    }
    auto pos = std::lower_bound(pivots_.begin(), pivots_.end(), p);
    const auto offset = pos - pivots_.begin();
    pivots_.insert(pos, p);
    rows_.insert(rows_.begin() + offset, std::move(v));
    return true;
  }

  bool contains(std::vector<T> v) const {
    reduce(v);
    return std::all_of(v.begin(), v.end(), [](const T& x) { return isZero(x); });
  }

  /// Coordinates w.r.t. the rows, or nullopt when `v` is outside the span.
  std::optional<std::vector<T>> coordinates(const std::vector<T>& v) const {
    if (v.size() != dim_) throw ValidationError("echelon coordinates: wrong vector length");
    std::vector<T> coords;
    coords.reserve(rows_.size());
    for (std::size_t k = 0; k < rows_.size(); ++k) coords.push_back(v[pivots_[k]]);
    std::vector<T> rebuilt(dim_, T(0));
    for (std::size_t k = 0; k < rows_.size(); ++k) {
      if (isZero(coords[k])) continue;
      for (std::size_t j = 0; j < dim_; ++j)
        if (!isZero(rows_[k][j])) rebuilt[j] += coords[k] * rows_[k][j];
    }
    for (std::size_t j = 0; j < dim_; ++j)
      if (!(rebuilt[j] == v[j])) return std::nullopt;
    return coords;
  }

  friend bool operator==(const EchelonBasis& a, const EchelonBasis& b) {
    if (a.dim_ != b.dim_ || a.pivots_ != b.pivots_) return false;
    for (std::size_t k = 0; k < a.rows_.size(); ++k)
      for (std::size_t j = 0; j < a.dim_; ++j)
        if (!(a.rows_[k][j] == b.rows_[k][j])) return false;
    return true;
  }

 private:
  void reduce(std::vector<T>& v) const {
    for (std::size_t k = 0; k < rows_.size(); ++k) {
      const std::size_t p = pivots_[k];
      if (isZero(v[p])) continue;
      const T factor = v[p];
      for (std::size_t j = p; j < dim_; ++j)
        if (!isZero(rows_[k][j])) v[j] -= factor * rows_[k][j];
    }
  }

  std::size_t dim_;
  std::vector<std::vector<T>> rows_;
  std::vector<std::size_t> pivots_;
};

/// In-place reduced row echelon form; returns the pivot columns.
template <class T>
std::vector<std::size_t> rowReduce(Matrix<T>& a) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < a.cols() && row < a.rows(); ++col) {
    std::size_t sel = row;
    while (sel < a.rows() && isZero(a(sel, col))) ++sel;
    if (sel == a.rows()) continue;
    if (sel != row)
      for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a(sel, j), a(row, j));
    const T inv = T(1) / a(row, col);
    for (std::size_t j = col; j < a.cols(); ++j)
      if (!isZero(a(row, j))) a(row, j) *= inv;
    for (std::size_t i = 0; i < a.rows(); ++i) {
      if (i == row || isZero(a(i, col))) continue;
      const T factor = a(i, col);
      for (std::size_t j = col; j < a.cols(); ++j)
        if (!isZero(a(row, j))) a(i, j) -= factor * a(row, j);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

template <class T>
std::size_t rank(Matrix<T> a) {
  return rowReduce(a).size();
}

/// Basis of {x : a x = 0}, one vector per free column, in column order.
template <class T>
std::vector<std::vector<T>> nullspace(Matrix<T> a) {
  const auto pivots = rowReduce(a);
  std::vector<bool> isPivot(a.cols(), false);
  for (auto p : pivots) isPivot[p] = true;
  std::vector<std::vector<T>> basis;
  for (std::size_t free = 0; free < a.cols(); ++free) {
    if (isPivot[free]) continue;
    std::vector<T> v(a.cols(), T(0));
    v[free] = T(1);
    for (std::size_t k = 0; k < pivots.size(); ++k) v[pivots[k]] = -a(k, free);
    basis.push_back(std::move(v));
  }
  return basis;
}

template <class T>
T determinant(Matrix<T> a) {
  if (a.rows() != a.cols()) throw ValidationError("determinant of a non-square matrix");
  T det(1);
  const std::size_t n = a.rows();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t sel = col;
    while (sel < n && isZero(a(sel, col))) ++sel;
    if (sel == n) return T(0);
    if (sel != col) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(sel, j), a(col, j));
      det = -det;
    }
    det *= a(col, col);
    const T inv = T(1) / a(col, col);
    for (std::size_t i = col + 1; i < n; ++i) {
      if (isZero(a(i, col))) continue;
      const T factor = a(i, col) * inv;
      for (std::size_t j = col; j < n; ++j) a(i, j) -= factor * a(col, j);
    }
  }
  return det;
}

template <class T>
std::optional<Matrix<T>> inverse(const Matrix<T>& a) {
  if (a.rows() != a.cols()) throw ValidationError("inverse of a non-square matrix");
  const std::size_t n = a.rows();
  Matrix<T> aug(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = a(i, j);
    aug(i, n + i) = T(1);
  }
  const auto pivots = rowReduce(aug);
  if (pivots.size() < n || pivots[n - 1] != n - 1) return std::nullopt;
  Matrix<T> out(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out(i, j) = aug(i, n + j);
  return out;
}

}  // namespace gbdual
