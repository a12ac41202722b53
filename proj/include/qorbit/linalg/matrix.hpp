#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "qorbit/error.hpp"

namespace qorbit {

/// Dense row-major matrix over an exact ring. T must provide a zero default,
/// +, -, *, and is_zero().
template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  Matrix(std::size_t rows, std::size_t cols, const T& fill) : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static Matrix identity(std::size_t n, const T& one) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = one;
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  bool is_zero() const {
    for (const auto& x : data_)
      if (!x.is_zero()) return false;
    return true;
  }

  /// First (row, col) with a nonzero entry, row-major.
  std::optional<std::pair<std::size_t, std::size_t>> first_nonzero() const {
    for (std::size_t k = 0; k < data_.size(); ++k)
      if (!data_[k].is_zero()) return std::make_pair(k / cols_, k % cols_);
    return std::nullopt;
  }

  bool is_diagonal() const {
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j)
        if (i != j && !(*this)(i, j).is_zero()) return false;
    return true;
  }

  bool operator==(const Matrix& o) const { return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_; }

  friend Matrix operator+(const Matrix& a, const Matrix& b) {
    a.check_same_shape(b);
    Matrix out = a;
    for (std::size_t k = 0; k < out.data_.size(); ++k) out.data_[k] = out.data_[k] + b.data_[k];
    return out;
  }

  friend Matrix operator-(const Matrix& a, const Matrix& b) {
    a.check_same_shape(b);
    Matrix out = a;
    for (std::size_t k = 0; k < out.data_.size(); ++k) out.data_[k] = out.data_[k] - b.data_[k];
    return out;
  }

  Matrix operator-() const {
    Matrix out = *this;
    for (auto& x : out.data_) x = -x;
    return out;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) { return multiply(a, b); }

  Matrix transpose() const {
    Matrix out(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j);
    return out;
  }

  T trace() const {
    if (!is_square()) throw DomainError("trace of a non-square matrix");
    T s{};
    for (std::size_t i = 0; i < rows_; ++i) s = s + (*this)(i, i);
    return s;
  }

  /// Applies f to every entry.
  template <class F>
  auto map(F&& f) const -> Matrix<decltype(f(std::declval<const T&>()))> {
    Matrix<decltype(f(std::declval<const T&>()))> out(rows_, cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) out(i, j) = f((*this)(i, j));
    return out;
  }

  void check_same_shape(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw DomainError("matrix shape mismatch");
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

/// Product of matrices with possibly different entry types (e.g. scalars times
/// noncommutative polynomials); zero entries of the left factor are skipped.
template <class A, class B>
auto multiply(const Matrix<A>& a, const Matrix<B>& b) -> Matrix<decltype(std::declval<A>() * std::declval<B>())> {
  using R = decltype(std::declval<A>() * std::declval<B>());
  if (a.cols() != b.rows()) throw DomainError("matrix shape mismatch in product");
  Matrix<R> out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const A& x = a(i, k);
      if (x.is_zero()) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) {
        if (b(k, j).is_zero()) continue;
        out(i, j) = out(i, j) + x * b(k, j);
      }
    }
  return out;
}

/// Kronecker product: (A⊗B)_{(i,k),(j,l)} = A_ij B_kl, flattened as (i·p + k, j·s + l).
template <class A, class B>
auto kron(const Matrix<A>& a, const Matrix<B>& b) -> Matrix<decltype(std::declval<A>() * std::declval<B>())> {
  using R = decltype(std::declval<A>() * std::declval<B>());
  Matrix<R> out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (a(i, j).is_zero()) continue;
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l)
          if (!b(k, l).is_zero()) out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
    }
  return out;
}

/// Transpose in the first tensor leg of an n²×n² matrix: (i,k),(j,l) ↦ (j,k),(i,l).
template <class T>
Matrix<T> partial_transpose_first(const Matrix<T>& m, std::size_t n) {
  if (m.rows() != n * n || m.cols() != n * n) throw DomainError("partial transpose needs an n^2 x n^2 matrix");
  Matrix<T> out(n * n, n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t l = 0; l < n; ++l) out(j * n + k, i * n + l) = m(i * n + k, j * n + l);
  return out;
}

/// Gauss-Jordan inverse over a field; nullopt when singular.
template <class T>
std::optional<Matrix<T>> inverse(const Matrix<T>& m, const T& one) {
  if (!m.is_square()) throw DomainError("inverse of a non-square matrix");
  std::size_t n = m.rows();
  Matrix<T> a = m, inv = Matrix<T>::identity(n, one);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && a(piv, col).is_zero()) ++piv;
    if (piv == n) return std::nullopt;
    if (piv != col)
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(a(piv, j), a(col, j));
        std::swap(inv(piv, j), inv(col, j));
      }
    T p = one / a(col, col);
    for (std::size_t j = 0; j < n; ++j) {
      if (!a(col, j).is_zero()) a(col, j) = a(col, j) * p;
      if (!inv(col, j).is_zero()) inv(col, j) = inv(col, j) * p;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || a(r, col).is_zero()) continue;
      T f = a(r, col);
      for (std::size_t j = 0; j < n; ++j) {
        if (!a(col, j).is_zero()) a(r, j) = a(r, j) - f * a(col, j);
        if (!inv(col, j).is_zero()) inv(r, j) = inv(r, j) - f * inv(col, j);
      }
    }
  }
  return inv;
}

/// Rank over a field by row reduction.
template <class T>
std::size_t rank(Matrix<T> a) {
  std::size_t r = 0;
  for (std::size_t col = 0; col < a.cols() && r < a.rows(); ++col) {
    std::size_t piv = r;
    while (piv < a.rows() && a(piv, col).is_zero()) ++piv;
    if (piv == a.rows()) continue;
    if (piv != r)
      for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a(piv, j), a(r, j));
    for (std::size_t i = r + 1; i < a.rows(); ++i) {
      if (a(i, col).is_zero()) continue;
      T f = a(i, col) / a(r, col);
      for (std::size_t j = col; j < a.cols(); ++j)
        if (!a(r, j).is_zero()) a(i, j) = a(i, j) - f * a(r, j);
    }
    ++r;
  }
  return r;
}

}  // namespace qorbit
