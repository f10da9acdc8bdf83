#ifndef HYPERSCHEME_LINALG_HPP_
#define HYPERSCHEME_LINALG_HPP_

// Small dense containers shared by the exact (Rational) and floating-point
// code paths. Sizes in this library are desk scale, so everything is a flat
// row-major std::vector.

#include <algorithm>
#include <cassert>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <type_traits>
#include <vector>

#include "rational.hpp"

namespace hyperscheme {

/// Absolute tolerance for floating-point equality tests.
inline constexpr double kEqualityTol = 1e-9;
/// Floor below which a minimum eigenvalue counts as negative.
inline constexpr double kEigenFloor = -1e-8;

inline bool approx_equal(double a, double b, double tol) { return std::abs(a - b) <= tol; }
inline bool approx_equal(const Rational& a, const Rational& b, double /*tol*/) { return a == b; }

inline bool below(double a, double floor_tol) { return a < -floor_tol; }
inline bool below(const Rational& a, double /*floor_tol*/) { return a < 0; }

inline double abs_diff(double a, double b) { return std::abs(a - b); }
inline double abs_diff(const Rational& a, const Rational& b) {
  return to_double(a > b ? Rational(a - b) : Rational(b - a));
}

template <typename T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, T fill = T(0))
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const T& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  const std::vector<T>& data() const { return data_; }

  Matrix operator*(const Matrix& rhs) const {
    if (cols_ != rhs.rows_) throw std::invalid_argument("matrix shape mismatch");
    Matrix out(rows_, rhs.cols_);
    for (std::size_t i = 0; i < rows_; ++i) {
      for (std::size_t k = 0; k < cols_; ++k) {
        const T& a = (*this)(i, k);
        if (a == T(0)) continue;
        for (std::size_t j = 0; j < rhs.cols_; ++j) out(i, j) += a * rhs(k, j);
      }
    }
    return out;
  }

  Matrix& operator+=(const Matrix& rhs) {
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += rhs.data_[i];
    return *this;
  }

  Matrix scaled(const T& s) const {
    Matrix out = *this;
    for (auto& v : out.data_) v *= s;
    return out;
  }

  Matrix transpose() const {
    Matrix out(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j);
    return out;
  }

  bool operator==(const Matrix& rhs) const {
    return rows_ == rhs.rows_ && cols_ == rhs.cols_ && data_ == rhs.data_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

/// Kronecker product, row-major over (i1, i2) -> i1 * rows(b) + i2.
template <typename T>
Matrix<T> kron(const Matrix<T>& a, const Matrix<T>& b) {
  Matrix<T> out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i1 = 0; i1 < a.rows(); ++i1)
    for (std::size_t j1 = 0; j1 < a.cols(); ++j1) {
      if (a(i1, j1) == T(0)) continue;
      for (std::size_t i2 = 0; i2 < b.rows(); ++i2)
        for (std::size_t j2 = 0; j2 < b.cols(); ++j2)
          out(i1 * b.rows() + i2, j1 * b.cols() + j2) = a(i1, j1) * b(i2, j2);
    }
  return out;
}

template <typename T>
double max_abs_diff(const Matrix<T>& a, const Matrix<T>& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) worst = std::max(worst, abs_diff(a(i, j), b(i, j)));
  return worst;
}

/// Rank-3 tensor t(i, j, k) over an n x n x n cube.
template <typename T>
class Tensor3 {
 public:
  Tensor3() = default;
  explicit Tensor3(std::size_t n, T fill = T(0)) : n_(n), data_(n * n * n, fill) {}

  std::size_t size() const { return n_; }
  T& operator()(std::size_t i, std::size_t j, std::size_t k) { return data_[(i * n_ + j) * n_ + k]; }
  const T& operator()(std::size_t i, std::size_t j, std::size_t k) const {
    return data_[(i * n_ + j) * n_ + k];
  }
  const std::vector<T>& data() const { return data_; }

  bool operator==(const Tensor3& rhs) const { return n_ == rhs.n_ && data_ == rhs.data_; }

 private:
  std::size_t n_ = 0;
  std::vector<T> data_;
};

template <typename To, typename From>
To convert_scalar(const From& v) {
  if constexpr (std::is_same_v<To, double>) {
    return to_double(v);
  } else {
    return To(v);
  }
}

template <typename To, typename From>
Matrix<To> convert(const Matrix<From>& m) {
  Matrix<To> out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = convert_scalar<To>(m(i, j));
  return out;
}

template <typename To, typename From>
Tensor3<To> convert(const Tensor3<From>& t) {
  const std::size_t n = t.size();
  Tensor3<To> out(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) out(i, j, k) = convert_scalar<To>(t(i, j, k));
  return out;
}

template <typename To, typename From>
std::vector<To> convert(const std::vector<From>& v) {
  std::vector<To> out;
  out.reserve(v.size());
  for (const auto& x : v) out.push_back(convert_scalar<To>(x));
  return out;
}

}  // namespace hyperscheme

#endif  // HYPERSCHEME_LINALG_HPP_
