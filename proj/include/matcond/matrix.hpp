#pragma once

// Dense column-major matrices over double or std::complex<double>.
//
// Entry (i, j) lives at data()[i + j * rows()], which makes vec() a plain
// copy of the storage.  The scalar type is part of the matrix type, so the
// real/complex tag is always explicit; to_complex() promotes losslessly.

#include <algorithm>
#include <cmath>
#include <complex>
#include <concepts>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "matcond/error.hpp"

namespace matcond {

using cplx = std::complex<double>;

template <class T>
concept Scalar = std::same_as<T, double> || std::same_as<T, cplx>;

template <class T>
inline constexpr bool is_complex_v = std::same_as<T, cplx>;

inline double abs2(double x) noexcept { return x * x; }
inline double abs2(cplx x) noexcept { return x.real() * x.real() + x.imag() * x.imag(); }
inline double conj_if(double x) noexcept { return x; }
inline cplx conj_if(cplx x) noexcept { return std::conj(x); }
inline double real_of(double x) noexcept { return x; }
inline double real_of(cplx x) noexcept { return x.real(); }

template <Scalar T>
class Matrix {
 public:
  using value_type = T;

  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, T fill = T{})
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  /// Row-wise literal: Matrix<double>{{1, 2}, {3, 4}} is [[1,2],[3,4]].
  Matrix(std::initializer_list<std::initializer_list<T>> rows_list) {
    rows_ = rows_list.size();
    cols_ = rows_ == 0 ? 0 : rows_list.begin()->size();
    data_.assign(rows_ * cols_, T{});
    std::size_t i = 0;
    for (const auto& row : rows_list) {
      if (row.size() != cols_) throw DimensionError("ragged matrix literal");
      std::size_t j = 0;
      for (const T& v : row) (*this)(i, j++) = v;
      ++i;
    }
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T{1};
    return m;
  }

  static Matrix diagonal(std::span<const T> d) {
    Matrix m(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return m;
  }
  static Matrix diagonal(std::initializer_list<T> d) {
    return diagonal(std::span<const T>(d.begin(), d.size()));
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t size() const noexcept { return data_.size(); }
  bool empty() const noexcept { return data_.empty(); }
  bool is_square() const noexcept { return rows_ == cols_; }

  T& operator()(std::size_t i, std::size_t j) noexcept { return data_[i + j * rows_]; }
  const T& operator()(std::size_t i, std::size_t j) const noexcept {
    return data_[i + j * rows_];
  }

  std::span<T> data() noexcept { return data_; }
  std::span<const T> data() const noexcept { return data_; }
  std::span<T> col(std::size_t j) noexcept { return {data_.data() + j * rows_, rows_}; }
  std::span<const T> col(std::size_t j) const noexcept {
    return {data_.data() + j * rows_, rows_};
  }

  Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
    if (r0 + nr > rows_ || c0 + nc > cols_) throw DimensionError("block out of range");
    Matrix out(nr, nc);
    for (std::size_t j = 0; j < nc; ++j)
      std::copy_n(&(*this)(r0, c0 + j), nr, &out(0, j));
    return out;
  }

  void set_block(std::size_t r0, std::size_t c0, const Matrix& src) {
    if (r0 + src.rows_ > rows_ || c0 + src.cols_ > cols_)
      throw DimensionError("set_block out of range");
    for (std::size_t j = 0; j < src.cols_; ++j)
      std::copy_n(&src(0, j), src.rows_, &(*this)(r0, c0 + j));
  }

  Matrix& operator+=(const Matrix& o) {
    require_same_shape(o, "+=");
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
    return *this;
  }
  Matrix& operator-=(const Matrix& o) {
    require_same_shape(o, "-=");
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
    return *this;
  }
  Matrix& operator*=(T s) noexcept {
    for (T& v : data_) v *= s;
    return *this;
  }

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  void require_same_shape(const Matrix& o, const char* op) const {
    if (rows_ != o.rows_ || cols_ != o.cols_)
      throw DimensionError(std::string("shape mismatch in ") + op);
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using RMatrix = Matrix<double>;
using CMatrix = Matrix<cplx>;

template <Scalar T>
Matrix<T> operator+(Matrix<T> a, const Matrix<T>& b) {
  a += b;
  return a;
}
template <Scalar T>
Matrix<T> operator-(Matrix<T> a, const Matrix<T>& b) {
  a -= b;
  return a;
}
template <Scalar T>
Matrix<T> operator-(Matrix<T> a) {
  a *= T{-1};
  return a;
}
template <Scalar T>
Matrix<T> operator*(T s, Matrix<T> a) {
  a *= s;
  return a;
}
template <Scalar T>
Matrix<T> operator*(Matrix<T> a, T s) {
  a *= s;
  return a;
}

/// Matrix product through the active kernel table.
template <Scalar T>
Matrix<T> operator*(const Matrix<T>& a, const Matrix<T>& b);

/// c = a * b (accumulate == false) or c += a * b, without allocating.
template <Scalar T>
void multiply_into(const Matrix<T>& a, const Matrix<T>& b, Matrix<T>& c,
                   bool accumulate = false);

template <Scalar T>
std::vector<T> matvec(const Matrix<T>& a, std::span<const T> x);

template <Scalar T>
Matrix<T> transpose(const Matrix<T>& a) {
  Matrix<T> t(a.cols(), a.rows());
  for (std::size_t j = 0; j < a.cols(); ++j)
    for (std::size_t i = 0; i < a.rows(); ++i) t(j, i) = a(i, j);
  return t;
}

/// Conjugate transpose; plain transpose for real matrices.
template <Scalar T>
Matrix<T> adjoint_t(const Matrix<T>& a) {
  Matrix<T> t(a.cols(), a.rows());
  for (std::size_t j = 0; j < a.cols(); ++j)
    for (std::size_t i = 0; i < a.rows(); ++i) t(j, i) = conj_if(a(i, j));
  return t;
}

inline CMatrix to_complex(const RMatrix& a) {
  CMatrix c(a.rows(), a.cols());
  for (std::size_t k = 0; k < a.size(); ++k) c.data()[k] = a.data()[k];
  return c;
}
inline const CMatrix& to_complex(const CMatrix& a) { return a; }

inline RMatrix real_part(const CMatrix& a) {
  RMatrix r(a.rows(), a.cols());
  for (std::size_t k = 0; k < a.size(); ++k) r.data()[k] = a.data()[k].real();
  return r;
}
inline RMatrix imag_part(const CMatrix& a) {
  RMatrix r(a.rows(), a.cols());
  for (std::size_t k = 0; k < a.size(); ++k) r.data()[k] = a.data()[k].imag();
  return r;
}

/// Converts a complex matrix to T; for T = double the imaginary part is dropped.
template <Scalar T>
Matrix<T> from_complex(const CMatrix& a) {
  if constexpr (is_complex_v<T>)
    return a;
  else
    return real_part(a);
}

template <Scalar T>
double frobenius_norm(const Matrix<T>& a) noexcept {
  // Scaled accumulation avoids overflow for the large Kronecker forms.
  double scale = 0.0, ssq = 1.0;
  for (const T& v : a.data()) {
    for (double c : {real_of(v), is_complex_v<T> ? std::imag(cplx(v)) : 0.0}) {
      if (c == 0.0) continue;
      const double ac = std::abs(c);
      if (scale < ac) {
        ssq = 1.0 + ssq * (scale / ac) * (scale / ac);
        scale = ac;
      } else {
        ssq += (ac / scale) * (ac / scale);
      }
    }
  }
  return scale * std::sqrt(ssq);
}

template <Scalar T>
double vector_norm(std::span<const T> v) noexcept {
  double s = 0.0;
  for (const T& x : v) s += abs2(x);
  return std::sqrt(s);
}

/// Maximum absolute column sum.
template <Scalar T>
double norm1(const Matrix<T>& a) noexcept {
  double best = 0.0;
  for (std::size_t j = 0; j < a.cols(); ++j) {
    double s = 0.0;
    for (const T& v : a.col(j)) s += std::abs(v);
    best = std::max(best, s);
  }
  return best;
}

template <Scalar T>
double max_abs(const Matrix<T>& a) noexcept {
  double best = 0.0;
  for (const T& v : a.data()) best = std::max(best, std::abs(v));
  return best;
}

template <Scalar T>
bool all_finite(const Matrix<T>& a) noexcept {
  for (const T& v : a.data())
    if (!std::isfinite(real_of(v)) || (is_complex_v<T> && !std::isfinite(std::imag(cplx(v)))))
      return false;
  return true;
}

template <Scalar T>
T trace(const Matrix<T>& a) {
  if (!a.is_square()) throw DimensionError("trace of non-square matrix");
  T s{};
  for (std::size_t i = 0; i < a.rows(); ++i) s += a(i, i);
  return s;
}

/// Column stacking.
template <Scalar T>
std::vector<T> vec(const Matrix<T>& a) {
  return {a.data().begin(), a.data().end()};
}

template <Scalar T>
Matrix<T> unvec(std::span<const T> v, std::size_t rows, std::size_t cols) {
  if (v.size() != rows * cols)
    throw DimensionError("unvec: length " + std::to_string(v.size()) + " does not fit " +
                         std::to_string(rows) + "x" + std::to_string(cols));
  Matrix<T> m(rows, cols);
  std::copy(v.begin(), v.end(), m.data().begin());
  return m;
}

template <Scalar T>
Matrix<T> unvec(const std::vector<T>& v, std::size_t rows, std::size_t cols) {
  return unvec(std::span<const T>(v), rows, cols);
}

template <Scalar T>
Matrix<T> kron(const Matrix<T>& a, const Matrix<T>& b) {
  Matrix<T> k(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t ja = 0; ja < a.cols(); ++ja)
    for (std::size_t ia = 0; ia < a.rows(); ++ia) {
      const T s = a(ia, ja);
      if (s == T{}) continue;
      for (std::size_t jb = 0; jb < b.cols(); ++jb)
        for (std::size_t ib = 0; ib < b.rows(); ++ib)
          k(ia * b.rows() + ib, ja * b.cols() + jb) = s * b(ib, jb);
    }
  return k;
}

}  // namespace matcond
