#pragma once

// Factorizations built on the Matrix type: Householder QR, one-sided Jacobi
// SVD, LU solve, complex Schur form and Hermitian eigenvalues.
//
// Iterative methods give up after 100 * n sweeps (SVD) or 100 * n shifted QR
// steps (Schur) and throw NumericalError instead of returning a partially
// converged result.

#include <optional>
#include <vector>

#include "matcond/matrix.hpp"

namespace matcond {

template <Scalar T>
struct Qr {
  Matrix<T> q;  // orthonormal columns, m x min(m, n)
  Matrix<T> r;  // upper triangular (trapezoidal), min(m, n) x n
};

template <Scalar T>
struct Svd {
  Matrix<T> u;            // m x k, orthonormal columns, k = min(m, n)
  std::vector<double> s;  // k values, non-increasing, non-negative
  Matrix<T> v;            // n x k, orthonormal columns
};

struct Schur {
  CMatrix q;  // unitary
  CMatrix t;  // upper triangular, q * t * q^* = input
};

template <Scalar T>
Qr<T> qr(const Matrix<T>& a);

template <Scalar T>
Svd<T> svd(const Matrix<T>& a);

/// Singular values only (no singular vectors accumulated).
template <Scalar T>
std::vector<double> singular_values(const Matrix<T>& a);

template <Scalar T>
double spectral_norm(const Matrix<T>& a);

/// ||a||_2 ||a^-1||_2; +inf for singular a.
template <Scalar T>
double kappa2(const Matrix<T>& a);

/// Moore-Penrose pseudoinverse.  Singular values at or below tol are treated
/// as zero; the default is max(m, n) * eps * s_1.
template <Scalar T>
Matrix<T> pinv(const Matrix<T>& a, std::optional<double> tol = std::nullopt);

/// Solves a * x = b by LU with partial pivoting.  Throws NumericalError when a
/// pivot falls below n * eps * max|a|.
template <Scalar T>
Matrix<T> solve(const Matrix<T>& a, const Matrix<T>& b);

Schur schur_complex(const CMatrix& a);
Schur schur_complex(const RMatrix& a);

/// Eigenvalues of a Hermitian matrix in ascending order.  The input is
/// symmetrized; a Hermitian residual ||a - a^*||_F above tol * max(1, ||a||_F)
/// is an error.
template <Scalar T>
std::vector<double> eig_hermitian(const Matrix<T>& a, double tol = 1e-12);

/// Eigenvalues read off the diagonal of the complex Schur factor.
template <Scalar T>
std::vector<cplx> eigenvalues(const Matrix<T>& a);

}  // namespace matcond
