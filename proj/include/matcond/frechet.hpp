#pragma once

// First and second Frechet derivatives of the functions in matfun, evaluated
// through block upper triangular matrices:
//
//   X1 = [A E1; 0 A]               L1(A, E1)     = f(X1)(1:n, n+1:2n)
//   X2 = [X1 I2(x)E2; 0 X1]        L2(A, E1, E2) = f(X2)(1:n, 3n+1:4n)
//
// No function-specific derivative formulas are used.

#include "matcond/matfun.hpp"
#include "matcond/matrix.hpp"

namespace matcond {

template <Scalar T>
struct KroneckerForm1 {
  Matrix<T> k;  // n^2 x n^2, k * vec(E) = vec(L1(A, E))
  FunctionId function;
  std::size_t n;
};

template <Scalar T>
struct KroneckerForm2 {
  Matrix<T> k;  // n^4 x n^2, k * vec(Z) = vec(kron_form1_dir(f, A, Z))
  FunctionId function;
  std::size_t n;
};

template <Scalar T>
Matrix<T> frechet1(FunctionId f, const Matrix<T>& a, const Matrix<T>& e);

template <Scalar T>
Matrix<T> frechet2(FunctionId f, const Matrix<T>& a, const Matrix<T>& e1,
                   const Matrix<T>& e2);

template <Scalar T>
KroneckerForm1<T> kron_form1(FunctionId f, const Matrix<T>& a);

/// n^2 x n^2 matrix with column i = vec(L2(A, unvec(e_i), z)).
template <Scalar T>
Matrix<T> kron_form1_dir(FunctionId f, const Matrix<T>& a, const Matrix<T>& z);

/// Column j = vec(kron_form1_dir(f, a, unvec(e_j))).  Only the pairs i <= j
/// are evaluated; the rest follow from symmetry of the second derivative.
template <Scalar T>
KroneckerForm2<T> kron_form2(FunctionId f, const Matrix<T>& a);

}  // namespace matcond
