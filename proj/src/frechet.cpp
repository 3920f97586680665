#include "matcond/frechet.hpp"

#include <string>

#include "matcond/error.hpp"

namespace matcond {
namespace {

template <Scalar T>
void check_shapes(const Matrix<T>& a, const Matrix<T>& e, const char* who) {
  if (!a.is_square() || e.rows() != a.rows() || e.cols() != a.cols())
    throw DimensionError(std::string(who) + ": base point and direction must be square of equal size");
}

template <Scalar T>
Matrix<T> unit_direction(std::size_t n, std::size_t idx) {
  Matrix<T> e(n, n);
  e(idx % n, idx / n) = T{1};
  return e;
}

}  // namespace

template <Scalar T>
Matrix<T> frechet1(FunctionId f, const Matrix<T>& a, const Matrix<T>& e) {
  check_shapes(a, e, "frechet1");
  const std::size_t n = a.rows();
  Matrix<T> x(2 * n, 2 * n);
  x.set_block(0, 0, a);
  x.set_block(n, n, a);
  x.set_block(0, n, e);
  return matcond::apply(f, x).block(0, n, n, n);
}

template <Scalar T>
Matrix<T> frechet2(FunctionId f, const Matrix<T>& a, const Matrix<T>& e1, const Matrix<T>& e2) {
  check_shapes(a, e1, "frechet2");
  check_shapes(a, e2, "frechet2");
  const std::size_t n = a.rows();
  Matrix<T> x(4 * n, 4 * n);
  for (std::size_t k = 0; k < 4; ++k) x.set_block(k * n, k * n, a);
  x.set_block(0, n, e1);
  x.set_block(2 * n, 3 * n, e1);
  x.set_block(0, 2 * n, e2);
  x.set_block(n, 3 * n, e2);
  return matcond::apply(f, x).block(0, 3 * n, n, n);
}

template <Scalar T>
KroneckerForm1<T> kron_form1(FunctionId f, const Matrix<T>& a) {
  if (!a.is_square()) throw DimensionError("kron_form1: square matrix required");
  const std::size_t n = a.rows(), n2 = n * n;
  KroneckerForm1<T> out{Matrix<T>(n2, n2), f, n};
  for (std::size_t i = 0; i < n2; ++i) {
    const Matrix<T> l = frechet1(f, a, unit_direction<T>(n, i));
    std::copy(l.data().begin(), l.data().end(), out.k.col(i).begin());
  }
  return out;
}

template <Scalar T>
Matrix<T> kron_form1_dir(FunctionId f, const Matrix<T>& a, const Matrix<T>& z) {
  check_shapes(a, z, "kron_form1_dir");
  const std::size_t n = a.rows(), n2 = n * n;
  Matrix<T> k(n2, n2);
  for (std::size_t i = 0; i < n2; ++i) {
    const Matrix<T> l = frechet2(f, a, unit_direction<T>(n, i), z);
    std::copy(l.data().begin(), l.data().end(), k.col(i).begin());
  }
  return k;
}

template <Scalar T>
KroneckerForm2<T> kron_form2(FunctionId f, const Matrix<T>& a) {
  if (!a.is_square()) throw DimensionError("kron_form2: square matrix required");
  const std::size_t n = a.rows(), n2 = n * n;
  KroneckerForm2<T> out{Matrix<T>(n2 * n2, n2), f, n};
  // Entry block (i, j): rows i*n2 .. i*n2+n2-1 of column j hold vec(L2(E_i, E_j)).
  for (std::size_t j = 0; j < n2; ++j) {
    const Matrix<T> ej = unit_direction<T>(n, j);
    for (std::size_t i = 0; i <= j; ++i) {
      const Matrix<T> l = frechet2(f, a, unit_direction<T>(n, i), ej);
      std::copy(l.data().begin(), l.data().end(), out.k.col(j).begin() + i * n2);
      if (i != j) std::copy(l.data().begin(), l.data().end(), out.k.col(i).begin() + j * n2);
    }
  }
  return out;
}

template RMatrix frechet1(FunctionId, const RMatrix&, const RMatrix&);
template CMatrix frechet1(FunctionId, const CMatrix&, const CMatrix&);
template RMatrix frechet2(FunctionId, const RMatrix&, const RMatrix&, const RMatrix&);
template CMatrix frechet2(FunctionId, const CMatrix&, const CMatrix&, const CMatrix&);
template KroneckerForm1<double> kron_form1(FunctionId, const RMatrix&);
template KroneckerForm1<cplx> kron_form1(FunctionId, const CMatrix&);
template RMatrix kron_form1_dir(FunctionId, const RMatrix&, const RMatrix&);
template CMatrix kron_form1_dir(FunctionId, const CMatrix&, const CMatrix&);
template KroneckerForm2<double> kron_form2(FunctionId, const RMatrix&);
template KroneckerForm2<cplx> kron_form2(FunctionId, const CMatrix&);

}  // namespace matcond
