#include "matcond/matrix.hpp"

#include "matcond/kernels.hpp"

namespace matcond {
namespace {

void gemm(const RMatrix& a, const RMatrix& b, RMatrix& c, bool acc) {
  kernels::active().gemm_d(a.rows(), b.cols(), a.cols(), a.data().data(), a.rows(),
                           b.data().data(), b.rows(), c.data().data(), c.rows(), acc);
}

void gemm(const CMatrix& a, const CMatrix& b, CMatrix& c, bool acc) {
  kernels::active().gemm_z(a.rows(), b.cols(), a.cols(), a.data().data(), a.rows(),
                           b.data().data(), b.rows(), c.data().data(), c.rows(), acc);
}

}  // namespace

template <Scalar T>
void multiply_into(const Matrix<T>& a, const Matrix<T>& b, Matrix<T>& c, bool accumulate) {
  if (a.cols() != b.rows())
    throw DimensionError("product of " + std::to_string(a.rows()) + "x" +
                         std::to_string(a.cols()) + " and " + std::to_string(b.rows()) +
                         "x" + std::to_string(b.cols()));
  if (c.rows() != a.rows() || c.cols() != b.cols()) {
    if (accumulate) throw DimensionError("accumulating product into wrong shape");
    c = Matrix<T>(a.rows(), b.cols());
  }
  if (a.empty() || b.empty()) {
    if (!accumulate) c *= T{0};
    return;
  }
  gemm(a, b, c, accumulate);
}

template <Scalar T>
Matrix<T> operator*(const Matrix<T>& a, const Matrix<T>& b) {
  Matrix<T> c(a.rows(), b.cols());
  multiply_into(a, b, c, false);
  return c;
}

template <Scalar T>
std::vector<T> matvec(const Matrix<T>& a, std::span<const T> x) {
  if (x.size() != a.cols()) throw DimensionError("matvec length mismatch");
  std::vector<T> y(a.rows(), T{});
  for (std::size_t j = 0; j < a.cols(); ++j) {
    if (x[j] == T{}) continue;
    if constexpr (is_complex_v<T>)
      kernels::active().axpy_z(a.rows(), x[j], a.col(j).data(), y.data());
    else
      kernels::active().axpy_d(a.rows(), x[j], a.col(j).data(), y.data());
  }
  return y;
}

template void multiply_into(const RMatrix&, const RMatrix&, RMatrix&, bool);
template void multiply_into(const CMatrix&, const CMatrix&, CMatrix&, bool);
template RMatrix operator*(const RMatrix&, const RMatrix&);
template CMatrix operator*(const CMatrix&, const CMatrix&);
template std::vector<double> matvec(const RMatrix&, std::span<const double>);
template std::vector<cplx> matvec(const CMatrix&, std::span<const cplx>);

}  // namespace matcond
