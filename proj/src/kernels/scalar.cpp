#include "matcond/kernels.hpp"

namespace matcond::kernels {
namespace {

template <class T>
void gemm_ref(std::size_t m, std::size_t n, std::size_t k, const T* a,
              std::size_t lda, const T* b, std::size_t ldb, T* c,
              std::size_t ldc, bool accumulate) {
  for (std::size_t j = 0; j < n; ++j) {
    T* cj = c + j * ldc;
    if (!accumulate)
      for (std::size_t i = 0; i < m; ++i) cj[i] = T{};
    for (std::size_t p = 0; p < k; ++p) {
      const T bpj = b[p + j * ldb];
      if (bpj == T{}) continue;
      const T* ap = a + p * lda;
      for (std::size_t i = 0; i < m; ++i) cj[i] += ap[i] * bpj;
    }
  }
}

double dot_ref(std::size_t n, const double* x, const double* y) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += x[i] * y[i];
  return s;
}

cplx dotc_ref(std::size_t n, const cplx* x, const cplx* y) {
  double re = 0.0, im = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    re += x[i].real() * y[i].real() + x[i].imag() * y[i].imag();
    im += x[i].real() * y[i].imag() - x[i].imag() * y[i].real();
  }
  return {re, im};
}

template <class T>
void axpy_ref(std::size_t n, T alpha, const T* x, T* y) {
  for (std::size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

template <class T>
void col_rot_ref(std::size_t n, T* x, T* y, T g11, T g12, T g21, T g22) {
  for (std::size_t i = 0; i < n; ++i) {
    const T xi = x[i];
    const T yi = y[i];
    x[i] = g11 * xi + g21 * yi;
    y[i] = g12 * xi + g22 * yi;
  }
}

}  // namespace

const KernelTable& scalar_kernels() noexcept {
  static const KernelTable table{
      "scalar",          &gemm_ref<double>,     &gemm_ref<cplx>,
      &dot_ref,          &dotc_ref,             &axpy_ref<double>,
      &axpy_ref<cplx>,   &col_rot_ref<double>,  &col_rot_ref<cplx>,
  };
  return table;
}

}  // namespace matcond::kernels
