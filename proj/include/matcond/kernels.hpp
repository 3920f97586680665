#pragma once

// Data-parallel inner loops used by the dense linear algebra layer.
//
// Every kernel has a portable scalar reference implementation and, on x86-64,
// an AVX2/FMA variant.  The variant is chosen once per process from the CPU
// feature bits; MATCOND_KERNELS=scalar in the environment forces the
// reference path.  All matrices are column-major with explicit leading
// dimensions.

#include <complex>
#include <cstddef>
#include <optional>
#include <string_view>

namespace matcond::kernels {

using cplx = std::complex<double>;

struct KernelTable {
  std::string_view name;

  // c(m x n) = a(m x k) * b(k x n), or c += a * b when accumulate is set.
  void (*gemm_d)(std::size_t m, std::size_t n, std::size_t k, const double* a,
                 std::size_t lda, const double* b, std::size_t ldb, double* c,
                 std::size_t ldc, bool accumulate);
  void (*gemm_z)(std::size_t m, std::size_t n, std::size_t k, const cplx* a,
                 std::size_t lda, const cplx* b, std::size_t ldb, cplx* c,
                 std::size_t ldc, bool accumulate);

  // sum_i x_i * y_i  /  sum_i conj(x_i) * y_i
  double (*dot_d)(std::size_t n, const double* x, const double* y);
  cplx (*dotc_z)(std::size_t n, const cplx* x, const cplx* y);

  // y += alpha * x
  void (*axpy_d)(std::size_t n, double alpha, const double* x, double* y);
  void (*axpy_z)(std::size_t n, cplx alpha, const cplx* x, cplx* y);

  // [x y] <- [x y] * [[g11 g12] [g21 g22]]
  void (*col_rot_d)(std::size_t n, double* x, double* y, double g11, double g12,
                    double g21, double g22);
  void (*col_rot_z)(std::size_t n, cplx* x, cplx* y, cplx g11, cplx g12,
                    cplx g21, cplx g22);
};

const KernelTable& scalar_kernels() noexcept;

/// AVX2/FMA table, or nullopt when the build or the CPU lacks support.
std::optional<KernelTable> avx2_kernels() noexcept;

/// Table selected for this process.
const KernelTable& active() noexcept;

}  // namespace matcond::kernels
