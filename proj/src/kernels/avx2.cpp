// AVX2/FMA variants of the dense kernels.  This translation unit is compiled
// with -mavx2 -mfma; its functions must only be reached after the runtime
// feature check in avx2_kernels().

#include <cmath>

#include "matcond/kernels.hpp"

#if defined(__x86_64__) && defined(__AVX2__) && defined(__FMA__)
#define MATCOND_HAVE_AVX2 1
#include <immintrin.h>
#else
#define MATCOND_HAVE_AVX2 0
#endif

namespace matcond::kernels {

#if MATCOND_HAVE_AVX2
namespace {

inline double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

// v * (re + i im) for two interleaved complex numbers per register.
inline __m256d cmul(__m256d v, __m256d re, __m256d im_signed) {
  return _mm256_fmadd_pd(_mm256_permute_pd(v, 0b0101), im_signed,
                         _mm256_mul_pd(v, re));
}

inline __m256d cfma(__m256d v, __m256d re, __m256d im_signed, __m256d acc) {
  acc = _mm256_fmadd_pd(v, re, acc);
  return _mm256_fmadd_pd(_mm256_permute_pd(v, 0b0101), im_signed, acc);
}

inline __m256d signed_imag(double im) { return _mm256_set_pd(im, -im, im, -im); }

void gemm_d(std::size_t m, std::size_t n, std::size_t k, const double* a,
            std::size_t lda, const double* b, std::size_t ldb, double* c,
            std::size_t ldc, bool accumulate) {
  for (std::size_t j = 0; j < n; ++j) {
    double* cj = c + j * ldc;
    const double* bj = b + j * ldb;
    std::size_t i = 0;
    for (; i + 16 <= m; i += 16) {
      __m256d c0, c1, c2, c3;
      if (accumulate) {
        c0 = _mm256_loadu_pd(cj + i);
        c1 = _mm256_loadu_pd(cj + i + 4);
        c2 = _mm256_loadu_pd(cj + i + 8);
        c3 = _mm256_loadu_pd(cj + i + 12);
      } else {
        c0 = c1 = c2 = c3 = _mm256_setzero_pd();
      }
      for (std::size_t p = 0; p < k; ++p) {
        if (bj[p] == 0.0) continue;
        const __m256d bp = _mm256_set1_pd(bj[p]);
        const double* ap = a + p * lda + i;
        c0 = _mm256_fmadd_pd(_mm256_loadu_pd(ap), bp, c0);
        c1 = _mm256_fmadd_pd(_mm256_loadu_pd(ap + 4), bp, c1);
        c2 = _mm256_fmadd_pd(_mm256_loadu_pd(ap + 8), bp, c2);
        c3 = _mm256_fmadd_pd(_mm256_loadu_pd(ap + 12), bp, c3);
      }
      _mm256_storeu_pd(cj + i, c0);
      _mm256_storeu_pd(cj + i + 4, c1);
      _mm256_storeu_pd(cj + i + 8, c2);
      _mm256_storeu_pd(cj + i + 12, c3);
    }
    for (; i + 4 <= m; i += 4) {
      __m256d c0 = accumulate ? _mm256_loadu_pd(cj + i) : _mm256_setzero_pd();
      for (std::size_t p = 0; p < k; ++p) {
        if (bj[p] == 0.0) continue;
        c0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + p * lda + i),
                             _mm256_set1_pd(bj[p]), c0);
      }
      _mm256_storeu_pd(cj + i, c0);
    }
    for (; i < m; ++i) {
      double s = accumulate ? cj[i] : 0.0;
      for (std::size_t p = 0; p < k; ++p) {
        if (bj[p] == 0.0) continue;
        s = std::fma(a[i + p * lda], bj[p], s);
      }
      cj[i] = s;
    }
  }
}

void gemm_z(std::size_t m, std::size_t n, std::size_t k, const cplx* a,
            std::size_t lda, const cplx* b, std::size_t ldb, cplx* c,
            std::size_t ldc, bool accumulate) {
  for (std::size_t j = 0; j < n; ++j) {
    double* cj = reinterpret_cast<double*>(c + j * ldc);
    const cplx* bj = b + j * ldb;
    std::size_t i = 0;
    for (; i + 8 <= m; i += 8) {
      __m256d c0, c1, c2, c3;
      if (accumulate) {
        c0 = _mm256_loadu_pd(cj + 2 * i);
        c1 = _mm256_loadu_pd(cj + 2 * i + 4);
        c2 = _mm256_loadu_pd(cj + 2 * i + 8);
        c3 = _mm256_loadu_pd(cj + 2 * i + 12);
      } else {
        c0 = c1 = c2 = c3 = _mm256_setzero_pd();
      }
      for (std::size_t p = 0; p < k; ++p) {
        if (bj[p] == cplx{}) continue;
        const __m256d re = _mm256_set1_pd(bj[p].real());
        const __m256d im = signed_imag(bj[p].imag());
        const double* ap = reinterpret_cast<const double*>(a + p * lda + i);
        c0 = cfma(_mm256_loadu_pd(ap), re, im, c0);
        c1 = cfma(_mm256_loadu_pd(ap + 4), re, im, c1);
        c2 = cfma(_mm256_loadu_pd(ap + 8), re, im, c2);
        c3 = cfma(_mm256_loadu_pd(ap + 12), re, im, c3);
      }
      _mm256_storeu_pd(cj + 2 * i, c0);
      _mm256_storeu_pd(cj + 2 * i + 4, c1);
      _mm256_storeu_pd(cj + 2 * i + 8, c2);
      _mm256_storeu_pd(cj + 2 * i + 12, c3);
    }
    for (; i + 2 <= m; i += 2) {
      __m256d c0 = accumulate ? _mm256_loadu_pd(cj + 2 * i) : _mm256_setzero_pd();
      for (std::size_t p = 0; p < k; ++p) {
        if (bj[p] == cplx{}) continue;
        const double* ap = reinterpret_cast<const double*>(a + p * lda + i);
        c0 = cfma(_mm256_loadu_pd(ap), _mm256_set1_pd(bj[p].real()),
                  signed_imag(bj[p].imag()), c0);
      }
      _mm256_storeu_pd(cj + 2 * i, c0);
    }
    for (; i < m; ++i) {
      double re = accumulate ? cj[2 * i] : 0.0;
      double im = accumulate ? cj[2 * i + 1] : 0.0;
      for (std::size_t p = 0; p < k; ++p) {
        if (bj[p] == cplx{}) continue;
        const cplx av = a[i + p * lda];
        re = std::fma(av.real(), bj[p].real(), re);
        re = std::fma(-av.imag(), bj[p].imag(), re);
        im = std::fma(av.imag(), bj[p].real(), im);
        im = std::fma(av.real(), bj[p].imag(), im);
      }
      cj[2 * i] = re;
      cj[2 * i + 1] = im;
    }
  }
}

double dot_d(std::size_t n, const double* x, const double* y) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i), acc0);
    acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i + 4), _mm256_loadu_pd(y + i + 4),
                           acc1);
  }
  for (; i + 4 <= n; i += 4)
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i), acc0);
  double s = hsum(_mm256_add_pd(acc0, acc1));
  for (; i < n; ++i) s = std::fma(x[i], y[i], s);
  return s;
}

cplx dotc_z(std::size_t n, const cplx* x, const cplx* y) {
  const double* xd = reinterpret_cast<const double*>(x);
  const double* yd = reinterpret_cast<const double*>(y);
  __m256d acc_re = _mm256_setzero_pd();
  __m256d acc_im = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d xv = _mm256_loadu_pd(xd + 2 * i);
    const __m256d yv = _mm256_loadu_pd(yd + 2 * i);
    acc_re = _mm256_fmadd_pd(xv, yv, acc_re);
    acc_im = _mm256_fmadd_pd(xv, _mm256_permute_pd(yv, 0b0101), acc_im);
  }
  double re = hsum(acc_re);
  alignas(32) double t[4];
  _mm256_store_pd(t, acc_im);
  double im = (t[0] - t[1]) + (t[2] - t[3]);
  for (; i < n; ++i) {
    re += x[i].real() * y[i].real() + x[i].imag() * y[i].imag();
    im += x[i].real() * y[i].imag() - x[i].imag() * y[i].real();
  }
  return {re, im};
}

void axpy_d(std::size_t n, double alpha, const double* x, double* y) {
  const __m256d av = _mm256_set1_pd(alpha);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    _mm256_storeu_pd(y + i, _mm256_fmadd_pd(_mm256_loadu_pd(x + i), av,
                                            _mm256_loadu_pd(y + i)));
  for (; i < n; ++i) y[i] = std::fma(alpha, x[i], y[i]);
}

void axpy_z(std::size_t n, cplx alpha, const cplx* x, cplx* y) {
  const double* xd = reinterpret_cast<const double*>(x);
  double* yd = reinterpret_cast<double*>(y);
  const __m256d re = _mm256_set1_pd(alpha.real());
  const __m256d im = signed_imag(alpha.imag());
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2)
    _mm256_storeu_pd(yd + 2 * i,
                     cfma(_mm256_loadu_pd(xd + 2 * i), re, im, _mm256_loadu_pd(yd + 2 * i)));
  for (; i < n; ++i) y[i] += alpha * x[i];
}

void col_rot_d(std::size_t n, double* x, double* y, double g11, double g12,
               double g21, double g22) {
  const __m256d v11 = _mm256_set1_pd(g11), v12 = _mm256_set1_pd(g12);
  const __m256d v21 = _mm256_set1_pd(g21), v22 = _mm256_set1_pd(g22);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d xv = _mm256_loadu_pd(x + i);
    const __m256d yv = _mm256_loadu_pd(y + i);
    _mm256_storeu_pd(x + i, _mm256_fmadd_pd(yv, v21, _mm256_mul_pd(xv, v11)));
    _mm256_storeu_pd(y + i, _mm256_fmadd_pd(yv, v22, _mm256_mul_pd(xv, v12)));
  }
  for (; i < n; ++i) {
    const double xi = x[i], yi = y[i];
    x[i] = g11 * xi + g21 * yi;
    y[i] = g12 * xi + g22 * yi;
  }
}

void col_rot_z(std::size_t n, cplx* x, cplx* y, cplx g11, cplx g12, cplx g21,
               cplx g22) {
  double* xd = reinterpret_cast<double*>(x);
  double* yd = reinterpret_cast<double*>(y);
  const __m256d r11 = _mm256_set1_pd(g11.real()), i11 = signed_imag(g11.imag());
  const __m256d r12 = _mm256_set1_pd(g12.real()), i12 = signed_imag(g12.imag());
  const __m256d r21 = _mm256_set1_pd(g21.real()), i21 = signed_imag(g21.imag());
  const __m256d r22 = _mm256_set1_pd(g22.real()), i22 = signed_imag(g22.imag());
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d xv = _mm256_loadu_pd(xd + 2 * i);
    const __m256d yv = _mm256_loadu_pd(yd + 2 * i);
    _mm256_storeu_pd(xd + 2 * i, cfma(yv, r21, i21, cmul(xv, r11, i11)));
    _mm256_storeu_pd(yd + 2 * i, cfma(yv, r22, i22, cmul(xv, r12, i12)));
  }
  for (; i < n; ++i) {
    const cplx xi = x[i], yi = y[i];
    x[i] = g11 * xi + g21 * yi;
    y[i] = g12 * xi + g22 * yi;
  }
}

}  // namespace

std::optional<KernelTable> avx2_kernels() noexcept {
  __builtin_cpu_init();
  if (!__builtin_cpu_supports("avx2") || !__builtin_cpu_supports("fma"))
    return std::nullopt;
  return KernelTable{"avx2", &gemm_d, &gemm_z, &dot_d, &dotc_z,
                     &axpy_d, &axpy_z, &col_rot_d, &col_rot_z};
}

#else

std::optional<KernelTable> avx2_kernels() noexcept { return std::nullopt; }

#endif

}  // namespace matcond::kernels
