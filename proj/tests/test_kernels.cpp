#include <gtest/gtest.h>

#include <vector>

#include "matcond/kernels.hpp"
#include "matcond/random.hpp"

namespace {

using matcond::cplx;
using matcond::kernels::KernelTable;

std::vector<double> randvec(matcond::Rng& rng, std::size_t n) {
  std::vector<double> v(n);
  for (double& x : v) x = matcond::gaussian(rng);
  return v;
}

std::vector<cplx> randcvec(matcond::Rng& rng, std::size_t n) {
  std::vector<cplx> v(n);
  for (cplx& x : v) x = {matcond::gaussian(rng), matcond::gaussian(rng)};
  return v;
}

double maxdiff(const std::vector<double>& a, const std::vector<double>& b) {
  double d = 0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

double maxdiff(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  double d = 0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

class KernelEquivalence : public ::testing::Test {
 protected:
  void SetUp() override {
    auto t = matcond::kernels::avx2_kernels();
    if (!t) GTEST_SKIP() << "no AVX2 kernels on this build or CPU";
    simd = *t;
  }
  const KernelTable& ref = matcond::kernels::scalar_kernels();
  KernelTable simd{};
  matcond::Rng rng{7};
};

TEST_F(KernelEquivalence, GemmReal) {
  for (std::size_t m : {1u, 3u, 4u, 5u, 8u, 13u})
    for (std::size_t n : {1u, 2u, 7u})
      for (std::size_t k : {1u, 4u, 9u})
        for (bool acc : {false, true}) {
          const std::size_t lda = m + 2, ldb = k + 1, ldc = m + 3;
          auto a = randvec(rng, lda * k), b = randvec(rng, ldb * n);
          auto c0 = randvec(rng, ldc * n), c1 = c0;
          ref.gemm_d(m, n, k, a.data(), lda, b.data(), ldb, c0.data(), ldc, acc);
          simd.gemm_d(m, n, k, a.data(), lda, b.data(), ldb, c1.data(), ldc, acc);
          EXPECT_LE(maxdiff(c0, c1), 1e-13) << m << " " << n << " " << k;
        }
}

TEST_F(KernelEquivalence, GemmComplex) {
  for (std::size_t m : {1u, 2u, 3u, 6u, 11u})
    for (std::size_t n : {1u, 5u})
      for (std::size_t k : {1u, 3u, 8u})
        for (bool acc : {false, true}) {
          const std::size_t lda = m + 1, ldb = k, ldc = m + 2;
          auto a = randcvec(rng, lda * k), b = randcvec(rng, ldb * n);
          auto c0 = randcvec(rng, ldc * n), c1 = c0;
          ref.gemm_z(m, n, k, a.data(), lda, b.data(), ldb, c0.data(), ldc, acc);
          simd.gemm_z(m, n, k, a.data(), lda, b.data(), ldb, c1.data(), ldc, acc);
          EXPECT_LE(maxdiff(c0, c1), 1e-13) << m << " " << n << " " << k;
        }
}

TEST_F(KernelEquivalence, DotAndAxpy) {
  for (std::size_t n = 0; n <= 19; ++n) {
    auto x = randvec(rng, n), y = randvec(rng, n);
    EXPECT_NEAR(ref.dot_d(n, x.data(), y.data()), simd.dot_d(n, x.data(), y.data()), 1e-13);
    auto y0 = y, y1 = y;
    ref.axpy_d(n, -0.75, x.data(), y0.data());
    simd.axpy_d(n, -0.75, x.data(), y1.data());
    EXPECT_LE(maxdiff(y0, y1), 1e-14);

    auto cx = randcvec(rng, n), cy = randcvec(rng, n);
    EXPECT_LE(std::abs(ref.dotc_z(n, cx.data(), cy.data()) -
                       simd.dotc_z(n, cx.data(), cy.data())),
              1e-13);
    auto cy0 = cy, cy1 = cy;
    ref.axpy_z(n, cplx(0.3, -1.2), cx.data(), cy0.data());
    simd.axpy_z(n, cplx(0.3, -1.2), cx.data(), cy1.data());
    EXPECT_LE(maxdiff(cy0, cy1), 1e-14);
  }
}

TEST_F(KernelEquivalence, ColumnRotation) {
  for (std::size_t n = 0; n <= 11; ++n) {
    auto x = randvec(rng, n), y = randvec(rng, n);
    auto x1 = x, y1 = y;
    ref.col_rot_d(n, x.data(), y.data(), 0.6, -0.8, 0.8, 0.6);
    simd.col_rot_d(n, x1.data(), y1.data(), 0.6, -0.8, 0.8, 0.6);
    EXPECT_LE(maxdiff(x, x1), 1e-15);
    EXPECT_LE(maxdiff(y, y1), 1e-15);

    auto cx = randcvec(rng, n), cy = randcvec(rng, n);
    auto cx1 = cx, cy1 = cy;
    const cplx g11(0.6), g12(0.0, 0.8), g21(0.0, 0.8), g22(0.6);
    ref.col_rot_z(n, cx.data(), cy.data(), g11, g12, g21, g22);
    simd.col_rot_z(n, cx1.data(), cy1.data(), g11, g12, g21, g22);
    EXPECT_LE(maxdiff(cx, cx1), 1e-15);
    EXPECT_LE(maxdiff(cy, cy1), 1e-15);
  }
}

TEST(KernelReference, GemmSmallByHand) {
  const auto& k = matcond::kernels::scalar_kernels();
  const double a[] = {1, 3, 2, 4};  // [[1 2] [3 4]]
  const double b[] = {5, 7, 6, 8};  // [[5 6] [7 8]]
  double c[4] = {};
  k.gemm_d(2, 2, 2, a, 2, b, 2, c, 2, false);
  EXPECT_EQ(c[0], 19);
  EXPECT_EQ(c[1], 43);
  EXPECT_EQ(c[2], 22);
  EXPECT_EQ(c[3], 50);
}

TEST(KernelReference, ActiveTableIsNamed) {
  EXPECT_FALSE(matcond::kernels::active().name.empty());
}

}  // namespace
