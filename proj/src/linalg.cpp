#include "matcond/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "matcond/kernels.hpp"

namespace matcond {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// sum conj(x_i) y_i
double dotc(std::size_t n, const double* x, const double* y) {
  return kernels::active().dot_d(n, x, y);
}
cplx dotc(std::size_t n, const cplx* x, const cplx* y) {
  return kernels::active().dotc_z(n, x, y);
}
void axpy(std::size_t n, double alpha, const double* x, double* y) {
  kernels::active().axpy_d(n, alpha, x, y);
}
void axpy(std::size_t n, cplx alpha, const cplx* x, cplx* y) {
  kernels::active().axpy_z(n, alpha, x, y);
}
void col_rot(std::size_t n, double* x, double* y, double g11, double g12, double g21,
             double g22) {
  kernels::active().col_rot_d(n, x, y, g11, g12, g21, g22);
}
void col_rot(std::size_t n, cplx* x, cplx* y, cplx g11, cplx g12, cplx g21, cplx g22) {
  kernels::active().col_rot_z(n, x, y, g11, g12, g21, g22);
}

template <Scalar T>
T phase_of(T x) {
  if constexpr (is_complex_v<T>) {
    const double ax = std::abs(x);
    return ax == 0.0 ? T{1} : x / ax;
  } else {
    return x < 0.0 ? -1.0 : 1.0;
  }
}

// Householder reflector H = I - 2 v v^* / (v^* v) with H x = alpha e_1.
// Returns false when x is already zero.
template <Scalar T>
bool make_reflector(std::span<const T> x, std::vector<T>& v, double& vv) {
  const double nx = vector_norm(x);
  v.assign(x.begin(), x.end());
  if (nx == 0.0) return false;
  const T alpha = -phase_of(x[0]) * nx;
  v[0] -= alpha;
  vv = 0.0;
  for (const T& e : v) vv += abs2(e);
  return vv > 0.0;
}

// Apply H from the left to rows [r0, r0 + v.size()) of columns [c0, a.cols()).
template <Scalar T>
void reflect_left(Matrix<T>& a, std::size_t r0, std::size_t c0, const std::vector<T>& v,
                  double vv) {
  const std::size_t len = v.size();
  for (std::size_t j = c0; j < a.cols(); ++j) {
    T* cj = &a(r0, j);
    const T w = dotc(len, v.data(), cj);
    if (w == T{}) continue;
    axpy(len, -T(2.0 / vv) * w, v.data(), cj);
  }
}

// Apply H from the right to columns [c0, c0 + v.size()) of all rows.
template <Scalar T>
void reflect_right(Matrix<T>& a, std::size_t c0, const std::vector<T>& v, double vv) {
  const std::size_t m = a.rows();
  std::vector<T> w(m, T{});
  for (std::size_t l = 0; l < v.size(); ++l)
    if (v[l] != T{}) axpy(m, v[l], a.col(c0 + l).data(), w.data());
  for (std::size_t l = 0; l < v.size(); ++l) {
    const T coef = -T(2.0 / vv) * conj_if(v[l]);
    if (coef != T{}) axpy(m, coef, w.data(), a.col(c0 + l).data());
  }
}

// Fills columns [valid, k) of u with an orthonormal completion of the first
// `valid` columns.
template <Scalar T>
void complete_orthonormal(Matrix<T>& u, std::size_t valid) {
  const std::size_t m = u.rows();
  std::size_t next = valid;
  for (std::size_t e = 0; e < m && next < u.cols(); ++e) {
    std::vector<T> cand(m, T{});
    cand[e] = T{1};
    for (int pass = 0; pass < 2; ++pass)
      for (std::size_t j = 0; j < next; ++j) {
        const T w = dotc(m, u.col(j).data(), cand.data());
        axpy(m, -w, u.col(j).data(), cand.data());
      }
    const double nc = vector_norm(std::span<const T>(cand));
    if (nc < 0.5) continue;
    for (std::size_t i = 0; i < m; ++i) u(i, next) = cand[i] / nc;
    ++next;
  }
}

// One-sided Jacobi on the columns of w (m >= n).  On return the columns of w
// are mutually orthogonal; v accumulates the rotations when requested.
template <Scalar T>
void jacobi_orthogonalize(Matrix<T>& w, Matrix<T>* v) {
  const std::size_t n = w.cols();
  const std::size_t m = w.rows();
  const double tol = 4.0 * kEps;
  const std::size_t max_sweeps = std::max<std::size_t>(1, 100 * n);
  std::vector<double> norms2(n);
  for (std::size_t sweep = 0;; ++sweep) {
    if (sweep >= max_sweeps)
      throw NumericalError("svd: Jacobi did not converge after " +
                           std::to_string(max_sweeps) + " sweeps");
    double total = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      norms2[j] = std::real(dotc(m, w.col(j).data(), w.col(j).data()));
      total += norms2[j];
    }
    // Columns at rounding level relative to the whole matrix count as zero.
    const double negligible = kEps * kEps * total;
    bool rotated = false;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double alpha = norms2[p];
        const double beta = norms2[q];
        if (alpha <= negligible || beta <= negligible) continue;
        const T gamma = dotc(m, w.col(p).data(), w.col(q).data());
        const double ag = std::abs(gamma);
        if (ag <= tol * std::sqrt(alpha) * std::sqrt(beta)) continue;
        rotated = true;
        const double zeta = (beta - alpha) / (2.0 * ag);
        const double t = (zeta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = c * t;
        const T ph = gamma / ag;
        // [p q] <- [p q] [[c, s ph], [-s conj(ph), c]]
        const T g11 = c, g12 = s * ph, g21 = -s * conj_if(ph), g22 = c;
        col_rot(m, w.col(p).data(), w.col(q).data(), g11, g12, g21, g22);
        if (v != nullptr)
          col_rot(v->rows(), v->col(p).data(), v->col(q).data(), g11, g12, g21, g22);
        norms2[p] = std::real(dotc(m, w.col(p).data(), w.col(p).data()));
        norms2[q] = std::real(dotc(m, w.col(q).data(), w.col(q).data()));
      }
    }
    if (!rotated) return;
  }
}

template <Scalar T>
Svd<T> svd_impl(const Matrix<T>& a, bool want_vectors) {
  const std::size_t m = a.rows(), n = a.cols();
  if (m < n) {
    Svd<T> t = svd_impl(adjoint_t(a), want_vectors);
    return {std::move(t.v), std::move(t.s), std::move(t.u)};
  }
  Svd<T> out;
  if (n == 0) {
    out.u = Matrix<T>(m, 0);
    out.v = Matrix<T>(0, 0);
    return out;
  }
  // Tall inputs are compressed to their triangular factor first.
  Matrix<T> w;
  Matrix<T> q_outer;
  const bool compress = m > n;
  if (compress) {
    Qr<T> f = qr(a);
    w = std::move(f.r);
    if (want_vectors) q_outer = std::move(f.q);
  } else {
    w = a;
  }
  Matrix<T> v = Matrix<T>::identity(n);
  jacobi_orthogonalize(w, want_vectors ? &v : nullptr);

  std::vector<double> s(n);
  for (std::size_t j = 0; j < n; ++j) s[j] = vector_norm<T>(w.col(j));
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return s[x] > s[y]; });
  out.s.resize(n);
  for (std::size_t k = 0; k < n; ++k) out.s[k] = s[order[k]];
  if (!want_vectors) return out;

  const std::size_t wr = w.rows();
  Matrix<T> u(wr, n);
  out.v = Matrix<T>(n, n);
  const double cutoff = out.s[0] * kEps * static_cast<double>(std::max(m, n));
  std::size_t valid = 0;
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t j = order[k];
    for (std::size_t i = 0; i < n; ++i) out.v(i, k) = v(i, j);
    if (out.s[k] > cutoff && out.s[k] > 0.0) {
      for (std::size_t i = 0; i < wr; ++i) u(i, k) = w(i, j) / out.s[k];
      ++valid;
    }
  }
  complete_orthonormal(u, valid);
  out.u = compress ? q_outer * u : std::move(u);
  return out;
}

}  // namespace

template <Scalar T>
Qr<T> qr(const Matrix<T>& a) {
  const std::size_t m = a.rows(), n = a.cols();
  const std::size_t k = std::min(m, n);
  Matrix<T> r = a;
  std::vector<std::vector<T>> vs(k);
  std::vector<double> vvs(k, 0.0);
  for (std::size_t j = 0; j < k; ++j) {
    std::span<const T> x(&r(j, j), m - j);
    if (!make_reflector(x, vs[j], vvs[j])) {
      vs[j].clear();
      continue;
    }
    reflect_left(r, j, j, vs[j], vvs[j]);
    for (std::size_t i = j + 1; i < m; ++i) r(i, j) = T{};
  }
  Matrix<T> q(m, k);
  for (std::size_t i = 0; i < k; ++i) q(i, i) = T{1};
  for (std::size_t j = k; j-- > 0;)
    if (!vs[j].empty()) reflect_left(q, j, j, vs[j], vvs[j]);
  return {std::move(q), r.block(0, 0, k, n)};
}

template <Scalar T>
Svd<T> svd(const Matrix<T>& a) {
  return svd_impl(a, true);
}

template <Scalar T>
std::vector<double> singular_values(const Matrix<T>& a) {
  return svd_impl(a, false).s;
}

template <Scalar T>
double spectral_norm(const Matrix<T>& a) {
  if (a.empty()) return 0.0;
  const double scale = max_abs(a);
  if (scale == 0.0) return 0.0;
  if (!std::isfinite(scale)) throw NumericalError("spectral_norm of non-finite matrix");
  return singular_values(a).front();
}

template <Scalar T>
double kappa2(const Matrix<T>& a) {
  if (!a.is_square()) throw DimensionError("kappa2 needs a square matrix");
  const auto s = singular_values(a);
  if (s.empty()) return 1.0;
  if (s.back() == 0.0) return std::numeric_limits<double>::infinity();
  return s.front() / s.back();
}

template <Scalar T>
Matrix<T> pinv(const Matrix<T>& a, std::optional<double> tol) {
  const Svd<T> f = svd(a);
  Matrix<T> out(a.cols(), a.rows());
  if (f.s.empty()) return out;
  const double cut = tol.value_or(static_cast<double>(std::max(a.rows(), a.cols())) *
                                  kEps * f.s.front());
  if (cut < 0.0) throw DimensionError("pinv tolerance must be non-negative");
  for (std::size_t k = 0; k < f.s.size(); ++k) {
    if (!(f.s[k] > cut)) continue;
    const double inv = 1.0 / f.s[k];
    // out += v_k * inv * u_k^*
    for (std::size_t j = 0; j < a.rows(); ++j) {
      const T coef = T(inv) * conj_if(f.u(j, k));
      axpy(a.cols(), coef, f.v.col(k).data(), out.col(j).data());
    }
  }
  return out;
}

template <Scalar T>
Matrix<T> solve(const Matrix<T>& a, const Matrix<T>& b) {
  const std::size_t n = a.rows();
  if (!a.is_square()) throw DimensionError("solve needs a square coefficient matrix");
  if (b.rows() != n) throw DimensionError("solve: right-hand side has wrong row count");
  Matrix<T> lu = a;
  Matrix<T> x = b;
  const double thresh = static_cast<double>(n) * kEps * max_abs(a);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    double best = std::abs(lu(k, k));
    for (std::size_t i = k + 1; i < n; ++i)
      if (std::abs(lu(i, k)) > best) {
        best = std::abs(lu(i, k));
        piv = i;
      }
    if (best == 0.0 || best <= thresh)
      throw NumericalError("solve: matrix is singular to working precision");
    if (piv != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(lu(k, j), lu(piv, j));
      for (std::size_t j = 0; j < x.cols(); ++j) std::swap(x(k, j), x(piv, j));
    }
    const T pivot = lu(k, k);
    for (std::size_t i = k + 1; i < n; ++i) lu(i, k) /= pivot;
    for (std::size_t j = k + 1; j < n; ++j) {
      const T f = lu(k, j);
      if (f == T{}) continue;
      axpy(n - k - 1, -f, &lu(k + 1, k), &lu(k + 1, j));
    }
    for (std::size_t j = 0; j < x.cols(); ++j) {
      const T f = x(k, j);
      if (f == T{}) continue;
      axpy(n - k - 1, -f, &lu(k + 1, k), &x(k + 1, j));
    }
  }
  for (std::size_t j = 0; j < x.cols(); ++j)
    for (std::size_t k = n; k-- > 0;) {
      x(k, j) /= lu(k, k);
      const T f = x(k, j);
      if (f != T{}) axpy(k, -f, &lu(0, k), &x(0, j));
    }
  return x;
}

Schur schur_complex(const CMatrix& a) {
  if (!a.is_square()) throw DimensionError("schur_complex needs a square matrix");
  if (!all_finite(a)) throw NumericalError("schur_complex of non-finite matrix");
  const std::size_t n = a.rows();
  CMatrix h = a;
  CMatrix q = CMatrix::identity(n);
  if (n <= 1) return {q, h};

  // Hessenberg reduction.
  std::vector<cplx> v;
  double vv = 0.0;
  for (std::size_t k = 0; k + 2 < n; ++k) {
    std::span<const cplx> x(&h(k + 1, k), n - k - 1);
    if (!make_reflector(x, v, vv)) continue;
    reflect_left(h, k + 1, k, v, vv);
    reflect_right(h, k + 1, v, vv);
    reflect_right(q, k + 1, v, vv);
    for (std::size_t i = k + 2; i < n; ++i) h(i, k) = 0.0;
  }

  // Shifted QR on the Hessenberg matrix with Wilkinson shifts.
  const double hnorm = frobenius_norm(h);
  const std::size_t max_steps = 100 * n;
  std::size_t steps = 0;
  std::size_t since_deflation = 0;
  std::size_t hi = n - 1;
  std::vector<double> cs(n);
  std::vector<cplx> ss(n);
  while (hi > 0) {
    std::size_t l = hi;
    for (; l > 0; --l) {
      double ref = std::abs(h(l, l)) + std::abs(h(l - 1, l - 1));
      if (ref == 0.0) ref = hnorm;
      if (std::abs(h(l, l - 1)) <= kEps * ref) {
        h(l, l - 1) = 0.0;
        break;
      }
    }
    if (l == hi) {
      --hi;
      since_deflation = 0;
      continue;
    }
    if (++steps > max_steps)
      throw NumericalError("schur_complex: QR iteration exceeded " +
                           std::to_string(max_steps) + " steps");
    ++since_deflation;

    cplx mu;
    if (since_deflation % 11 == 10) {
      // Exceptional shift to break cycles.
      mu = h(hi, hi) + 0.75 * std::abs(h(hi, hi - 1));
    } else {
      const cplx a11 = h(hi - 1, hi - 1), a12 = h(hi - 1, hi);
      const cplx a21 = h(hi, hi - 1), a22 = h(hi, hi);
      const cplx p = 0.5 * (a11 - a22);
      const cplx disc = std::sqrt(p * p + a12 * a21);
      const cplx den = std::abs(p + disc) >= std::abs(p - disc) ? p + disc : p - disc;
      mu = den == cplx{} ? a22 : a22 - a12 * a21 / den;
    }

    for (std::size_t k = l; k <= hi; ++k) h(k, k) -= mu;
    for (std::size_t k = l; k < hi; ++k) {
      const cplx x = h(k, k), y = h(k + 1, k);
      const double r = std::hypot(std::abs(x), std::abs(y));
      double c;
      cplx s;
      if (r == 0.0) {
        c = 1.0;
        s = 0.0;
      } else if (std::abs(x) == 0.0) {
        c = 0.0;
        s = std::conj(y) / std::abs(y);
      } else {
        c = std::abs(x) / r;
        s = (x / std::abs(x)) * std::conj(y) / r;
      }
      cs[k] = c;
      ss[k] = s;
      for (std::size_t j = k; j < n; ++j) {
        const cplx top = h(k, j), bot = h(k + 1, j);
        h(k, j) = c * top + s * bot;
        h(k + 1, j) = -std::conj(s) * top + c * bot;
      }
      h(k + 1, k) = 0.0;
    }
    for (std::size_t k = l; k < hi; ++k) {
      const cplx c = cs[k], s = ss[k];
      col_rot(k + 2, h.col(k).data(), h.col(k + 1).data(), c, -s, std::conj(s), c);
      col_rot(n, q.col(k).data(), q.col(k + 1).data(), c, -s, std::conj(s), c);
    }
    for (std::size_t k = l; k <= hi; ++k) h(k, k) += mu;
  }
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = j + 1; i < n; ++i) h(i, j) = 0.0;
  return {std::move(q), std::move(h)};
}

Schur schur_complex(const RMatrix& a) { return schur_complex(to_complex(a)); }

template <Scalar T>
std::vector<double> eig_hermitian(const Matrix<T>& a, double tol) {
  if (!a.is_square()) throw DimensionError("eig_hermitian needs a square matrix");
  const Matrix<T> ah = adjoint_t(a);
  const double resid = frobenius_norm(a - ah);
  if (resid > tol * std::max(1.0, frobenius_norm(a)))
    throw DomainError("eig_hermitian: matrix is not Hermitian (residual " +
                      std::to_string(resid) + ")");
  Matrix<T> sym = a + ah;
  sym *= T{0.5};
  const Schur f = schur_complex(sym);
  std::vector<double> ev(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) ev[i] = f.t(i, i).real();
  std::sort(ev.begin(), ev.end());
  return ev;
}

template <Scalar T>
std::vector<cplx> eigenvalues(const Matrix<T>& a) {
  const Schur f = schur_complex(a);
  std::vector<cplx> ev(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) ev[i] = f.t(i, i);
  return ev;
}

#define MATCOND_INSTANTIATE(T)                                            \
  template Qr<T> qr(const Matrix<T>&);                                    \
  template Svd<T> svd(const Matrix<T>&);                                  \
  template std::vector<double> singular_values(const Matrix<T>&);         \
  template double spectral_norm(const Matrix<T>&);                        \
  template double kappa2(const Matrix<T>&);                               \
  template Matrix<T> pinv(const Matrix<T>&, std::optional<double>);       \
  template Matrix<T> solve(const Matrix<T>&, const Matrix<T>&);           \
  template std::vector<double> eig_hermitian(const Matrix<T>&, double);   \
  template std::vector<cplx> eigenvalues(const Matrix<T>&);

MATCOND_INSTANTIATE(double)
MATCOND_INSTANTIATE(cplx)
#undef MATCOND_INSTANTIATE

}  // namespace matcond
