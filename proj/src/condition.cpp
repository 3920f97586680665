#include "matcond/condition.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "matcond/error.hpp"
#include "matcond/linalg.hpp"
#include "matcond/random.hpp"

namespace matcond {
namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

template <Scalar T>
Matrix<T> column_as_matrix(const Matrix<T>& q, std::size_t k, std::size_t n) {
  Matrix<T> e(n, n);
  std::copy(q.col(k).begin(), q.col(k).end(), e.data().begin());
  return e;
}

// K1_f(A) * Q computed column by column from L1(A, unvec(q_k)).
template <Scalar T>
Matrix<T> k1_times(FunctionId f, const Matrix<T>& a, const Matrix<T>& q) {
  const std::size_t n = a.rows();
  Matrix<T> out(n * n, q.cols());
  for (std::size_t k = 0; k < q.cols(); ++k) {
    const Matrix<T> l = frechet1(f, a, column_as_matrix(q, k, n));
    std::copy(l.data().begin(), l.data().end(), out.col(k).begin());
  }
  return out;
}

template <Scalar T>
void check_basis(const Matrix<T>& a, const TangentBasis<T>& basis) {
  if (!a.is_square() || basis.b.rows() != a.rows() * a.rows())
    throw DimensionError("tangent basis does not match the matrix size");
}

template <Scalar T>
void note_failure(CondReport& r, const char* field, const std::exception& e) {
  r.failures.push_back(std::string(field) + ": " + e.what());
}

}  // namespace

template <Scalar T>
double cond1_unstructured(FunctionId f, const Matrix<T>& a) {
  return spectral_norm(kron_form1(f, a).k);
}

template <Scalar T>
double cond1_structured(FunctionId f, const Matrix<T>& a, const TangentBasis<T>& basis) {
  check_basis(a, basis);
  return spectral_norm(k1_times(f, a, basis.orthonormal_columns()));
}

template <Scalar T>
double cond2_upper_unstructured(FunctionId f, const Matrix<T>& a) {
  return spectral_norm(kron_form2(f, a).k);
}

template <Scalar T>
Matrix<T> omega_matrix(FunctionId f, const Matrix<T>& a, const Matrix<T>& q) {
  const std::size_t n = a.rows(), n2 = n * n, p = q.cols();
  if (q.rows() != n2) throw DimensionError("omega_matrix: basis rows must equal n^2");
  std::vector<Matrix<T>> e(p);
  for (std::size_t k = 0; k < p; ++k) e[k] = column_as_matrix(q, k, n);
  // Column i of Omega is vec(Psi_i); column j of Psi_i is vec(L2(A, E_i, E_j)).
  Matrix<T> omega(n2 * p, p);
  for (std::size_t i = 0; i < p; ++i)
    for (std::size_t j = i; j < p; ++j) {
      const Matrix<T> l = frechet2(f, a, e[i], e[j]);
      std::copy(l.data().begin(), l.data().end(), omega.col(i).begin() + j * n2);
      if (i != j) std::copy(l.data().begin(), l.data().end(), omega.col(j).begin() + i * n2);
    }
  return omega;
}

template <Scalar T>
double cond2_upper_structured(FunctionId f, const Matrix<T>& a, const TangentBasis<T>& basis) {
  check_basis(a, basis);
  return spectral_norm(omega_matrix(f, a, basis.orthonormal_columns()));
}

template <Scalar T>
LowerBound<T> cond2_lower(FunctionId f, const Matrix<T>& a, const TangentBasis<T>* basis,
                          double eps, const NmOptions& opt) {
  if (!(eps > 0)) throw Error("cond2_lower needs eps > 0");
  if (basis) check_basis(a, *basis);
  const std::size_t n = a.rows();
  const Matrix<T> q = basis ? basis->orthonormal_columns() : Matrix<T>();
  auto cond1_at = [&](const Matrix<T>& x) {
    return basis ? spectral_norm(k1_times(f, x, q)) : cond1_unstructured(f, x);
  };
  const double base = cond1_at(a);
  const std::size_t dim = basis ? basis->b.cols() : n * n;

  auto direction = [&](std::span<const double> y) -> std::optional<Matrix<T>> {
    Matrix<T> z(n, n);
    if (basis) {
      std::vector<T> yt(y.begin(), y.end());
      const std::vector<T> v = matvec(basis->b, std::span<const T>(yt));
      std::copy(v.begin(), v.end(), z.data().begin());
    } else {
      for (std::size_t k = 0; k < dim; ++k) z.data()[k] = T(y[k]);
    }
    const double nz = frobenius_norm(z);
    if (!(nz > 0) || !std::isfinite(nz)) return std::nullopt;
    z *= T(1.0 / nz);
    return z;
  };
  auto objective = [&](std::span<const double> y) -> double {
    const auto z = direction(y);
    if (!z) return 0.0;
    try {
      const double c = cond1_at(a + *z * T(eps));
      const double g = std::abs(c - base) / eps;
      return std::isfinite(g) ? -g : 0.0;
    } catch (const Error&) {
      return 0.0;
    }
  };

  LowerBound<T> best;
  best.value = -1.0;
  const std::size_t restarts = std::max<std::size_t>(1, opt.restarts);
  for (std::size_t r = 0; r < restarts; ++r) {
    Rng rng(splitmix64(opt.seed ^ splitmix64(r + 1)));
    std::vector<double> y0(dim);
    for (double& v : y0) v = gaussian(rng);
    const NmResult res = nelder_mead(objective, y0, opt);
    best.iterations += res.iterations;
    best.evaluations += res.evaluations;
    const double g = -res.fval;
    if (g > best.value) {
      best.value = g;
      if (auto z = direction(res.x)) best.z = *z;
    }
  }
  best.value = std::max(best.value, 0.0);
  return best;
}

template <Scalar T>
double cond2_exact_exp_hermitian(const Matrix<T>& a) {
  const auto ev = eig_hermitian(a);
  return ev.empty() ? 1.0 : std::exp(ev.back());
}

template <Scalar T>
double cond2_exact_exp_skewherm(const Matrix<T>& a) {
  if (!a.is_square()) throw DimensionError("square matrix required");
  if (frobenius_norm(a + adjoint_t(a)) > 1e-12 * (1.0 + frobenius_norm(a)))
    throw Error("matrix is not skew-Hermitian");
  return 0.0;
}

template <Scalar T>
double cond1_exp_normal_spectral(const Matrix<T>& a) {
  if (!a.is_square()) throw DimensionError("square matrix required");
  const double fa = frobenius_norm(a);
  if (frobenius_norm(adjoint_t(a) * a - a * adjoint_t(a)) > 1e-10 * fa * fa)
    throw Error("matrix is not normal");
  if (a.rows() == 0) return 1.0;
  double alpha = -std::numeric_limits<double>::infinity();
  for (cplx l : eigenvalues(a)) alpha = std::max(alpha, l.real());
  return std::exp(alpha);
}

template <Scalar T>
CondReport full_report(FunctionId f, const Matrix<T>& a, const std::optional<StructureClass>& cls,
                       const ReportOptions& opts) {
  if (!a.is_square()) throw DimensionError("full_report needs a square matrix");
  CondReport r;
  r.function = f;
  r.n = a.rows();
  r.structure = cls;
  r.eps = opts.eps;

  std::optional<TangentBasis<T>> basis;
  if (cls) basis = tangent_basis(a, *cls, opts.membership_tol);

  try {
    r.kappa2 = kappa2(a);
  } catch (const std::exception& e) {
    note_failure<T>(r, "kappa2", e);
  }
  std::optional<Matrix<T>> k1;
  try {
    k1 = kron_form1(f, a).k;
    r.cond1_u = spectral_norm(*k1);
  } catch (const std::exception& e) {
    note_failure<T>(r, "cond1_u", e);
  }
  if (basis) try {
      const Matrix<T> q = basis->orthonormal_columns();
      r.cond1_s = spectral_norm(k1 ? Matrix<T>(*k1 * q) : k1_times(f, a, q));
    } catch (const std::exception& e) {
      note_failure<T>(r, "cond1_s", e);
    }
  try {
    r.ub_uscond2 = cond2_upper_unstructured(f, a);
  } catch (const std::exception& e) {
    note_failure<T>(r, "ub_uscond2", e);
  }
  if (basis) try {
      r.ub_scond2 = cond2_upper_structured(f, a, *basis);
    } catch (const std::exception& e) {
      note_failure<T>(r, "ub_scond2", e);
    }
  if (opts.lower) {
    try {
      const auto lb = cond2_lower<T>(f, a, nullptr, opts.eps, opts.nm);
      r.lb_uscond2 = lb.value;
      r.optimizer_iters += lb.iterations;
    } catch (const std::exception& e) {
      note_failure<T>(r, "lb_uscond2", e);
    }
    if (basis) try {
        const auto lb = cond2_lower<T>(f, a, &*basis, opts.eps, opts.nm);
        r.lb_scond2 = lb.value;
        r.optimizer_iters += lb.iterations;
      } catch (const std::exception& e) {
        note_failure<T>(r, "lb_scond2", e);
      }
  }
  return r;
}

#define MATCOND_INSTANTIATE(T)                                                              \
  template double cond1_unstructured(FunctionId, const Matrix<T>&);                        \
  template double cond1_structured(FunctionId, const Matrix<T>&, const TangentBasis<T>&);  \
  template double cond2_upper_unstructured(FunctionId, const Matrix<T>&);                  \
  template double cond2_upper_structured(FunctionId, const Matrix<T>&,                     \
                                         const TangentBasis<T>&);                          \
  template Matrix<T> omega_matrix(FunctionId, const Matrix<T>&, const Matrix<T>&);     \
  template LowerBound<T> cond2_lower(FunctionId, const Matrix<T>&, const TangentBasis<T>*, \
                                     double, const NmOptions&);                            \
  template double cond2_exact_exp_hermitian(const Matrix<T>&);                             \
  template double cond2_exact_exp_skewherm(const Matrix<T>&);                              \
  template double cond1_exp_normal_spectral(const Matrix<T>&);                             \
  template CondReport full_report(FunctionId, const Matrix<T>&,                            \
                                  const std::optional<StructureClass>&, const ReportOptions&);

MATCOND_INSTANTIATE(double)
MATCOND_INSTANTIATE(cplx)

}  // namespace matcond
