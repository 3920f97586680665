#pragma once

// Level-1 condition numbers and level-2 bounds in the Frobenius norm, plus
// three closed-form spectral-norm values for the exponential used as oracles.

#include <optional>
#include <string>
#include <vector>

#include "matcond/frechet.hpp"
#include "matcond/optim.hpp"
#include "matcond/structures.hpp"

namespace matcond {

/// ||K1_f(A)||_2.
template <Scalar T>
double cond1_unstructured(FunctionId f, const Matrix<T>& a);

/// ||K1_f(A) B B^+||_2, evaluated as ||K1_f(A) Q||_2 with Q orthonormal
/// columns spanning range(B).
template <Scalar T>
double cond1_structured(FunctionId f, const Matrix<T>& a, const TangentBasis<T>& basis);

/// ||K2_f(A)||_2.
template <Scalar T>
double cond2_upper_unstructured(FunctionId f, const Matrix<T>& a);

/// Norm of the n^2 p x p matrix Omega whose column i stacks
/// vec(L2(A, E_i, E_j)) over j, E_k = unvec(Q e_k).  Non-orthonormal bases are
/// replaced by the Q factor of their QR factorization first.
template <Scalar T>
double cond2_upper_structured(FunctionId f, const Matrix<T>& a, const TangentBasis<T>& basis);

template <Scalar T>
Matrix<T> omega_matrix(FunctionId f, const Matrix<T>& a, const Matrix<T>& q);

template <Scalar T>
struct LowerBound {
  double value = 0.0;
  Matrix<T> z;  // unit Frobenius norm maximizer
  std::size_t iterations = 0;
  std::size_t evaluations = 0;
};

/// max over Z of |cond1(A + eps Z) - cond1(A)| / eps by Nelder-Mead from
/// opt.restarts seeded Gaussian starts.  With a basis, Z = unvec(B y)/||.||_F
/// and cond1 is the structured value with that basis held fixed; otherwise
/// Z = unvec(y)/||y||.  Points where f is undefined score 0.
template <Scalar T>
LowerBound<T> cond2_lower(FunctionId f, const Matrix<T>& a, const TangentBasis<T>* basis,
                          double eps, const NmOptions& opt);

// Spectral-norm closed forms for the exponential.
template <Scalar T>
double cond2_exact_exp_hermitian(const Matrix<T>& a);
template <Scalar T>
double cond2_exact_exp_skewherm(const Matrix<T>& a);
template <Scalar T>
double cond1_exp_normal_spectral(const Matrix<T>& a);

struct CondReport {
  FunctionId function = FunctionId::Exp;
  std::size_t n = 0;
  std::optional<StructureClass> structure;
  std::optional<double> kappa2;
  std::optional<double> cond1_u;
  std::optional<double> cond1_s;
  std::optional<double> ub_uscond2;
  std::optional<double> ub_scond2;
  std::optional<double> lb_uscond2;
  std::optional<double> lb_scond2;
  double eps = 1e-3;
  std::size_t optimizer_iters = 0;
  std::vector<std::string> failures;  // "field: message"

  bool ok() const noexcept { return failures.empty(); }
};

struct ReportOptions {
  bool lower = true;
  double eps = 1e-3;
  NmOptions nm;
  double membership_tol = 1e-8;
};

/// All quantities for one (f, A, class).  Membership failure throws; any other
/// failure leaves that field empty and is recorded in failures.
template <Scalar T>
CondReport full_report(FunctionId f, const Matrix<T>& a, const std::optional<StructureClass>& cls,
                       const ReportOptions& opts);

}  // namespace matcond
