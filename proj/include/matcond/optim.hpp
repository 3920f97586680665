#pragma once

// Nelder-Mead simplex minimization in the form of Lagarias, Reeds, Wright and
// Wright (the fminsearch variant).  Callers maximize by negating.

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace matcond {

struct NmOptions {
  std::size_t max_iters = 0;  // 0: 200 * dim
  std::size_t max_evals = 0;  // 0: 200 * dim
  double x_tol = 1e-6;
  double f_tol = 1e-8;
  std::size_t restarts = 5;
  std::uint64_t seed = 0;
  double reflection = 1.0;
  double expansion = 2.0;
  double contraction = 0.5;
  double shrink = 0.5;

  void validate() const;
};

struct NmResult {
  std::vector<double> x;
  double fval = 0.0;
  std::size_t iterations = 0;
  std::size_t evaluations = 0;
  bool converged = false;        // both tolerances met
  std::vector<double> history;   // best value after setup and after each iteration
};

using Objective = std::function<double(std::span<const double>)>;

/// Stops when the simplex has max |f_i - f_best| <= f_tol and
/// max |x_i - x_best|_inf <= x_tol, or when an iteration/evaluation budget runs out.
NmResult nelder_mead(const Objective& f, std::vector<double> x0, const NmOptions& opt);

}  // namespace matcond
