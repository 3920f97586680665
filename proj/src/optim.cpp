#include "matcond/optim.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "matcond/error.hpp"

namespace matcond {

void NmOptions::validate() const {
  if (!(reflection > 0 && expansion > 1 && contraction > 0 && contraction < 1 && shrink > 0 &&
        shrink < 1))
    throw Error("Nelder-Mead coefficients need rho > 0, chi > 1, 0 < gamma < 1, 0 < sigma < 1");
  if (expansion <= reflection) throw Error("Nelder-Mead expansion must exceed reflection");
}

NmResult nelder_mead(const Objective& f, std::vector<double> x0, const NmOptions& opt) {
  opt.validate();
  const std::size_t d = x0.size();
  if (d == 0) throw DimensionError("nelder_mead needs at least one variable");
  const std::size_t max_iters = opt.max_iters ? opt.max_iters : 200 * d;
  const std::size_t max_evals = opt.max_evals ? opt.max_evals : 200 * d;

  NmResult res;
  auto eval = [&](const std::vector<double>& x) {
    ++res.evaluations;
    return f(std::span<const double>(x));
  };

  std::vector<std::vector<double>> v(d + 1, x0);
  std::vector<double> fv(d + 1);
  fv[0] = eval(x0);
  for (std::size_t i = 0; i < d; ++i) {
    v[i + 1][i] += x0[i] != 0.0 ? 0.05 * std::abs(x0[i]) : 0.00025;
    fv[i + 1] = eval(v[i + 1]);
  }
  std::vector<std::size_t> order(d + 1);
  auto sort_simplex = [&] {
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return fv[a] < fv[b]; });
    std::vector<std::vector<double>> nv(d + 1);
    std::vector<double> nf(d + 1);
    for (std::size_t i = 0; i <= d; ++i) {
      nv[i] = std::move(v[order[i]]);
      nf[i] = fv[order[i]];
    }
    v = std::move(nv);
    fv = std::move(nf);
  };
  sort_simplex();
  res.history.push_back(fv[0]);

  auto converged = [&] {
    double fs = 0.0, xs = 0.0;
    for (std::size_t i = 1; i <= d; ++i) {
      fs = std::max(fs, std::abs(fv[i] - fv[0]));
      for (std::size_t k = 0; k < d; ++k) xs = std::max(xs, std::abs(v[i][k] - v[0][k]));
    }
    return fs <= opt.f_tol && xs <= opt.x_tol;
  };
  auto combine = [&](const std::vector<double>& c, double t) {
    // (1 + t) * c - t * worst
    std::vector<double> x(d);
    for (std::size_t k = 0; k < d; ++k) x[k] = (1.0 + t) * c[k] - t * v[d][k];
    return x;
  };

  const double rho = opt.reflection, chi = opt.expansion, psi = opt.contraction,
               sigma = opt.shrink;
  while (true) {
    if (converged()) {
      res.converged = true;
      break;
    }
    if (res.iterations >= max_iters || res.evaluations >= max_evals) break;
    ++res.iterations;

    std::vector<double> c(d, 0.0);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t k = 0; k < d; ++k) c[k] += v[i][k];
    for (double& ck : c) ck /= static_cast<double>(d);

    const std::vector<double> xr = combine(c, rho);
    const double fr = eval(xr);
    bool do_shrink = false;
    if (fr < fv[0]) {
      const std::vector<double> xe = combine(c, rho * chi);
      const double fe = eval(xe);
      if (fe < fr) {
        v[d] = xe;
        fv[d] = fe;
      } else {
        v[d] = xr;
        fv[d] = fr;
      }
    } else if (fr < fv[d - 1]) {
      v[d] = xr;
      fv[d] = fr;
    } else if (fr < fv[d]) {
      const std::vector<double> xc = combine(c, psi * rho);
      const double fc = eval(xc);
      if (fc <= fr) {
        v[d] = xc;
        fv[d] = fc;
      } else {
        do_shrink = true;
      }
    } else {
      const std::vector<double> xcc = combine(c, -psi);
      const double fcc = eval(xcc);
      if (fcc < fv[d]) {
        v[d] = xcc;
        fv[d] = fcc;
      } else {
        do_shrink = true;
      }
    }
    if (do_shrink)
      for (std::size_t i = 1; i <= d; ++i) {
        for (std::size_t k = 0; k < d; ++k) v[i][k] = v[0][k] + sigma * (v[i][k] - v[0][k]);
        fv[i] = eval(v[i]);
      }
    sort_simplex();
    res.history.push_back(std::min(res.history.back(), fv[0]));
  }
  res.x = v[0];
  res.fval = fv[0];
  return res;
}

}  // namespace matcond
