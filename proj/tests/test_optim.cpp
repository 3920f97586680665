#include <gtest/gtest.h>

#include <cmath>

#include "matcond/error.hpp"
#include "matcond/optim.hpp"

namespace {

using matcond::NmOptions;
using matcond::nelder_mead;

TEST(NelderMead, Quadratic1d) {
  const auto r = nelder_mead([](std::span<const double> x) { return (x[0] - 3) * (x[0] - 3); },
                             {0.0}, NmOptions{});
  EXPECT_NEAR(r.x[0], 3.0, 1e-4);
  EXPECT_TRUE(r.converged);
}

TEST(NelderMead, Rosenbrock) {
  auto rosen = [](std::span<const double> x) {
    return 100 * std::pow(x[1] - x[0] * x[0], 2) + std::pow(1 - x[0], 2);
  };
  const auto r = nelder_mead(rosen, {-1.2, 1.0}, NmOptions{});
  EXPECT_NEAR(r.x[0], 1.0, 1e-3);
  EXPECT_NEAR(r.x[1], 1.0, 1e-3);
  EXPECT_LT(r.fval, 1e-6);
}

TEST(NelderMead, ConstantReturnsStart) {
  const auto r = nelder_mead([](std::span<const double>) { return 4.5; }, {0.3, -2.0, 0.0},
                             NmOptions{});
  EXPECT_EQ(r.x, (std::vector<double>{0.3, -2.0, 0.0}));
  EXPECT_EQ(r.fval, 4.5);
}

TEST(NelderMead, HistoryMonotoneAndDeterministic) {
  auto f = [](std::span<const double> x) {
    double s = 0;
    for (std::size_t i = 0; i < x.size(); ++i) s += (i + 1) * std::pow(x[i] - 0.5, 2) + std::sin(3 * x[i]);
    return s;
  };
  NmOptions opt;
  opt.max_evals = 300;
  const auto a = nelder_mead(f, {1, 2, 3, 4}, opt);
  const auto b = nelder_mead(f, {1, 2, 3, 4}, opt);
  EXPECT_EQ(a.x, b.x);
  EXPECT_EQ(a.history, b.history);
  for (std::size_t i = 1; i < a.history.size(); ++i) EXPECT_LE(a.history[i], a.history[i - 1]);
  EXPECT_LE(a.evaluations, 300u + 4u);
}

TEST(NelderMead, IterationBudget) {
  NmOptions opt;
  opt.max_iters = 5;
  const auto r = nelder_mead([](std::span<const double> x) { return x[0] * x[0] + x[1] * x[1]; },
                             {10.0, 10.0}, opt);
  EXPECT_EQ(r.iterations, 5u);
  EXPECT_FALSE(r.converged);
}

TEST(NelderMead, RejectsBadCoefficients) {
  NmOptions opt;
  opt.expansion = 0.9;
  EXPECT_THROW(nelder_mead([](std::span<const double>) { return 0.0; }, {1.0}, opt), matcond::Error);
}

}  // namespace
