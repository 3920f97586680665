#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "matcond/error.hpp"
#include "matcond/experiments.hpp"
#include "matcond/linalg.hpp"

namespace {

using namespace matcond;
namespace fs = std::filesystem;

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

fs::path scratch_dir(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("matcond_test_" + name);
  fs::remove_all(p);
  return p;
}

std::vector<double> sorted_real(std::vector<cplx> ev) {
  std::vector<double> r;
  for (cplx l : ev) r.push_back(l.real());
  std::sort(r.begin(), r.end());
  return r;
}

TEST(Gallery, SmallOrdersMatchKnownMatrices) {
  EXPECT_EQ(gallery_frank(4), (RMatrix{{4, 3, 2, 1}, {3, 3, 2, 1}, {0, 2, 2, 1}, {0, 0, 1, 1}}));
  EXPECT_EQ(gallery_grcar(5), (RMatrix{{1, 1, 1, 1, 0},
                                       {-1, 1, 1, 1, 1},
                                       {0, -1, 1, 1, 1},
                                       {0, 0, -1, 1, 1},
                                       {0, 0, 0, -1, 1}}));
  EXPECT_EQ(gallery_clement(4), (RMatrix{{0, 1, 0, 0}, {3, 0, 2, 0}, {0, 2, 0, 3}, {0, 0, 1, 0}}));
  EXPECT_EQ(gallery_redheff(4), (RMatrix{{1, 1, 1, 1}, {1, 1, 0, 1}, {1, 0, 1, 0}, {1, 0, 0, 1}}));
  const RMatrix l = gallery_lesp(3);
  EXPECT_EQ(l, (RMatrix{{-5, 0.5, 0}, {2, -7, 1.0 / 3}, {0, 3, -9}}));
}

TEST(Gallery, SpectralFacts) {
  // clement(n) has eigenvalues +-(n-1), +-(n-3), ...
  const auto ev = sorted_real(eigenvalues(gallery_clement(6)));
  const std::vector<double> want = {-5, -3, -1, 1, 3, 5};
  for (std::size_t k = 0; k < 6; ++k) EXPECT_NEAR(ev[k], want[k], 1e-10);
  // frank(n) has determinant 1.
  cplx det = 1.0;
  for (cplx l : eigenvalues(gallery_frank(6))) det *= l;
  EXPECT_NEAR(det.real(), 1.0, 1e-6);
  // det(redheff(n)) is the Mertens function; M(10) = -1.
  det = 1.0;
  for (cplx l : eigenvalues(gallery_redheff(10))) det *= l;
  EXPECT_NEAR(det.real(), -1.0, 1e-8);
  const CMatrix s = gallery_smoke(5);
  for (std::size_t k = 0; k < 5; ++k) EXPECT_NEAR(std::abs(s(k, k)), 1.0, 1e-15);
  EXPECT_EQ(s(4, 4), cplx(1.0));
  EXPECT_EQ(s(4, 0), cplx(1.0));
  EXPECT_EQ(s(0, 1), cplx(1.0));
}

TEST(Benchmarks, NamesAndShapes) {
  const auto set = benchmark_set();
  const std::vector<std::pair<std::string, std::size_t>> want = {
      {"A1", 3},  {"A2", 10},  {"A3", 8},      {"A4", 2},    {"A5", 4},    {"A6", 8},       {"A7", 8},
      {"A8", 3},  {"A9", 3},   {"A10", 2},     {"A11", 2},   {"A12", 2},   {"A13", 2},      {"frank", 10},
      {"grcar", 10}, {"clement", 10}, {"lesp", 10}, {"redheff", 10}, {"smoke", 10}};
  ASSERT_EQ(set.size(), want.size());
  for (std::size_t k = 0; k < set.size(); ++k) {
    EXPECT_EQ(set[k].name, want[k].first);
    EXPECT_EQ(std::visit([](const auto& m) { return m.rows(); }, set[k].a), want[k].second);
    EXPECT_FALSE(set[k].scale_to_10);
  }
  EXPECT_EQ(benchmark_set(6).back().name, "smoke");
  EXPECT_EQ(std::get<CMatrix>(benchmark_set(6).back().a).rows(), 6u);
}

TEST(Benchmarks, A2HasSingleCornerEntry) {
  const RMatrix a2 = std::get<RMatrix>(benchmark_set()[1].a);
  std::size_t small = 0;
  for (std::size_t i = 0; i < 10; ++i)
    for (std::size_t j = 0; j < 10; ++j)
      if (a2(i, j) != 0.0 && a2(i, j) != 1.0) ++small;
  EXPECT_EQ(small, 1u);
  EXPECT_EQ(a2(9, 0), 1e-10);
}

TEST(Experiment, DefaultsFollowTheSetups) {
  const auto e1 = default_experiment(1);
  EXPECT_EQ(e1.function, FunctionId::Log);
  EXPECT_EQ(e1.n, 4u);
  EXPECT_EQ(e1.count, 20u);
  ASSERT_EQ(e1.groups.size(), 3u);
  EXPECT_EQ(default_experiment(2).function, FunctionId::Sqrt);
  EXPECT_EQ(default_experiment(3).groups.size(), 2u);
  EXPECT_EQ(default_experiment(4).n, 10u);
  EXPECT_EQ(default_experiment(4).c_max, 1e10);
  EXPECT_THROW(default_experiment(6), Error);
}

TEST(Experiment, CsvIsDeterministicAcrossWorkerCounts) {
  ExperimentSpec spec = default_experiment(2);
  spec.count = 2;
  spec.nm.restarts = 1;
  spec.nm.max_evals = 30;
  spec.out_dir = scratch_dir("det1");
  const auto r1 = run_experiment(spec);
  spec.out_dir = scratch_dir("det2");
  spec.jobs = 3;
  const auto r2 = run_experiment(spec);
  EXPECT_EQ(r1.rows.size(), 6u);
  EXPECT_EQ(slurp(r1.csv_path), slurp(r2.csv_path));
  EXPECT_EQ(r1.svg_paths.size(), 3u);
  const std::string svg = slurp(r1.svg_paths[1]);
  EXPECT_EQ(svg.rfind("<svg", 0), 0u);
  EXPECT_EQ(svg.find("href"), std::string::npos);
  EXPECT_NE(svg.find("lb uscond2"), std::string::npos);
}

TEST(Experiment, FailedRowsKeepTheirPlace) {
  ExperimentSpec spec = default_experiment(1);
  spec.n = 3;  // odd order: symplectic generator refuses
  spec.count = 2;
  spec.lower = false;
  spec.plots = false;
  spec.groups = {{GenKind::Orthogonal, 0.5, 1.0}, {GenKind::Symplectic, 0.5, 1.0}};
  spec.out_dir = scratch_dir("fail");
  const auto res = run_experiment(spec);
  ASSERT_EQ(res.rows.size(), 4u);
  EXPECT_EQ(res.failed(), 2u);
  EXPECT_TRUE(res.rows[0].ok);
  EXPECT_FALSE(res.rows[2].ok);
  EXPECT_EQ(res.rows[2].record.status.rfind("failed: ", 0), 0u);
  std::istringstream lines(slurp(res.csv_path));
  std::vector<std::string> all;
  for (std::string l; std::getline(lines, l);) all.push_back(l);
  ASSERT_EQ(all.size(), 5u);
  const auto f = csv_split(all[3]);
  ASSERT_EQ(f.size(), csv_columns().size());
  EXPECT_EQ(f[8], "");
}

TEST(Experiment, BenchmarkRunNotesVariant) {
  ExperimentSpec spec = default_experiment(5);
  spec.n = 4;
  spec.lower = false;
  spec.plots = false;
  spec.out_dir = scratch_dir("bench");
  const auto res = run_experiment(spec);
  ASSERT_EQ(res.rows.size(), 19u);
  for (const auto& row : res.rows) {
    EXPECT_NE(row.record.status.find("variant=complex-schur"), std::string::npos);
    EXPECT_EQ(row.record.structure.rfind("quasi:", 0), 0u);
    EXPECT_EQ(row.record.d_pattern, std::string(row.record.n - 1, '0'));
  }
}

TEST(Svg, HandlesEmptyAndNonPositiveData) {
  const std::string s = svg_plot("t <1>", "x", true, {{"a", {1, 10, -1}, {0.0, 5.0, 2.0}}, {"b", {}, {}}});
  EXPECT_NE(s.find("t &lt;1&gt;"), std::string::npos);
  EXPECT_NE(s.find("</svg>"), std::string::npos);
}

}  // namespace
