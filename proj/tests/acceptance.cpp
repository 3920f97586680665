// Acceptance checks 1-12; prints one PASS/FAIL line per criterion.

#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>

#include "matcond/condition.hpp"
#include "matcond/experiments.hpp"
#include "matcond/io.hpp"
#include "matcond/linalg.hpp"
#include "matcond/matfun.hpp"
#include "oracles.hpp"

#ifndef MATCOND_CLI_PATH
#error "MATCOND_CLI_PATH must name the matcond executable"
#endif

namespace {

using namespace matcond;
namespace fs = std::filesystem;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string num(double x) {
  std::ostringstream s;
  s.precision(3);
  s << x;
  return s.str();
}

double rel(double got, double want) { return std::abs(got - want) / std::abs(want); }

int run_cli(const std::string& args) {
  const std::string cmd = std::string("\"") + MATCOND_CLI_PATH + "\" " + args + " >/dev/null 2>&1";
  const int st = std::system(cmd.c_str());
  return WIFEXITED(st) ? WEXITSTATUS(st) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

fs::path work_dir(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("matcond_acceptance_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

RMatrix unit(RMatrix m) {
  m *= 1.0 / frobenius_norm(m);
  return m;
}

// 1 -----------------------------------------------------------------------
Outcome square_oracle() {
  double worst = 0.0;
  Rng rng(101);
  for (std::size_t n : {2u, 4u, 6u})
    for (int t = 0; t < 50; ++t) {
      const RMatrix a = gaussian_matrix<double>(rng, n, n);
      const RMatrix e1 = gaussian_matrix<double>(rng, n, n), e2 = gaussian_matrix<double>(rng, n, n);
      const RMatrix l2 = frechet2(FunctionId::Square, a, e1, e2);
      const RMatrix want = e1 * e2 + e2 * e1;
      for (std::size_t k = 0; k < want.size(); ++k)
        worst = std::max(worst, std::abs(l2.data()[k] - want.data()[k]));
    }
  return {worst <= 1e-12, "max abs error " + num(worst)};
}

// 2 -----------------------------------------------------------------------
Outcome finite_difference() {
  double lo = INFINITY, hi = 0.0;
  Rng rng(202);
  for (FunctionId f : {FunctionId::Exp, FunctionId::Log, FunctionId::Sqrt})
    for (int t = 0; t < 5; ++t) {
      RMatrix a = gaussian_matrix<double>(rng, 4, 4);
      a *= 0.25;
      a += RMatrix::identity(4);
      const RMatrix e1 = unit(gaussian_matrix<double>(rng, 4, 4));
      const RMatrix e2 = unit(gaussian_matrix<double>(rng, 4, 4));
      const double r4 = oracle::second_order_residual(f, a, e1, e2, 1e-4);
      const double r5 = oracle::second_order_residual(f, a, e1, e2, 1e-5);
      lo = std::min(lo, r4 / r5);
      hi = std::max(hi, r4 / r5);
    }
  return {lo >= 5 && hi <= 20, "residual ratios in [" + num(lo) + ", " + num(hi) + "]"};
}

// 3 -----------------------------------------------------------------------
Outcome scalar_tightness() {
  const RMatrix a{{2.0}};
  const double e2 = std::exp(2.0);
  const auto cls = StructureClass::quasi_triangular(Pattern::zeros(1));
  const auto basis = tangent_basis(a, cls, 1e-12);
  const double c1 = cond1_unstructured(FunctionId::Exp, a);
  const double uu = cond2_upper_unstructured(FunctionId::Exp, a);
  const double us = cond2_upper_structured(FunctionId::Exp, a, basis);
  NmOptions nm;
  nm.seed = 3;
  const double lb = cond2_lower<double>(FunctionId::Exp, a, nullptr, 1e-3, nm).value;
  const bool ok = rel(c1, e2) <= 1e-10 && rel(uu, e2) <= 1e-10 && rel(us, e2) <= 1e-10 && rel(lb, e2) <= 5e-3;
  return {ok, "rel errors cond1 " + num(rel(c1, e2)) + ", ub " + num(std::max(rel(uu, e2), rel(us, e2))) +
                  ", lb " + num(rel(lb, e2))};
}

// 4 -----------------------------------------------------------------------
Outcome normal_level1() {
  double herm = 0.0, skew = 0.0;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    Rng rng(seed);
    const CMatrix g = gaussian_matrix<cplx>(rng, 4, 4);
    CMatrix h = g + adjoint_t(g);
    h *= cplx(0.5);
    const double lmax = eig_hermitian(h).back();
    herm = std::max(herm, rel(cond1_unstructured(FunctionId::Exp, h), std::exp(lmax)));
    const RMatrix s = gen_structured(GenKind::SkewSymmetric, 4, seed, {});
    skew = std::max(skew, rel(cond1_unstructured(FunctionId::Exp, s), 1.0));
  }
  return {herm <= 1e-7 && skew <= 1e-7, "hermitian rel " + num(herm) + ", skew rel " + num(skew)};
}

// 5 -----------------------------------------------------------------------
Outcome projector_inequalities() {
  double worst = -INFINITY;
  std::size_t checked = 0;
  auto check = [&](FunctionId f, const RMatrix& a, const StructureClass& cls) {
    const auto b = tangent_basis(a, cls, 1e-8);
    const double c1u = cond1_unstructured(f, a), c1s = cond1_structured(f, a, b);
    const double uu = cond2_upper_unstructured(f, a), us = cond2_upper_structured(f, a, b);
    worst = std::max({worst, (c1s - c1u) / c1u, (us - uu) / uu});
    ++checked;
  };
  const std::size_t n = 4;
  for (const auto& sp : {ScalarProduct::identity(n), ScalarProduct::sigma(2, 2), ScalarProduct::reverse(n),
                         ScalarProduct::symplectic(n)})
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
      check(FunctionId::Exp, gen_structured(GenKind::Jordan, n, seed, {1.0, sp}), StructureClass::jordan(sp));
      check(FunctionId::Exp, gen_structured(GenKind::Lie, n, seed, {1.0, sp}), StructureClass::lie(sp));
      check(FunctionId::Log, gen_structured(GenKind::Automorphism, n, seed, {1.0, sp}),
            StructureClass::automorphism(sp));
    }
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    Rng rng(500 + seed);
    RMatrix t = gaussian_matrix<double>(rng, 10, 10);
    for (std::size_t j = 0; j < 10; ++j)
      for (std::size_t i = j + 1; i < 10; ++i) t(i, j) = 0.0;
    check(FunctionId::Exp, t, StructureClass::quasi_triangular(Pattern::zeros(10)));
  }
  return {worst <= 1e-10, std::to_string(checked) + " matrices, max relative excess " + num(worst)};
}

// 6 -----------------------------------------------------------------------
Outcome omega_equivalence() {
  double worst = 0.0;
  const std::size_t n = 3;
  const auto sp = ScalarProduct::identity(n);
  for (std::uint64_t seed = 1; seed <= 5; ++seed)
    for (const auto& [kind, cls] : {std::pair{GenKind::Jordan, StructureClass::jordan(sp)},
                                    std::pair{GenKind::Lie, StructureClass::lie(sp)}}) {
      const RMatrix a = gen_structured(kind, n, seed, {1.0, sp});
      const auto b = tangent_basis(a, cls, 1e-12);
      const double alg = cond2_upper_structured(FunctionId::Exp, a, b);
      const double dense = oracle::dense_projected_bound(FunctionId::Exp, a, b.b);
      worst = std::max(worst, rel(alg, dense));
    }
  return {worst <= 1e-9, "max rel difference " + num(worst)};
}

// 7 -----------------------------------------------------------------------
Outcome skew_lower_bound() {
  double worst = 0.0;
  const auto cls = StructureClass::lie(ScalarProduct::identity(4));
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const RMatrix a = gen_structured(GenKind::SkewSymmetric, 4, seed, {});
    const auto b = tangent_basis(a, cls, 1e-12);
    NmOptions nm;
    nm.seed = seed;
    nm.restarts = 2;
    worst = std::max(worst, cond2_lower<double>(FunctionId::Exp, a, &b, 1e-3, nm).value);
  }
  return {worst <= 1e-6, "max structured lower bound " + num(worst)};
}

// 8 -----------------------------------------------------------------------
Outcome exp_ratio() {
  std::vector<double> ratios;
  for (GenKind kind : {GenKind::SkewSymmetric, GenKind::Hamiltonian})
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
      const RMatrix a = gen_structured(kind, 4, seed, {});
      const auto b = tangent_basis(a, generated_class(kind, 4, {}), 1e-10);
      ratios.push_back(cond2_upper_unstructured(FunctionId::Exp, a) /
                       cond2_upper_structured(FunctionId::Exp, a, b));
    }
  std::sort(ratios.begin(), ratios.end());
  const double median = 0.5 * (ratios[9] + ratios[10]);
  return {median >= 1.5 && median <= 2.5, "median ratio " + num(median)};
}

// 9 -----------------------------------------------------------------------
Outcome symplectic_separation() {
  const std::size_t count = 12;
  const double t0 = std::log(0.5), t1 = std::log(10.0);
  const auto cls = StructureClass::automorphism(ScalarProduct::symplectic(4));
  bool ok = true;
  std::string detail;
  for (FunctionId f : {FunctionId::Log, FunctionId::Sqrt}) {
    std::vector<double> kappa, ratio, lbu, ubs;
    for (std::size_t k = 0; k < count; ++k) {
      const double tau = std::exp(t0 + (t1 - t0) * static_cast<double>(k) / (count - 1));
      const RMatrix a = gen_structured(GenKind::Symplectic, 4, 3, {tau, {}});
      ReportOptions opts;
      opts.nm.restarts = 2;
      opts.nm.max_evals = 400;
      opts.nm.seed = 7 + k;
      CondReport r = full_report(f, a, std::optional(cls), opts);
      if (!r.ok() || !r.lb_uscond2) return {false, "report failed: " + r.failures.front()};
      kappa.push_back(*r.kappa2);
      ratio.push_back(*r.ub_uscond2 / *r.ub_scond2);
      lbu.push_back(*r.lb_uscond2);
      ubs.push_back(*r.ub_scond2);
    }
    const double span = *std::max_element(kappa.begin(), kappa.end()) / *std::min_element(kappa.begin(), kappa.end());
    const double rho = oracle::spearman(kappa, ratio);
    const std::size_t top = static_cast<std::size_t>(std::max_element(kappa.begin(), kappa.end()) - kappa.begin());
    std::vector<std::size_t> idx(count);
    for (std::size_t k = 0; k < count; ++k) idx[k] = k;
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return kappa[a] < kappa[b]; });
    std::size_t sep = 0;
    for (std::size_t k = count / 2; k < count; ++k) sep += lbu[idx[k]] > ubs[idx[k]];
    const bool f_ok = span >= 1e4 && rho >= 0.8 && ratio[top] > 1e2 && 2 * sep >= count - count / 2;
    ok = ok && f_ok;
    detail += std::string(to_string(f)) + ": kappa span " + num(span) + ", spearman " + num(rho) + ", end ratio " +
              num(ratio[top]) + ", separated " + std::to_string(sep) + "/" + std::to_string(count - count / 2) +
              "; ";
  }
  return {ok, detail};
}

// 10 ----------------------------------------------------------------------
Outcome structure_preservation() {
  double orth = 0.0, pattern = 0.0;
  const auto ocls = StructureClass::automorphism(ScalarProduct::identity(5));
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const RMatrix q = expm(gen_structured(GenKind::SkewSymmetric, 5, seed, {}));
    orth = std::max(orth, membership(q, ocls, 0.0).residual);
    const auto u = gen_quasitriangular(10, 100.0, seed);
    const RMatrix e = matcond::apply(FunctionId::Exp, u.u);
    const double scale = frobenius_norm(e);
    for (std::size_t j = 0; j < 10; ++j)
      for (std::size_t i = j + 1; i < 10; ++i) {
        const bool allowed = i == j + 1 && u.d.d[j];
        if (!allowed) pattern = std::max(pattern, std::abs(e(i, j)) / scale);
      }
  }
  return {orth <= 1e-10 && pattern <= 1e-12, "orthogonality residual " + num(orth) + ", off-pattern " + num(pattern)};
}

// 11 ----------------------------------------------------------------------
Outcome benchmark_fidelity() {
  const auto set = benchmark_set();
  auto R = [&](std::size_t k) { return std::get<RMatrix>(set[k].a); };
  auto C = [&](std::size_t k) { return std::get<CMatrix>(set[k].a); };
  const cplx z1 = std::polar(1.0, std::numbers::pi - 1e-7), z2 = std::polar(1.0, std::numbers::pi + 1e-7);
  const double e01 = std::exp(0.1);
  std::vector<bool> spots = {
      R(0)(0, 0) == -131, R(0)(1, 2) == 54, R(0)(2, 1) == 57, R(0)(0, 0) + R(0)(1, 1) + R(0)(2, 2) == -23,
      R(1)(9, 0) == 1e-10, R(1)(0, 1) == 1, R(1)(8, 9) == 1, R(1)(0, 0) == 0,
      R(2)(0, 0) == 1.3 / 8, R(2)(3, 7) == 1e6 / 8, R(2)(7, 4) == -1.3 / 8, R(2)(4, 0) == 0,
      R(3)(0, 0) == e01, R(3)(0, 1) == 1e6 * e01, R(3)(1, 1) == 1e-8 + e01, R(3)(1, 0) == 0,
      R(4)(0, 0) == 48, R(4)(1, 2) == 100, R(4)(3, 3) == -52, R(4)(3, 0) == -50,
      C(5)(0, 0) == cplx(0, -3.5), C(5)(0, 1) == cplx(-12), C(5)(3, 4) == cplx(0), C(5)(6, 7) == cplx(12),
      C(5)(0, 7) == cplx(1),
      R(6)(0, 0) == -3.5, R(6)(7, 7) == 3, R(6)(3, 4) == 1, R(6)(0, 2) == 0,
      R(7)(0, 0) == -149, R(7)(1, 2) == 546, R(7)(2, 2) == -25,
      R(8)(0, 0) == 1 + 1e-7, R(8)(1, 1) == 1 + 1e-1, R(8)(0, 2) == 1e4, R(8)(2, 2) == 11,
      C(9)(0, 0) == z1, C(9)(1, 1) == z2, C(9)(0, 1) == cplx(1),
      C(10)(0, 0) == z1, C(10)(1, 1) == z2, C(10)(0, 1) == cplx(1000),
      C(11)(0, 0) == z1, C(11)(1, 1) == cplx(1, 1e-7) * z1, C(11)(0, 1) == cplx(1),
      C(12)(0, 0) == z1, C(12)(1, 1) == cplx(1, 1e-7) * z1, C(12)(0, 1) == cplx(1000)};
  const bool entries = std::all_of(spots.begin(), spots.end(), [](bool b) { return b; });
  bool names = set.size() >= 13;
  for (std::size_t k = 0; k < 13 && names; ++k) names = set[k].name == "A" + std::to_string(k + 1);

  const fs::path dir = work_dir("exp5");
  const int code = run_cli("experiment 5 --seed 1 --restarts 1 --max-evals 100 --out-dir \"" + dir.string() + "\"");
  std::istringstream csv(slurp(dir / "exp5.csv"));
  std::string line;
  std::getline(csv, line);
  std::size_t rows = 0, good = 0;
  std::vector<std::string> seen;
  while (std::getline(csv, line)) {
    const auto f = csv_split(line);
    ++rows;
    seen.push_back(f[0]);
    good += f.back().rfind("ok", 0) == 0;
  }
  bool all_present = rows == set.size();
  for (std::size_t k = 0; k < 13 && all_present; ++k)
    all_present = std::find(seen.begin(), seen.end(), set[k].name) != seen.end();
  const bool ok = entries && names && (code == 0 || code == 2) && all_present && 10 * good >= 9 * rows;
  return {ok, std::to_string(spots.size()) + " spot entries " + (entries ? "match" : "MISMATCH") + ", exit " +
                  std::to_string(code) + ", " + std::to_string(good) + "/" + std::to_string(rows) + " rows ok"};
}

// 12 ----------------------------------------------------------------------
Outcome determinism() {
  const fs::path d1 = work_dir("det1"), d2 = work_dir("det2");
  const std::string common = "experiment 1 --seed 42 --count 4 --restarts 1 --max-evals 100 --no-plots";
  const int c1 = run_cli(common + " --out-dir \"" + d1.string() + "\"");
  const int c2 = run_cli(common + " --jobs 2 --out-dir \"" + d2.string() + "\"");
  const std::string a = slurp(d1 / "exp1.csv"), b = slurp(d2 / "exp1.csv");
  const bool ok = (c1 == 0 || c1 == 2) && c1 == c2 && !a.empty() && a == b;
  return {ok, "exit " + std::to_string(c1) + "/" + std::to_string(c2) + ", " + std::to_string(a.size()) +
                  " bytes, " + (a == b ? "identical" : "DIFFERENT")};
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double limit_s;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> all = {
      {1, "second derivative of the square", 1, square_oracle},
      {2, "finite-difference consistency", 10, finite_difference},
      {3, "scalar tightness", 1, scalar_tightness},
      {4, "normal-matrix level-1 values", 30, normal_level1},
      {5, "projector inequalities", 300, projector_inequalities},
      {6, "structured upper bound equals dense projector form", 30, omega_equivalence},
      {7, "skew-symmetric structured lower bound", 120, skew_lower_bound},
      {8, "exp upper-bound ratio", 300, exp_ratio},
      {9, "symplectic separation", 600, symplectic_separation},
      {10, "structure preservation", 10, structure_preservation},
      {11, "benchmark fidelity", 600, benchmark_fidelity},
      {12, "determinism", 600, determinism},
  };
  int failed = 0;
  for (const auto& c : all) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_time = secs <= c.limit_s;
    const bool pass = o.pass && in_time;
    failed += !pass;
    std::cout << "criterion " << c.id << " " << (pass ? "PASS" : "FAIL") << " " << c.name << ": " << o.detail
              << " (" << num(secs) << " s" << (in_time ? "" : ", over the time limit") << ")" << std::endl;
  }
  return failed ? 1 : 0;
}
