// matcond: generate structured matrices, compute condition reports, and run
// the experiment sweeps.

#include <CLI11.hpp>

#include <charconv>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "matcond/error.hpp"
#include "matcond/experiments.hpp"
#include "matcond/io.hpp"
#include "matcond/linalg.hpp"

namespace {

using namespace matcond;

constexpr int kOk = 0;
constexpr int kFatal = 1;
constexpr int kPartial = 2;

struct Common {
  std::optional<std::uint64_t> seed;
  double eps = 1e-3;
  std::size_t restarts = 5;
  bool no_lower = false;
  std::size_t max_iters = 0;
  std::size_t max_evals = 0;
};

void add_common(CLI::App* app, Common& c) {
  app->add_option("--seed", c.seed, "random seed (falls back to MATCOND_SEED, then 1)");
  app->add_option("--eps", c.eps, "finite-difference step of the lower bound")->check(CLI::PositiveNumber);
  app->add_option("--restarts", c.restarts, "Nelder-Mead restarts")->check(CLI::PositiveNumber);
  app->add_flag("--no-lower", c.no_lower, "skip the optimizer lower bounds");
  app->add_option("--max-iters", c.max_iters, "Nelder-Mead iterations per restart (0: 200*dim)");
  app->add_option("--max-evals", c.max_evals, "objective evaluations per restart (0: 200*dim)");
}

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& flag) {
  if (flag) return *flag;
  if (const char* env = std::getenv("MATCOND_SEED"); env && *env) {
    std::uint64_t v = 0;
    const char* end = env + std::strlen(env);
    const auto [p, ec] = std::from_chars(env, end, v);
    if (ec != std::errc() || p != end) throw ParseError(std::string("MATCOND_SEED is not an integer: ") + env);
    return v;
  }
  return 1;
}

NmOptions nm_options(const Common& c, NmOptions nm) {
  nm.restarts = c.restarts;
  if (c.max_iters) nm.max_iters = c.max_iters;
  if (c.max_evals) nm.max_evals = c.max_evals;
  return nm;
}

FunctionId require_function(const std::string& name) {
  const auto f = parse_function(name);
  if (!f || (*f != FunctionId::Exp && *f != FunctionId::Log && *f != FunctionId::Sqrt))
    throw ParseError("unknown function '" + name + "' (exp, log, sqrt)");
  return *f;
}

// gen ---------------------------------------------------------------------

struct GenArgs {
  std::string kind;
  std::size_t n = 4;
  double tau = 1.0;
  double c = 1e4;
  std::string m;
  std::string out;
  std::optional<std::uint64_t> seed;
};

int cmd_gen(const GenArgs& g) {
  const std::uint64_t seed = resolve_seed(g.seed);
  AnyMatrix a;
  std::string d;
  if (g.kind == "quasi-triangular" || g.kind == "quasi") {
    QuasiTriangular q = gen_quasitriangular(g.n, g.c, seed);
    d = q.d.str();
    a = std::move(q.u);
  } else {
    const auto kind = parse_gen_kind(g.kind);
    if (!kind) throw ParseError("unknown generator kind '" + g.kind + "'");
    GenParams params;
    params.tau = g.tau;
    if (!g.m.empty()) params.sp = parse_structure("lie:" + g.m, g.n).sp;
    a = gen_structured(*kind, g.n, seed, params);
  }
  if (g.out.empty() || g.out == "-") {
    std::visit([](const auto& m) { write_matrix(std::cout, m); }, a);
  } else {
    write_matrix_file(g.out, a);
  }
  if (!d.empty()) std::cerr << "d_pattern " << d << '\n';
  return kOk;
}

// cond --------------------------------------------------------------------

struct CondArgs {
  std::string path;
  std::string function = "exp";
  std::string structure;
  std::string name;
  Common common;
};

int cmd_cond(const CondArgs& c) {
  const FunctionId f = require_function(c.function);
  const AnyMatrix a = c.path == "-" ? read_matrix(std::cin) : read_matrix_file(c.path);
  const std::size_t n = std::visit([](const auto& m) { return m.rows(); }, a);
  std::optional<StructureClass> cls;
  if (!c.structure.empty() && c.structure != "none") cls = parse_structure(c.structure, n);

  ReportOptions opts;
  opts.lower = !c.common.no_lower;
  opts.eps = c.common.eps;
  opts.nm = nm_options(c.common, {});
  const std::uint64_t seed = resolve_seed(c.common.seed);
  opts.nm.seed = seed;

  const CondReport r = std::visit([&](const auto& m) { return full_report(f, m, cls, opts); }, a);
  const std::string name = c.name.empty() ? std::filesystem::path(c.path).filename().string() : c.name;
  std::cout << csv_header() << '\n' << csv_line(to_record(r, name, seed)) << '\n';
  return r.ok() ? kOk : kPartial;
}

// experiment --------------------------------------------------------------

struct ExpArgs {
  int id = 1;
  std::string function;
  std::string structure;
  std::optional<std::size_t> n, count;
  std::optional<double> tau_min, tau_max, c_min, c_max;
  std::string out_dir = ".";
  std::size_t jobs = 1;
  bool no_plots = false;
  bool quiet = false;
  Common common;
};

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream in(s);
  for (std::string item; std::getline(in, item, ',');)
    if (!item.empty()) out.push_back(item);
  return out;
}

int cmd_experiment(const ExpArgs& e) {
  ExperimentSpec spec = default_experiment(e.id);
  if (!e.function.empty()) spec.function = require_function(e.function);
  if (e.n) spec.n = *e.n;
  if (e.count) spec.count = *e.count;
  if (e.c_min) spec.c_min = *e.c_min;
  if (e.c_max) spec.c_max = *e.c_max;
  if (!e.structure.empty()) {
    if (e.id > 3) throw ParseError("--structure applies to experiments 1-3 only");
    std::vector<SweepGroup> groups;
    for (const std::string& item : split_list(e.structure)) {
      const auto kind = parse_gen_kind(item);
      if (!kind) throw ParseError("unknown structure kind '" + item + "'");
      auto it = std::find_if(spec.groups.begin(), spec.groups.end(),
                             [&](const SweepGroup& g) { return g.kind == *kind; });
      groups.push_back(it != spec.groups.end() ? *it : SweepGroup{*kind});
    }
    spec.groups = std::move(groups);
  }
  for (auto& g : spec.groups) {
    if (e.tau_min) g.tau_min = *e.tau_min;
    if (e.tau_max) g.tau_max = *e.tau_max;
  }
  spec.seed = resolve_seed(e.common.seed);
  spec.eps = e.common.eps;
  spec.lower = !e.common.no_lower;
  spec.nm = nm_options(e.common, spec.nm);
  spec.out_dir = e.out_dir;
  spec.plots = !e.no_plots;
  spec.jobs = e.jobs;

  Progress progress;
  if (!e.quiet)
    progress = [](std::size_t done, std::size_t total, const std::string& name) {
      std::cerr << "[" << done << "/" << total << "] " << name << '\n';
    };
  const ExperimentResult res = run_experiment(spec, progress);
  std::cerr << "wrote " << res.csv_path.string() << " (" << res.rows.size() << " rows, " << res.failed()
            << " not ok)\n";
  for (const auto& p : res.svg_paths) std::cerr << "wrote " << p.string() << '\n';
  return res.failed() ? kPartial : kOk;
}

// benchmarks --------------------------------------------------------------

struct BenchArgs {
  std::size_t n = 10;
  std::string out_dir;
};

int cmd_benchmarks(const BenchArgs& b) {
  if (!b.out_dir.empty()) std::filesystem::create_directories(b.out_dir);
  for (const BenchmarkMatrix& bm : benchmark_set(b.n)) {
    const bool complex = std::holds_alternative<CMatrix>(bm.a);
    const std::size_t n = std::visit([](const auto& m) { return m.rows(); }, bm.a);
    std::cout << bm.name << ' ' << n << ' ' << (complex ? "complex" : "real")
              << (bm.scale_to_10 ? " scaled" : "") << '\n';
    if (!b.out_dir.empty())
      write_matrix_file(std::filesystem::path(b.out_dir) / (bm.name + ".txt"), bm.a);
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Level-1 and level-2 condition numbers of exp, log and sqrt, structured and unstructured."};
  app.require_subcommand(1);

  GenArgs gen;
  auto* g = app.add_subcommand("gen", "generate a structured test matrix");
  g->add_option("--kind", gen.kind,
                "skew-symmetric, symmetric, hamiltonian, orthogonal, symplectic, perplectic, lie, "
                "jordan, automorphism, quasi-triangular")
      ->required();
  g->add_option("--n", gen.n, "order")->check(CLI::PositiveNumber);
  g->add_option("--seed", gen.seed, "random seed (falls back to MATCOND_SEED, then 1)");
  g->add_option("--tau", gen.tau, "group generators: norm of the Lie algebra element");
  g->add_option("--c", gen.c, "quasi-triangular: spread of the eigenvalue real parts");
  g->add_option("--m", gen.m, "scalar product for lie/jordan/automorphism: I, sigma<p>, R, J");
  g->add_option("-o,--out", gen.out, "output file (default: standard output)");

  CondArgs cond;
  auto* c = app.add_subcommand("cond", "condition report for a matrix file, as one CSV row");
  c->add_option("matrix", cond.path, "matrix file, or - for standard input")->required();
  c->add_option("--function", cond.function, "exp, log or sqrt");
  c->add_option("--structure", cond.structure,
                "jordan:<M>, lie:<M>, automorphism:<M>, quasi:<d> or triangular; M is I, sigma<p>, R or J");
  c->add_option("--name", cond.name, "row name (default: file name)");
  add_common(c, cond.common);

  ExpArgs ex;
  auto* e = app.add_subcommand("experiment", "run experiment 1-5, writing CSV and SVG files");
  e->add_option("id", ex.id, "experiment number")->required()->check(CLI::Range(1, 5));
  e->add_option("--function", ex.function, "override the function");
  e->add_option("--structure", ex.structure, "comma separated generator kinds (experiments 1-3)");
  e->add_option("--n", ex.n, "matrix order (experiment 5: gallery order)")->check(CLI::PositiveNumber);
  e->add_option("--count", ex.count, "matrices per structure (experiment 4: c values)")
      ->check(CLI::PositiveNumber);
  e->add_option("--tau-min", ex.tau_min, "lower end of the tau sweep")->check(CLI::PositiveNumber);
  e->add_option("--tau-max", ex.tau_max, "upper end of the tau sweep")->check(CLI::PositiveNumber);
  e->add_option("--c-min", ex.c_min, "experiment 4: smallest c")->check(CLI::PositiveNumber);
  e->add_option("--c-max", ex.c_max, "experiment 4: largest c")->check(CLI::PositiveNumber);
  e->add_option("--out-dir", ex.out_dir, "output directory");
  e->add_option("--jobs", ex.jobs, "worker threads")->check(CLI::PositiveNumber);
  e->add_flag("--no-plots", ex.no_plots, "skip the SVG files");
  e->add_flag("-q,--quiet", ex.quiet, "no progress lines");
  add_common(e, ex.common);

  BenchArgs bench;
  auto* b = app.add_subcommand("benchmarks", "list the benchmark matrices");
  b->add_option("--n", bench.n, "order of the gallery matrices")->check(CLI::PositiveNumber);
  b->add_option("--out-dir", bench.out_dir, "write each matrix to <dir>/<name>.txt");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& err) {
    const int code = app.exit(err);
    return code == 0 ? kOk : kFatal;
  }

  try {
    if (*g) return cmd_gen(gen);
    if (*c) return cmd_cond(cond);
    if (*e) return cmd_experiment(ex);
    if (*b) return cmd_benchmarks(bench);
  } catch (const MembershipError& err) {
    std::cerr << "error: " << err.what() << " (residual " << format_double(err.residual()) << ")\n";
    return kFatal;
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << '\n';
    return kFatal;
  }
  return kFatal;
}
