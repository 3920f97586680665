#pragma once

// Experiment drivers: seeded test-matrix sweeps, the benchmark collection,
// CSV output and SVG scatter plots.

#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include "matcond/condition.hpp"
#include "matcond/io.hpp"
#include "matcond/structures.hpp"

namespace matcond {

struct BenchmarkMatrix {
  std::string name;
  AnyMatrix a;
  bool scale_to_10 = false;  // multiply by 10 / ||A||_1 before use
};

/// A1..A13 followed by frank, grcar, clement, lesp, redheff, smoke of order
/// gallery_n.
std::vector<BenchmarkMatrix> benchmark_set(std::size_t gallery_n = 10);

RMatrix gallery_frank(std::size_t n);
RMatrix gallery_grcar(std::size_t n, std::size_t k = 3);
RMatrix gallery_clement(std::size_t n);
RMatrix gallery_lesp(std::size_t n);
RMatrix gallery_redheff(std::size_t n);
CMatrix gallery_smoke(std::size_t n);

struct SweepGroup {
  GenKind kind;
  double tau_min = 1.0;  // log-spaced sweep over count matrices
  double tau_max = 1.0;
  bool scale_lie = false;  // Lie/Jordan kinds: rescale to spectral norm tau
};

struct ExperimentSpec {
  int id = 1;
  FunctionId function = FunctionId::Log;
  std::vector<SweepGroup> groups;  // experiments 1-3
  std::size_t n = 4;
  std::size_t count = 20;  // per group; experiment 4: number of c values
  double c_min = 2.0, c_max = 1e10;
  std::uint64_t seed = 1;
  bool lower = true;
  double eps = 1e-3;
  NmOptions nm;
  std::filesystem::path out_dir = ".";
  bool plots = true;
  std::size_t jobs = 1;  // worker threads; rows are written in input order
};

/// Defaults for experiments 1..5.
ExperimentSpec default_experiment(int id);

struct ExperimentRow {
  std::string group;  // panel the row is plotted in
  CsvRecord record;
  bool ok = false;
};

struct ExperimentResult {
  std::vector<ExperimentRow> rows;
  std::filesystem::path csv_path;
  std::vector<std::filesystem::path> svg_paths;
  std::size_t failed() const;
};

using Progress = std::function<void(std::size_t done, std::size_t total, const std::string& name)>;

/// Runs the sweep, writes exp<id>.csv (and SVG panels) into spec.out_dir.
ExperimentResult run_experiment(const ExperimentSpec& spec, const Progress& progress = {});

struct PlotSeries {
  std::string label;
  std::vector<double> x, y;
};

/// Self-contained SVG scatter plot with a logarithmic y axis.
std::string svg_plot(const std::string& title, const std::string& xlabel, bool log_x,
                     const std::vector<PlotSeries>& series);

}  // namespace matcond
