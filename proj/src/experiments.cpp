#include "matcond/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <mutex>
#include <numbers>
#include <sstream>
#include <thread>

#include "matcond/error.hpp"
#include "matcond/linalg.hpp"

namespace matcond {
namespace {

RMatrix from_rows(std::initializer_list<std::initializer_list<double>> rows) { return RMatrix(rows); }

RMatrix shift_with_corner() {
  RMatrix a(10, 10);
  for (std::size_t i = 0; i + 1 < 10; ++i) a(i, i + 1) = 1.0;
  a(9, 0) = 1e-10;
  return a;
}

RMatrix two_block_8() {
  RMatrix a(8, 8);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) {
      a(i, j) = 1.3 / 8;
      a(i, j + 4) = 1e6 / 8;
      a(i + 4, j + 4) = -1.3 / 8;
    }
  return a;
}

CMatrix imaginary_ladder() {
  CMatrix a(8, 8);
  const double super[7] = {-12, -8, -4, 0, 4, 8, 12};
  for (std::size_t i = 0; i < 8; ++i) {
    a(i, i) = cplx(0.0, -3.5 + static_cast<double>(i));
    if (i + 1 < 8) a(i, i + 1) = super[i];
    for (std::size_t j = i + 2; j < 8; ++j) a(i, j) = 1.0;
  }
  return a;
}

RMatrix real_ladder() {
  RMatrix a(8, 8);
  const double diag[8] = {-3.5, -2.5, -1.5, -0.5, 0.5, 1.5, 2.5, 3};
  for (std::size_t i = 0; i < 8; ++i) {
    a(i, i) = diag[i];
    if (i + 1 < 8) a(i, i + 1) = 1.0;
  }
  return a;
}

CMatrix near_pi_pair(double corner, bool scaled_second) {
  const cplx first = std::polar(1.0, std::numbers::pi - 1e-7);
  const cplx second = scaled_second ? cplx(1.0, 1e-7) * first : std::polar(1.0, std::numbers::pi + 1e-7);
  CMatrix a(2, 2);
  a(0, 0) = first;
  a(0, 1) = corner;
  a(1, 1) = second;
  return a;
}

std::vector<double> log_space(double lo, double hi, std::size_t count) {
  std::vector<double> v(count);
  if (count == 1) {
    v[0] = lo;
    return v;
  }
  const double a = std::log(lo), b = std::log(hi);
  for (std::size_t k = 0; k < count; ++k)
    v[k] = std::exp(a + (b - a) * static_cast<double>(k) / static_cast<double>(count - 1));
  v.back() = hi;
  return v;
}

std::string index_name(const std::string& base, std::size_t k) {
  std::string idx = std::to_string(k + 1);
  if (idx.size() < 2) idx = "0" + idx;
  return base + "-" + idx;
}

bool is_lie_or_jordan(GenKind k) {
  return k == GenKind::SkewSymmetric || k == GenKind::Symmetric || k == GenKind::Hamiltonian ||
         k == GenKind::Lie || k == GenKind::Jordan;
}

// One unit of work: builds its matrix and class lazily so that generator
// failures are recorded per row.
struct Job {
  std::string group;
  std::string name;
  std::uint64_t seed = 0;
  std::string extra;
  std::function<std::pair<AnyMatrix, StructureClass>()> build;
};

ExperimentRow run_job(const Job& job, const ExperimentSpec& spec) {
  ExperimentRow row;
  row.group = job.group;
  ReportOptions opts;
  opts.lower = spec.lower;
  opts.eps = spec.eps;
  opts.nm = spec.nm;
  opts.nm.seed = job.seed;
  try {
    auto [a, cls] = job.build();
    const CondReport r = std::visit(
        [&](const auto& m) { return full_report(spec.function, m, std::optional(cls), opts); }, a);
    row.record = to_record(r, job.name, job.seed, job.extra);
    row.ok = r.ok();
  } catch (const std::exception& e) {
    CsvRecord& rec = row.record;
    rec.name = job.name;
    rec.function = std::string(to_string(spec.function));
    rec.seed = job.seed;
    rec.status = std::string("failed: ") + e.what();
    if (!job.extra.empty()) rec.status += "; " + job.extra;
    row.ok = false;
  }
  return row;
}

std::vector<Job> make_jobs(const ExperimentSpec& spec) {
  std::vector<Job> jobs;
  if (spec.id >= 1 && spec.id <= 3) {
    for (const SweepGroup& g : spec.groups) {
      const std::string kind(to_string(g.kind));
      const auto taus = log_space(g.tau_min, g.tau_max, spec.count);
      for (std::size_t k = 0; k < spec.count; ++k) {
        Job job;
        job.group = kind;
        job.seed = spec.seed + k;
        const double tau = taus[k];
        const bool sweep = g.tau_min != g.tau_max;
        job.name = index_name(kind, k);
        if (sweep) job.name += "-tau=" + format_double(tau);
        const std::size_t n = spec.n;
        job.build = [g, n, tau, seed = job.seed]() {
          GenParams params;
          params.tau = tau;
          RMatrix a = gen_structured(g.kind, n, seed, params);
          if (g.scale_lie && is_lie_or_jordan(g.kind)) {
            const double s = spectral_norm(a);
            if (s > 0) a *= tau / s;
          }
          return std::pair<AnyMatrix, StructureClass>(std::move(a), generated_class(g.kind, n, params));
        };
        jobs.push_back(std::move(job));
      }
    }
  } else if (spec.id == 4) {
    const auto cs = log_space(spec.c_min, spec.c_max, spec.count);
    for (std::size_t k = 0; k < spec.count; ++k) {
      Job job;
      job.group = "quasi-triangular";
      job.seed = spec.seed + k;
      job.name = index_name("quasi", k) + "-c=" + format_double(cs[k]);
      job.build = [n = spec.n, c = cs[k], seed = job.seed]() {
        QuasiTriangular q = gen_quasitriangular(n, c, seed);
        return std::pair<AnyMatrix, StructureClass>(std::move(q.u),
                                                    StructureClass::quasi_triangular(q.d));
      };
      jobs.push_back(std::move(job));
    }
  } else if (spec.id == 5) {
    for (const BenchmarkMatrix& bm : benchmark_set(spec.n)) {
      Job job;
      job.group = "triangular";
      job.seed = spec.seed;
      job.name = bm.name;
      job.extra = "variant=complex-schur";
      job.build = [bm]() {
        const Schur s = std::visit(
            [&](const auto& m) {
              if (!bm.scale_to_10) return schur_complex(m);
              auto scaled = m;
              scaled *= typename std::decay_t<decltype(m)>::value_type(10.0 / norm1(m));
              return schur_complex(scaled);
            },
            bm.a);
        const std::size_t n = s.t.rows();
        CMatrix t = s.t;
        for (std::size_t j = 0; j < n; ++j)
          for (std::size_t i = j + 1; i < n; ++i) t(i, j) = 0.0;
        return std::pair<AnyMatrix, StructureClass>(
            std::move(t), StructureClass::quasi_triangular(Pattern::zeros(n)));
      };
      jobs.push_back(std::move(job));
    }
  } else {
    throw Error("experiment id must be between 1 and 5");
  }
  return jobs;
}

bool rank_axis(const std::string& group) { return group == "orthogonal" || group == "skew-symmetric"; }

void write_plots(const ExperimentSpec& spec, ExperimentResult& result) {
  std::vector<std::string> groups;
  for (const auto& row : result.rows)
    if (std::find(groups.begin(), groups.end(), row.group) == groups.end()) groups.push_back(row.group);
  for (const std::string& g : groups) {
    std::vector<const CsvRecord*> recs;
    for (const auto& row : result.rows)
      if (row.group == g) recs.push_back(&row.record);
    const bool by_rank = rank_axis(g);
    std::vector<double> x(recs.size(), std::nan(""));
    if (by_rank) {
      std::vector<std::size_t> order(recs.size());
      for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
      std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        const double va = recs[a]->ub_uscond2.value_or(INFINITY);
        const double vb = recs[b]->ub_uscond2.value_or(INFINITY);
        return va < vb;
      });
      for (std::size_t r = 0; r < order.size(); ++r) x[order[r]] = static_cast<double>(r + 1);
    } else {
      for (std::size_t k = 0; k < recs.size(); ++k) x[k] = recs[k]->kappa2.value_or(std::nan(""));
    }
    const std::pair<const char*, std::optional<double> CsvRecord::*> fields[] = {
        {"ub scond2", &CsvRecord::ub_scond2},
        {"ub uscond2", &CsvRecord::ub_uscond2},
        {"lb scond2", &CsvRecord::lb_scond2},
        {"lb uscond2", &CsvRecord::lb_uscond2}};
    std::vector<PlotSeries> series;
    for (const auto& [label, member] : fields) {
      PlotSeries s;
      s.label = label;
      for (std::size_t k = 0; k < recs.size(); ++k) {
        const auto& v = recs[k]->*member;
        if (v && std::isfinite(x[k])) {
          s.x.push_back(x[k]);
          s.y.push_back(*v);
        }
      }
      series.push_back(std::move(s));
    }
    const std::string title =
        "Experiment " + std::to_string(spec.id) + ": " + std::string(to_string(spec.function)) + ", " + g;
    const std::string svg = svg_plot(title, by_rank ? "rank of ub uscond2" : "kappa_2(A)", !by_rank, series);
    const auto path = spec.out_dir / ("exp" + std::to_string(spec.id) + "_" + g + ".svg");
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write " + path.string());
    out << svg;
    result.svg_paths.push_back(path);
  }
}

}  // namespace

RMatrix gallery_frank(std::size_t n) {
  RMatrix a(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (j + 1 >= i) a(i, j) = static_cast<double>(n - std::max(i, j));
  return a;
}

RMatrix gallery_grcar(std::size_t n, std::size_t k) {
  RMatrix a(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    if (i > 0) a(i, i - 1) = -1.0;
    for (std::size_t j = i; j < n && j <= i + k; ++j) a(i, j) = 1.0;
  }
  return a;
}

RMatrix gallery_clement(std::size_t n) {
  RMatrix a(n, n);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    a(i, i + 1) = static_cast<double>(i + 1);
    a(i + 1, i) = static_cast<double>(n - 1 - i);
  }
  return a;
}

RMatrix gallery_lesp(std::size_t n) {
  RMatrix a(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    a(i, i) = -(2.0 * static_cast<double>(i) + 5.0);
    if (i + 1 < n) {
      a(i + 1, i) = static_cast<double>(i + 2);
      a(i, i + 1) = 1.0 / static_cast<double>(i + 2);
    }
  }
  return a;
}

RMatrix gallery_redheff(std::size_t n) {
  RMatrix a(n, n);
  for (std::size_t i = 1; i <= n; ++i)
    for (std::size_t j = 1; j <= n; ++j)
      if (j == 1 || j % i == 0) a(i - 1, j - 1) = 1.0;
  return a;
}

CMatrix gallery_smoke(std::size_t n) {
  CMatrix a(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    a(k, k) = k + 1 < n ? std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(k + 1) /
                                              static_cast<double>(n))
                        : cplx(1.0);
    if (k + 1 < n) a(k, k + 1) = 1.0;
  }
  if (n > 0) a(n - 1, 0) += 1.0;
  return a;
}

std::vector<BenchmarkMatrix> benchmark_set(std::size_t gallery_n) {
  const double e01 = std::exp(0.1);
  std::vector<BenchmarkMatrix> set = {
      {"A1", from_rows({{-131, 19, 18}, {-390, 56, 54}, {-387, 57, 52}})},
      {"A2", shift_with_corner()},
      {"A3", two_block_8()},
      {"A4", from_rows({{e01, 1e6 * e01}, {0, 1e-8 + e01}})},
      {"A5", from_rows({{48, -49, 50, 49}, {0, -2, 100, 0}, {0, -1, -2, 1}, {-50, 50, 50, -52}})},
      {"A6", imaginary_ladder()},
      {"A7", real_ladder()},
      {"A8", from_rows({{-149, -50, -154}, {537, 180, 546}, {-27, -9, -25}})},
      {"A9", from_rows({{1 + 1e-7, 1e5, 1e4}, {0, 1 + 1e-1, 1e5}, {0, 0, 11}})},
      {"A10", near_pi_pair(1.0, false)},
      {"A11", near_pi_pair(1000.0, false)},
      {"A12", near_pi_pair(1.0, true)},
      {"A13", near_pi_pair(1000.0, true)},
      {"frank", gallery_frank(gallery_n)},
      {"grcar", gallery_grcar(gallery_n)},
      {"clement", gallery_clement(gallery_n)},
      {"lesp", gallery_lesp(gallery_n)},
      {"redheff", gallery_redheff(gallery_n)},
      {"smoke", gallery_smoke(gallery_n)},
  };
  return set;
}

ExperimentSpec default_experiment(int id) {
  ExperimentSpec s;
  s.id = id;
  switch (id) {
    case 1:
    case 2:
      s.function = id == 1 ? FunctionId::Log : FunctionId::Sqrt;
      s.groups = {{GenKind::Orthogonal, 0.3, 3.0},
                  {GenKind::Symplectic, 0.5, 10.0},
                  {GenKind::Perplectic, 0.5, 10.0}};
      break;
    case 3:
      s.function = FunctionId::Exp;
      s.groups = {{GenKind::SkewSymmetric}, {GenKind::Hamiltonian}};
      break;
    case 4:
      s.function = FunctionId::Exp;
      s.n = 10;
      s.count = 12;
      s.nm.max_evals = 200;
      break;
    case 5:
      s.function = FunctionId::Exp;
      s.n = 10;
      s.count = 0;
      s.nm.max_evals = 200;
      break;
    default:
      throw Error("experiment id must be between 1 and 5");
  }
  return s;
}

std::size_t ExperimentResult::failed() const {
  return static_cast<std::size_t>(std::count_if(rows.begin(), rows.end(), [](const auto& r) { return !r.ok; }));
}

ExperimentResult run_experiment(const ExperimentSpec& spec, const Progress& progress) {
  if (spec.id < 1 || spec.id > 5) throw Error("experiment id must be between 1 and 5");
  if (spec.id != 5 && spec.count == 0) throw Error("experiment count must be positive");
  if (!(spec.eps > 0)) throw Error("eps must be positive");
  spec.nm.validate();
  std::filesystem::create_directories(spec.out_dir);

  const std::vector<Job> jobs = make_jobs(spec);
  ExperimentResult result;
  result.rows.resize(jobs.size());
  std::atomic<std::size_t> next{0}, done{0};
  std::mutex progress_mutex;
  auto worker = [&] {
    for (std::size_t k; (k = next.fetch_add(1)) < jobs.size();) {
      result.rows[k] = run_job(jobs[k], spec);
      const std::size_t d = ++done;
      if (progress) {
        std::lock_guard lock(progress_mutex);
        progress(d, jobs.size(), jobs[k].name);
      }
    }
  };
  const std::size_t workers = std::clamp<std::size_t>(spec.jobs, 1, std::max<std::size_t>(1, jobs.size()));
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(worker);
  }

  result.csv_path = spec.out_dir / ("exp" + std::to_string(spec.id) + ".csv");
  std::ofstream out(result.csv_path, std::ios::binary);
  if (!out) throw Error("cannot write " + result.csv_path.string());
  out << csv_header() << '\n';
  for (const auto& row : result.rows) out << csv_line(row.record) << '\n';
  out.close();
  if (!out) throw Error("failed writing " + result.csv_path.string());
  if (spec.plots) write_plots(spec, result);
  return result;
}

namespace {

std::string svg_num(double v) {
  std::ostringstream s;
  s.precision(4);
  s << v;
  return s.str();
}

std::string xml_escape(const std::string& text) {
  std::string out;
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

std::string svg_plot(const std::string& title, const std::string& xlabel, bool log_x,
                     const std::vector<PlotSeries>& series) {
  constexpr double W = 640, H = 440, L = 70, R = 150, T = 40, B = 50;
  const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b"};
  const char* shapes[] = {"circle", "square", "triangle", "cross"};

  double xmin = INFINITY, xmax = -INFINITY, ymin = INFINITY, ymax = -INFINITY;
  for (const auto& s : series)
    for (std::size_t k = 0; k < s.x.size(); ++k) {
      const double x = s.x[k], y = s.y[k];
      if (!(y > 0) || !std::isfinite(y) || !std::isfinite(x) || (log_x && !(x > 0))) continue;
      const double tx = log_x ? std::log10(x) : x, ty = std::log10(y);
      xmin = std::min(xmin, tx);
      xmax = std::max(xmax, tx);
      ymin = std::min(ymin, ty);
      ymax = std::max(ymax, ty);
    }
  if (!std::isfinite(xmin)) xmin = 0, xmax = 1, ymin = 0, ymax = 1;
  ymin = std::floor(ymin);
  ymax = std::ceil(ymax);
  if (ymax <= ymin) ymax = ymin + 1;
  if (log_x) {
    xmin = std::floor(xmin);
    xmax = std::ceil(xmax);
  }
  if (xmax <= xmin) xmin -= 0.5, xmax += 0.5;
  const double pw = W - L - R, ph = H - T - B;
  auto px = [&](double tx) { return L + (tx - xmin) / (xmax - xmin) * pw; };
  auto py = [&](double ty) { return T + ph - (ty - ymin) / (ymax - ymin) * ph; };

  std::ostringstream o;
  o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
    << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  o << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  o << "<text x=\"" << W / 2 << "\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">" << xml_escape(title)
    << "</text>\n";
  o << "<rect x=\"" << L << "\" y=\"" << T << "\" width=\"" << pw << "\" height=\"" << ph
    << "\" fill=\"none\" stroke=\"black\"/>\n";

  const int ystep = std::max(1, static_cast<int>(std::ceil((ymax - ymin) / 8)));
  for (int e = static_cast<int>(ymin); e <= static_cast<int>(ymax); e += ystep) {
    const double y = py(e);
    o << "<line x1=\"" << L << "\" y1=\"" << y << "\" x2=\"" << L + pw << "\" y2=\"" << y
      << "\" stroke=\"#ddd\"/>\n";
    o << "<text x=\"" << L - 6 << "\" y=\"" << y + 4 << "\" text-anchor=\"end\">1e" << e << "</text>\n";
  }
  if (log_x) {
    const int xstep = std::max(1, static_cast<int>(std::ceil((xmax - xmin) / 8)));
    for (int e = static_cast<int>(xmin); e <= static_cast<int>(xmax); e += xstep)
      o << "<text x=\"" << px(e) << "\" y=\"" << T + ph + 18 << "\" text-anchor=\"middle\">1e" << e
        << "</text>\n";
  } else {
    for (int k = 0; k <= 5; ++k) {
      const double v = xmin + (xmax - xmin) * k / 5.0;
      o << "<text x=\"" << px(v) << "\" y=\"" << T + ph + 18 << "\" text-anchor=\"middle\">" << svg_num(v)
        << "</text>\n";
    }
  }
  o << "<text x=\"" << L + pw / 2 << "\" y=\"" << H - 12 << "\" text-anchor=\"middle\">" << xml_escape(xlabel)
    << "</text>\n";

  for (std::size_t s = 0; s < series.size(); ++s) {
    const char* color = colors[s % 6];
    const std::string shape = shapes[s % 4];
    auto marker = [&](double x, double y) {
      if (shape == "circle")
        o << "<circle cx=\"" << x << "\" cy=\"" << y << "\" r=\"3.5\" fill=\"none\" stroke=\"" << color
          << "\"/>\n";
      else if (shape == "square")
        o << "<rect x=\"" << x - 3 << "\" y=\"" << y - 3 << "\" width=\"6\" height=\"6\" fill=\"none\" stroke=\""
          << color << "\"/>\n";
      else if (shape == "triangle")
        o << "<polygon points=\"" << x << "," << y - 4 << " " << x - 4 << "," << y + 3 << " " << x + 4 << ","
          << y + 3 << "\" fill=\"none\" stroke=\"" << color << "\"/>\n";
      else
        o << "<path d=\"M" << x - 3.5 << "," << y - 3.5 << "L" << x + 3.5 << "," << y + 3.5 << "M" << x - 3.5
          << "," << y + 3.5 << "L" << x + 3.5 << "," << y - 3.5 << "\" stroke=\"" << color << "\"/>\n";
    };
    for (std::size_t k = 0; k < series[s].x.size(); ++k) {
      const double x = series[s].x[k], y = series[s].y[k];
      if (!(y > 0) || !std::isfinite(y) || !std::isfinite(x) || (log_x && !(x > 0))) continue;
      marker(px(log_x ? std::log10(x) : x), py(std::log10(y)));
    }
    const double ly = T + 10 + 20.0 * static_cast<double>(s);
    marker(L + pw + 18, ly);
    o << "<text x=\"" << L + pw + 30 << "\" y=\"" << ly + 4 << "\">" << xml_escape(series[s].label)
      << "</text>\n";
  }
  o << "</svg>\n";
  return o.str();
}

}  // namespace matcond
