#include "matcond/io.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "matcond/error.hpp"

namespace matcond {
namespace {

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    std::size_t j = i;
    while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

bool blank(std::string_view line) {
  for (char c : line)
    if (!std::isspace(static_cast<unsigned char>(c))) return false;
  return true;
}

std::string opt_field(const std::optional<double>& v) { return v ? format_double(*v) : std::string(); }

}  // namespace

std::string format_double(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

std::string format_complex(cplx z) {
  std::string s = format_double(z.real());
  const double im = z.imag();
  if (std::signbit(im)) {
    s += format_double(im);
  } else {
    s += '+';
    s += format_double(im);
  }
  s += 'i';
  return s;
}

double parse_double(std::string_view token) {
  double x = 0.0;
  const char* first = token.data();
  const char* last = first + token.size();
  if (first != last && *first == '+') ++first;
  const auto res = std::from_chars(first, last, x);
  if (res.ec != std::errc() || res.ptr != last || first == last)
    throw ParseError("bad number '" + std::string(token) + "'");
  return x;
}

cplx parse_complex(std::string_view token) {
  if (token.empty()) throw ParseError("empty complex entry");
  if (token.back() != 'i') return {parse_double(token), 0.0};
  const std::string_view body = token.substr(0, token.size() - 1);
  // Split at the last sign that does not belong to an exponent.
  std::size_t split = std::string_view::npos;
  for (std::size_t k = body.size(); k-- > 1;) {
    if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
      split = k;
      break;
    }
  }
  if (split == std::string_view::npos) {
    if (body.empty() || body == "+" || body == "-")
      return {0.0, body == "-" ? -1.0 : 1.0};
    return {0.0, parse_double(body)};
  }
  const std::string_view re = body.substr(0, split), im = body.substr(split);
  const double imv = (im == "+" || im == "-") ? (im == "-" ? -1.0 : 1.0) : parse_double(im);
  return {parse_double(re), imv};
}

AnyMatrix read_matrix(std::istream& in) {
  std::string line;
  std::size_t lineno = 0;
  auto next_line = [&]() -> bool {
    while (std::getline(in, line)) {
      ++lineno;
      if (!blank(line)) return true;
    }
    return false;
  };
  if (!next_line()) throw ParseError("matrix file is empty");
  const auto head = split_ws(line);
  if (head.size() < 2 || head.size() > 3) throw ParseError("header must be 'rows cols [real|complex]'");
  std::size_t rows = 0, cols = 0;
  for (auto [tok, dst] : {std::pair{head[0], &rows}, std::pair{head[1], &cols}}) {
    const auto res = std::from_chars(tok.data(), tok.data() + tok.size(), *dst);
    if (res.ec != std::errc() || res.ptr != tok.data() + tok.size())
      throw ParseError("bad dimension '" + std::string(tok) + "'");
  }
  bool is_complex = false;
  if (head.size() == 3) {
    if (head[2] == "complex")
      is_complex = true;
    else if (head[2] != "real")
      throw ParseError("element type must be 'real' or 'complex'");
  }
  RMatrix r(is_complex ? 0 : rows, is_complex ? 0 : cols);
  CMatrix c(is_complex ? rows : 0, is_complex ? cols : 0);
  for (std::size_t i = 0; i < rows; ++i) {
    if (!next_line()) throw ParseError("expected " + std::to_string(rows) + " rows, got " + std::to_string(i));
    const auto toks = split_ws(line);
    if (toks.size() != cols)
      throw ParseError("line " + std::to_string(lineno) + ": expected " + std::to_string(cols) +
                       " entries, got " + std::to_string(toks.size()));
    for (std::size_t j = 0; j < cols; ++j) {
      if (is_complex)
        c(i, j) = parse_complex(toks[j]);
      else
        r(i, j) = parse_double(toks[j]);
    }
  }
  if (next_line()) throw ParseError("trailing content after " + std::to_string(rows) + " rows");
  if (is_complex) return c;
  return r;
}

AnyMatrix read_matrix_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path.string());
  return read_matrix(in);
}

void write_matrix(std::ostream& out, const RMatrix& a) {
  out << a.rows() << ' ' << a.cols() << " real\n";
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) out << (j ? " " : "") << format_double(a(i, j));
    out << '\n';
  }
}

void write_matrix(std::ostream& out, const CMatrix& a) {
  out << a.rows() << ' ' << a.cols() << " complex\n";
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) out << (j ? " " : "") << format_complex(a(i, j));
    out << '\n';
  }
}

void write_matrix_file(const std::filesystem::path& path, const AnyMatrix& a) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  std::visit([&](const auto& m) { write_matrix(out, m); }, a);
  if (!out) throw Error("write failed for " + path.string());
}

const std::vector<std::string>& csv_columns() {
  static const std::vector<std::string> cols = {
      "name",       "function",   "structure",  "n",   "d_pattern", "kappa2", "cond1_u", "cond1_s",
      "ub_uscond2", "ub_scond2",  "lb_uscond2", "lb_scond2", "eps", "seed",  "status"};
  return cols;
}

std::string csv_header() {
  std::string s;
  for (const auto& c : csv_columns()) s += (s.empty() ? "" : ",") + c;
  return s;
}

std::string csv_escape(std::string_view field) {
  if (field.find_first_of(",\"\n\r") == std::string_view::npos) return std::string(field);
  std::string s = "\"";
  for (char c : field) {
    if (c == '"') s += '"';
    s += c;
  }
  s += '"';
  return s;
}

CsvRecord to_record(const CondReport& r, std::string name, std::uint64_t seed,
                    std::string_view extra_status) {
  CsvRecord rec;
  rec.name = std::move(name);
  rec.function = std::string(to_string(r.function));
  rec.structure = r.structure ? r.structure->name() : "none";
  rec.n = r.n;
  if (r.structure && r.structure->kind == ClassKind::QuasiTriangular) rec.d_pattern = r.structure->pattern.str();
  rec.kappa2 = r.kappa2;
  rec.cond1_u = r.cond1_u;
  rec.cond1_s = r.cond1_s;
  rec.ub_uscond2 = r.ub_uscond2;
  rec.ub_scond2 = r.ub_scond2;
  rec.lb_uscond2 = r.lb_uscond2;
  rec.lb_scond2 = r.lb_scond2;
  rec.eps = r.eps;
  rec.seed = seed;
  std::string status = r.ok() ? "ok" : "partial";
  for (const auto& f : r.failures) status += "; " + f;
  if (!extra_status.empty()) status += "; " + std::string(extra_status);
  rec.status = status;
  return rec;
}

std::string csv_line(const CsvRecord& rec) {
  const std::vector<std::string> fields = {
      csv_escape(rec.name),      csv_escape(rec.function),  csv_escape(rec.structure),
      std::to_string(rec.n),     csv_escape(rec.d_pattern), opt_field(rec.kappa2),
      opt_field(rec.cond1_u),    opt_field(rec.cond1_s),    opt_field(rec.ub_uscond2),
      opt_field(rec.ub_scond2),  opt_field(rec.lb_uscond2), opt_field(rec.lb_scond2),
      opt_field(rec.eps),        std::to_string(rec.seed),  csv_escape(rec.status)};
  std::string s;
  for (std::size_t k = 0; k < fields.size(); ++k) s += (k ? "," : "") + fields[k];
  return s;
}

std::vector<std::string> csv_split(std::string_view line) {
  std::vector<std::string> out(1);
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        out.back() += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        out.back() += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      out.emplace_back();
    } else {
      out.back() += c;
    }
  }
  return out;
}

}  // namespace matcond
