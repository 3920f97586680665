#pragma once

// Matrix text files and CSV report rows.
//
// Matrix file: a header line "rows cols [real|complex]" followed by one line
// per row of whitespace separated entries.  Complex entries are written
// "a+bi" or "a-bi" without spaces.  Numbers use the shortest decimal form
// that reads back to the same double.

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "matcond/condition.hpp"
#include "matcond/matrix.hpp"

namespace matcond {

using AnyMatrix = std::variant<RMatrix, CMatrix>;

std::string format_double(double x);
std::string format_complex(cplx z);
double parse_double(std::string_view token);
cplx parse_complex(std::string_view token);

AnyMatrix read_matrix(std::istream& in);
AnyMatrix read_matrix_file(const std::filesystem::path& path);
void write_matrix(std::ostream& out, const RMatrix& a);
void write_matrix(std::ostream& out, const CMatrix& a);
void write_matrix_file(const std::filesystem::path& path, const AnyMatrix& a);

/// Fixed column order: name, function, structure, n, d_pattern, kappa2,
/// cond1_u, cond1_s, ub_uscond2, ub_scond2, lb_uscond2, lb_scond2, eps, seed,
/// status.
const std::vector<std::string>& csv_columns();
std::string csv_header();
std::string csv_escape(std::string_view field);

struct CsvRecord {
  std::string name;
  std::string function;
  std::string structure;  // class name, or "none"
  std::size_t n = 0;
  std::string d_pattern;
  std::optional<double> kappa2, cond1_u, cond1_s, ub_uscond2, ub_scond2, lb_uscond2, lb_scond2;
  std::optional<double> eps;
  std::uint64_t seed = 0;
  std::string status;
};

CsvRecord to_record(const CondReport& r, std::string name, std::uint64_t seed,
                    std::string_view extra_status = {});
std::string csv_line(const CsvRecord& rec);

/// Splits one CSV line honoring double quotes.
std::vector<std::string> csv_split(std::string_view line);

}  // namespace matcond
