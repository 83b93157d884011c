#include "bagmres/matrix_market.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace bagmres {

namespace {

[[noreturn]] void fail(index_t line, const std::string& what) {
  throw Error(ErrorCode::parse_error,
              "matrix market, line " + std::to_string(line) + ": " + what);
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return s;
}

bool next_content_line(std::istream& in, std::string& out, index_t& line_no) {
  while (std::getline(in, out)) {
    ++line_no;
    const auto pos = out.find_first_not_of(" \t\r");
    if (pos == std::string::npos) continue;  // blank
    if (out[pos] == '%') continue;           // comment
    return true;
  }
  return false;
}

}  // namespace

SparseMatrix parse_matrix_market(std::istream& in) {
  std::string line;
  index_t line_no = 0;
  if (!std::getline(in, line)) fail(1, "empty input");
  ++line_no;

  std::istringstream header(line);
  std::string banner, object, format, field, qualifier;
  header >> banner >> object >> format >> field >> qualifier;
  if (banner != "%%MatrixMarket") fail(line_no, "missing %%MatrixMarket banner");
  if (lower(object) != "matrix") fail(line_no, "unsupported object '" + object + "'");
  if (lower(format) != "coordinate")
    fail(line_no, "unsupported format '" + format + "' (coordinate only)");
  field = lower(field);
  qualifier = lower(qualifier);
  if (field != "real" && field != "integer")
    fail(line_no, "unsupported field '" + field + "'");
  const bool symmetric = qualifier == "symmetric";
  const bool skew = qualifier == "skew-symmetric";
  if (!symmetric && !skew && qualifier != "general")
    fail(line_no, "unsupported qualifier '" + qualifier + "'");

  if (!next_content_line(in, line, line_no)) fail(line_no + 1, "missing size line");
  std::istringstream size_line(line);
  long long rows = 0, cols = 0, entries = 0;
  if (!(size_line >> rows >> cols >> entries) || rows < 0 || cols < 0 || entries < 0)
    fail(line_no, "malformed size line '" + line + "'");

  std::vector<Triplet> triplets;
  triplets.reserve(static_cast<index_t>(entries) * ((symmetric || skew) ? 2 : 1));
  for (long long k = 0; k < entries; ++k) {
    if (!next_content_line(in, line, line_no))
      fail(line_no + 1, "unexpected end of input, expected " +
                            std::to_string(entries) + " entries");
    std::istringstream entry(line);
    long long i = 0, j = 0;
    double v = 0.0;
    if (!(entry >> i >> j >> v))
      fail(line_no, "malformed entry '" + line + "'");
    if (i < 1 || i > rows || j < 1 || j > cols)
      fail(line_no, "index out of range in '" + line + "'");
    if (!std::isfinite(v)) fail(line_no, "non-finite value in '" + line + "'");
    const index_t r = static_cast<index_t>(i - 1);
    const index_t c = static_cast<index_t>(j - 1);
    triplets.push_back({r, c, v});
    if (r != c) {
      if (symmetric) triplets.push_back({c, r, v});
      if (skew) triplets.push_back({c, r, -v});
    }
  }
  return SparseMatrix(static_cast<index_t>(rows), static_cast<index_t>(cols),
                      std::move(triplets));
}

SparseMatrix parse_matrix_market(const std::string& text) {
  std::istringstream in(text);
  return parse_matrix_market(in);
}

SparseMatrix read_matrix_market_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::io_error, "cannot open '" + path + "'");
  return parse_matrix_market(in);
}

std::string emit_matrix_market(const SparseMatrix& a) {
  std::ostringstream out;
  out << "%%MatrixMarket matrix coordinate real general\n";
  out << a.n_rows() << " " << a.n_cols() << " " << a.nnz() << "\n";
  out.precision(17);
  for (index_t i = 0; i < a.n_rows(); ++i)
    for (index_t k = a.row_offsets()[i]; k < a.row_offsets()[i + 1]; ++k)
      out << (i + 1) << " " << (a.col_indices()[k] + 1) << " " << a.values()[k]
          << "\n";
  return out.str();
}

void write_matrix_market_file(const SparseMatrix& a, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::io_error, "cannot open '" + path + "' for writing");
  out << emit_matrix_market(a);
}

}  // namespace bagmres
