/// @file matrix_market.hpp
/// @brief Matrix Market coordinate-format ingestion and emission.

#ifndef BAGMRES_MATRIX_MARKET_HPP
#define BAGMRES_MATRIX_MARKET_HPP

#include <iosfwd>
#include <string>

#include "bagmres/sparse.hpp"

namespace bagmres {

/// Parse coordinate-format Matrix Market input.  Accepts fields "real"
/// and "integer" with qualifiers "general", "symmetric" and
/// "skew-symmetric" (expanded to explicit entries).  Parse errors name
/// the offending line.
SparseMatrix parse_matrix_market(std::istream& in);
SparseMatrix parse_matrix_market(const std::string& text);
SparseMatrix read_matrix_market_file(const std::string& path);

/// Emit coordinate "real general" with 1-based indices and 17 significant
/// digits, so parse(emit(A)) reproduces A exactly.
std::string emit_matrix_market(const SparseMatrix& a);
void write_matrix_market_file(const SparseMatrix& a, const std::string& path);

}  // namespace bagmres

#endif  // BAGMRES_MATRIX_MARKET_HPP
