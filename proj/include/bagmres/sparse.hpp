/// @file sparse.hpp
/// @brief CSR sparse matrix, the derived splittings and the synthetic
///        test-matrix generators.

#ifndef BAGMRES_SPARSE_HPP
#define BAGMRES_SPARSE_HPP

#include <cstdint>
#include <tuple>

#include "bagmres/dense.hpp"
#include "bagmres/types.hpp"

namespace bagmres {

struct Triplet {
  index_t row;
  index_t col;
  double value;
};

/// Compressed-row sparse matrix.  Immutable after construction: rows are
/// sorted, duplicate coordinates are summed, entries are validated finite
/// and in range.
class SparseMatrix {
 public:
  SparseMatrix() = default;
  SparseMatrix(index_t n_rows, index_t n_cols, std::vector<Triplet> entries);

  index_t n_rows() const { return n_rows_; }
  index_t n_cols() const { return n_cols_; }
  index_t nnz() const { return values_.size(); }

  const std::vector<index_t>& row_offsets() const { return row_offsets_; }
  const std::vector<index_t>& col_indices() const { return col_indices_; }
  const Vector& values() const { return values_; }

  /// y = A x
  Vector apply(const Vector& x) const;
  /// x = A^T y
  Vector apply_transpose(const Vector& y) const;

  /// Entry lookup (binary search within the row); 0 when absent.
  double at(index_t i, index_t j) const;

  SparseMatrix transposed() const;

  /// Dense copy; refuses matrices beyond `cap` rows/cols.
  DenseMatrix to_dense(index_t cap = kDenseCap) const;

  bool operator==(const SparseMatrix& other) const = default;

 private:
  index_t n_rows_ = 0;
  index_t n_cols_ = 0;
  std::vector<index_t> row_offsets_{0};
  std::vector<index_t> col_indices_;
  Vector values_;
};

SparseMatrix sparse_identity(index_t n);
SparseMatrix from_dense(const DenseMatrix& m);

/// Per-row squared Euclidean norms.
Vector row_norms_sq(const SparseMatrix& a);
/// Squared Frobenius norm.
double frobenius_sq(const SparseMatrix& a);

/// H = (A + A^T)/2, S = (A - A^T)/2 as dense matrices (desk scale).
std::pair<DenseMatrix, DenseMatrix> symmetric_split(const SparseMatrix& a);

struct DiagonalPreconditioned {
  SparseMatrix a_hat;
  Vector b_hat;
  Vector f;  ///< scaling diagonal: A_ii, or 1 where A_ii == 0
};

/// Jacobi row scaling A_hat = diag(F)^{-1} A, b_hat = diag(F)^{-1} b.
DiagonalPreconditioned diagonal_precondition(const SparseMatrix& a,
                                             const Vector& b);

/// Symmetric tridiagonal matrix with 10 on the diagonal and 2 off it.
SparseMatrix gen_tridiagonal(index_t n);

/// Seeded sparse random matrix: off-diagonal entries uniform(-1,1) at
/// density 0.1, diagonal set to the row absolute sum plus one.
SparseMatrix gen_random(index_t n, std::uint64_t seed);

}  // namespace bagmres

#endif  // BAGMRES_SPARSE_HPP
