#include "bagmres/sparse.hpp"

#include <algorithm>
#include <cmath>

namespace bagmres {

SparseMatrix::SparseMatrix(index_t n_rows, index_t n_cols,
                           std::vector<Triplet> entries)
    : n_rows_(n_rows), n_cols_(n_cols) {
  for (const Triplet& t : entries) {
    require(t.row < n_rows, ErrorCode::invalid_argument,
            "sparse: row index out of range");
    require(t.col < n_cols, ErrorCode::invalid_argument,
            "sparse: column index out of range");
    require(std::isfinite(t.value), ErrorCode::invalid_argument,
            "sparse: non-finite value");
  }
  std::sort(entries.begin(), entries.end(),
            [](const Triplet& a, const Triplet& b) {
              return std::tie(a.row, a.col) < std::tie(b.row, b.col);
            });
  row_offsets_.assign(n_rows + 1, 0);
  col_indices_.reserve(entries.size());
  values_.reserve(entries.size());
  for (index_t k = 0; k < entries.size();) {
    index_t j = k + 1;
    double sum = entries[k].value;
    while (j < entries.size() && entries[j].row == entries[k].row &&
           entries[j].col == entries[k].col) {
      sum += entries[j].value;  // duplicates are summed
      ++j;
    }
    col_indices_.push_back(entries[k].col);
    values_.push_back(sum);
    ++row_offsets_[entries[k].row + 1];
    k = j;
  }
  for (index_t i = 0; i < n_rows; ++i) row_offsets_[i + 1] += row_offsets_[i];
}

Vector SparseMatrix::apply(const Vector& x) const {
  require(x.size() == n_cols_, ErrorCode::dimension_mismatch,
          "spmv: vector length != n_cols");
  Vector y(n_rows_, 0.0);
  for (index_t i = 0; i < n_rows_; ++i) {
    double s = 0.0;
    for (index_t k = row_offsets_[i]; k < row_offsets_[i + 1]; ++k)
      s += values_[k] * x[col_indices_[k]];
    y[i] = s;
  }
  return y;
}

Vector SparseMatrix::apply_transpose(const Vector& y) const {
  require(y.size() == n_rows_, ErrorCode::dimension_mismatch,
          "spmv_transpose: vector length != n_rows");
  Vector x(n_cols_, 0.0);
  for (index_t i = 0; i < n_rows_; ++i) {
    const double yi = y[i];
    if (yi == 0.0) continue;
    for (index_t k = row_offsets_[i]; k < row_offsets_[i + 1]; ++k)
      x[col_indices_[k]] += values_[k] * yi;
  }
  return x;
}

double SparseMatrix::at(index_t i, index_t j) const {
  require(i < n_rows_ && j < n_cols_, ErrorCode::invalid_argument,
          "sparse at: index out of range");
  auto begin = col_indices_.begin() + static_cast<std::ptrdiff_t>(row_offsets_[i]);
  auto end = col_indices_.begin() + static_cast<std::ptrdiff_t>(row_offsets_[i + 1]);
  auto it = std::lower_bound(begin, end, j);
  if (it == end || *it != j) return 0.0;
  return values_[static_cast<index_t>(it - col_indices_.begin())];
}

SparseMatrix SparseMatrix::transposed() const {
  std::vector<Triplet> t;
  t.reserve(nnz());
  for (index_t i = 0; i < n_rows_; ++i)
    for (index_t k = row_offsets_[i]; k < row_offsets_[i + 1]; ++k)
      t.push_back({col_indices_[k], i, values_[k]});
  return SparseMatrix(n_cols_, n_rows_, std::move(t));
}

DenseMatrix SparseMatrix::to_dense(index_t cap) const {
  require(n_rows_ <= cap && n_cols_ <= cap, ErrorCode::invalid_argument,
          "to_dense: matrix exceeds the dense cap of " + std::to_string(cap));
  DenseMatrix m(n_rows_, n_cols_);
  for (index_t i = 0; i < n_rows_; ++i)
    for (index_t k = row_offsets_[i]; k < row_offsets_[i + 1]; ++k)
      m(i, col_indices_[k]) = values_[k];
  return m;
}

SparseMatrix sparse_identity(index_t n) {
  std::vector<Triplet> t;
  t.reserve(n);
  for (index_t i = 0; i < n; ++i) t.push_back({i, i, 1.0});
  return SparseMatrix(n, n, std::move(t));
}

SparseMatrix from_dense(const DenseMatrix& m) {
  std::vector<Triplet> t;
  for (index_t i = 0; i < m.rows(); ++i)
    for (index_t j = 0; j < m.cols(); ++j)
      if (m(i, j) != 0.0) t.push_back({i, j, m(i, j)});
  return SparseMatrix(m.rows(), m.cols(), std::move(t));
}

Vector row_norms_sq(const SparseMatrix& a) {
  Vector r(a.n_rows(), 0.0);
  for (index_t i = 0; i < a.n_rows(); ++i)
    for (index_t k = a.row_offsets()[i]; k < a.row_offsets()[i + 1]; ++k)
      r[i] += a.values()[k] * a.values()[k];
  return r;
}

double frobenius_sq(const SparseMatrix& a) {
  double s = 0.0;
  for (double v : a.values()) s += v * v;
  return s;
}

std::pair<DenseMatrix, DenseMatrix> symmetric_split(const SparseMatrix& a) {
  require(a.n_rows() == a.n_cols(), ErrorCode::invalid_argument,
          "symmetric_split: non-square input");
  const DenseMatrix d = a.to_dense();
  const index_t n = d.rows();
  DenseMatrix h(n, n), s(n, n);
  for (index_t i = 0; i < n; ++i)
    for (index_t j = 0; j < n; ++j) {
      h(i, j) = 0.5 * (d(i, j) + d(j, i));
      s(i, j) = 0.5 * (d(i, j) - d(j, i));
    }
  return {h, s};
}

DiagonalPreconditioned diagonal_precondition(const SparseMatrix& a,
                                             const Vector& b) {
  require(a.n_rows() == a.n_cols(), ErrorCode::invalid_argument,
          "diagonal_precondition: non-square input");
  require(b.size() == a.n_rows(), ErrorCode::dimension_mismatch,
          "diagonal_precondition: rhs length mismatch");
  const index_t n = a.n_rows();
  Vector f(n, 1.0);
  for (index_t i = 0; i < n; ++i) {
    const double d = a.at(i, i);
    if (d != 0.0) f[i] = d;
  }
  std::vector<Triplet> t;
  t.reserve(a.nnz());
  for (index_t i = 0; i < n; ++i)
    for (index_t k = a.row_offsets()[i]; k < a.row_offsets()[i + 1]; ++k)
      t.push_back({i, a.col_indices()[k], a.values()[k] / f[i]});
  Vector b_hat(n);
  for (index_t i = 0; i < n; ++i) b_hat[i] = b[i] / f[i];
  return {SparseMatrix(n, n, std::move(t)), std::move(b_hat), std::move(f)};
}

SparseMatrix gen_tridiagonal(index_t n) {
  require(n >= 1, ErrorCode::invalid_argument, "gen_tridiagonal: n must be >= 1");
  std::vector<Triplet> t;
  t.reserve(3 * n);
  for (index_t i = 0; i < n; ++i) {
    t.push_back({i, i, 10.0});
    if (i + 1 < n) {
      t.push_back({i, i + 1, 2.0});
      t.push_back({i + 1, i, 2.0});
    }
  }
  return SparseMatrix(n, n, std::move(t));
}

SparseMatrix gen_random(index_t n, std::uint64_t seed) {
  require(n >= 1, ErrorCode::invalid_argument, "gen_random: n must be >= 1");
  Rng rng(seed);
  std::vector<Triplet> t;
  Vector row_abs_sum(n, 0.0);
  for (index_t i = 0; i < n; ++i)
    for (index_t j = 0; j < n; ++j) {
      if (i == j) continue;
      if (rng.uniform01() < 0.1) {
        const double v = rng.uniform(-1.0, 1.0);
        t.push_back({i, j, v});
        row_abs_sum[i] += std::abs(v);
      }
    }
  for (index_t i = 0; i < n; ++i) t.push_back({i, i, row_abs_sum[i] + 1.0});
  return SparseMatrix(n, n, std::move(t));
}

}  // namespace bagmres
