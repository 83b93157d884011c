/// @file dense.hpp
/// @brief Dense row-major matrix and the direct factorization kernels used
///        at desk scale (oracle work, block factors, ADI half-step solves).

#ifndef BAGMRES_DENSE_HPP
#define BAGMRES_DENSE_HPP

#include <initializer_list>

#include "bagmres/types.hpp"

namespace bagmres {

/// Hard cap for dense conversions and oracle work; operations refuse
/// larger inputs instead of silently thrashing.
inline constexpr index_t kDenseCap = 2000;

class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(index_t rows, index_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {}
  DenseMatrix(index_t rows, index_t cols, std::initializer_list<double> vals);

  static DenseMatrix identity(index_t n);

  index_t rows() const { return rows_; }
  index_t cols() const { return cols_; }

  double& operator()(index_t i, index_t j) { return data_[i * cols_ + j]; }
  double operator()(index_t i, index_t j) const { return data_[i * cols_ + j]; }

  const Vector& data() const { return data_; }
  Vector& data() { return data_; }

  DenseMatrix transposed() const;
  bool is_square() const { return rows_ == cols_; }

  Vector apply(const Vector& x) const;
  Vector apply_transpose(const Vector& y) const;

  double frobenius_norm() const;
  double max_abs() const;

 private:
  index_t rows_ = 0;
  index_t cols_ = 0;
  Vector data_;
};

DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b);
DenseMatrix operator+(const DenseMatrix& a, const DenseMatrix& b);
DenseMatrix operator-(const DenseMatrix& a, const DenseMatrix& b);
DenseMatrix operator*(double s, const DenseMatrix& a);

/// M^k by repeated multiplication (k >= 0).
DenseMatrix matrix_power(const DenseMatrix& m, unsigned k);

/// Upper-triangular Cholesky factor U with U^T U = M.
/// Throws not_positive_definite carrying the failing pivot index (0-based).
class Cholesky {
 public:
  explicit Cholesky(const DenseMatrix& m);

  const DenseMatrix& factor() const { return u_; }

  /// Solve M x = b via the two triangular solves.
  Vector solve(const Vector& b) const;
  /// Solve U^T y = b (forward substitution).
  Vector solve_transposed_factor(const Vector& b) const;
  /// Solve U x = b (back substitution).
  Vector solve_factor(const Vector& b) const;

 private:
  DenseMatrix u_;
};

/// LU factorization with partial pivoting.
class Lu {
 public:
  explicit Lu(const DenseMatrix& m);

  Vector solve(const Vector& b) const;
  DenseMatrix solve(const DenseMatrix& b) const;
  bool singular() const { return singular_; }

 private:
  DenseMatrix lu_;
  std::vector<index_t> perm_;
  bool singular_ = false;
};

/// Solve M x = b densely (partial-pivot LU); throws singular_matrix.
Vector dense_solve(const DenseMatrix& m, const Vector& b);

/// Inverse via LU; desk-scale oracle helper.
DenseMatrix dense_inverse(const DenseMatrix& m);

/// Numerical rank via column-pivoted Householder QR: number of diagonal
/// entries of R above `tol` in absolute value.
index_t numerical_rank(const DenseMatrix& m, double tol);

/// Upper-triangular Cholesky as a free function (factor only).
DenseMatrix dense_cholesky(const DenseMatrix& m);

}  // namespace bagmres

#endif  // BAGMRES_DENSE_HPP
