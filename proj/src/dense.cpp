#include "bagmres/dense.hpp"

#include <algorithm>
#include <cmath>

namespace bagmres {

DenseMatrix::DenseMatrix(index_t rows, index_t cols,
                         std::initializer_list<double> vals)
    : rows_(rows), cols_(cols), data_(vals) {
  require(data_.size() == rows * cols, ErrorCode::invalid_argument,
          "initializer size does not match matrix shape");
}

DenseMatrix DenseMatrix::identity(index_t n) {
  DenseMatrix m(n, n);
  for (index_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

DenseMatrix DenseMatrix::transposed() const {
  DenseMatrix t(cols_, rows_);
  for (index_t i = 0; i < rows_; ++i)
    for (index_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

Vector DenseMatrix::apply(const Vector& x) const {
  require(x.size() == cols_, ErrorCode::dimension_mismatch,
          "dense apply: vector length != cols");
  Vector y(rows_, 0.0);
  for (index_t i = 0; i < rows_; ++i) {
    double s = 0.0;
    for (index_t j = 0; j < cols_; ++j) s += (*this)(i, j) * x[j];
    y[i] = s;
  }
  return y;
}

Vector DenseMatrix::apply_transpose(const Vector& y) const {
  require(y.size() == rows_, ErrorCode::dimension_mismatch,
          "dense apply_transpose: vector length != rows");
  Vector x(cols_, 0.0);
  for (index_t i = 0; i < rows_; ++i)
    for (index_t j = 0; j < cols_; ++j) x[j] += (*this)(i, j) * y[i];
  return x;
}

double DenseMatrix::frobenius_norm() const {
  double s = 0.0;
  for (double v : data_) s += v * v;
  return std::sqrt(s);
}

double DenseMatrix::max_abs() const {
  double m = 0.0;
  for (double v : data_) m = std::max(m, std::abs(v));
  return m;
}

DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b) {
  require(a.cols() == b.rows(), ErrorCode::dimension_mismatch,
          "dense multiply: inner dimensions differ");
  DenseMatrix c(a.rows(), b.cols());
  for (index_t i = 0; i < a.rows(); ++i)
    for (index_t k = 0; k < a.cols(); ++k) {
      const double aik = a(i, k);
      if (aik == 0.0) continue;
      for (index_t j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
    }
  return c;
}

DenseMatrix operator+(const DenseMatrix& a, const DenseMatrix& b) {
  require(a.rows() == b.rows() && a.cols() == b.cols(),
          ErrorCode::dimension_mismatch, "dense add: shapes differ");
  DenseMatrix c = a;
  for (index_t i = 0; i < c.data().size(); ++i) c.data()[i] += b.data()[i];
  return c;
}

DenseMatrix operator-(const DenseMatrix& a, const DenseMatrix& b) {
  require(a.rows() == b.rows() && a.cols() == b.cols(),
          ErrorCode::dimension_mismatch, "dense subtract: shapes differ");
  DenseMatrix c = a;
  for (index_t i = 0; i < c.data().size(); ++i) c.data()[i] -= b.data()[i];
  return c;
}

DenseMatrix operator*(double s, const DenseMatrix& a) {
  DenseMatrix c = a;
  for (double& v : c.data()) v *= s;
  return c;
}

DenseMatrix matrix_power(const DenseMatrix& m, unsigned k) {
  require(m.is_square(), ErrorCode::invalid_argument,
          "matrix_power: non-square input");
  DenseMatrix acc = DenseMatrix::identity(m.rows());
  for (unsigned i = 0; i < k; ++i) acc = acc * m;
  return acc;
}

Cholesky::Cholesky(const DenseMatrix& m) : u_(m.rows(), m.cols()) {
  require(m.is_square(), ErrorCode::invalid_argument,
          "cholesky: non-square input");
  const index_t n = m.rows();
  for (index_t j = 0; j < n; ++j) {
    double d = m(j, j);
    for (index_t k = 0; k < j; ++k) d -= u_(k, j) * u_(k, j);
    if (!(d > 0.0)) {
      throw Error(ErrorCode::not_positive_definite,
                  "not positive definite: pivot " + std::to_string(j + 1) +
                      " is " + std::to_string(d));
    }
    const double ujj = std::sqrt(d);
    u_(j, j) = ujj;
    for (index_t i = j + 1; i < n; ++i) {
      double s = 0.5 * (m(j, i) + m(i, j));
      for (index_t k = 0; k < j; ++k) s -= u_(k, j) * u_(k, i);
      u_(j, i) = s / ujj;
    }
  }
}

Vector Cholesky::solve_transposed_factor(const Vector& b) const {
  const index_t n = u_.rows();
  require(b.size() == n, ErrorCode::dimension_mismatch,
          "cholesky solve: length mismatch");
  Vector y(n);
  for (index_t i = 0; i < n; ++i) {
    double s = b[i];
    for (index_t k = 0; k < i; ++k) s -= u_(k, i) * y[k];
    y[i] = s / u_(i, i);
  }
  return y;
}

Vector Cholesky::solve_factor(const Vector& b) const {
  const index_t n = u_.rows();
  require(b.size() == n, ErrorCode::dimension_mismatch,
          "cholesky solve: length mismatch");
  Vector x(n);
  for (index_t ii = n; ii-- > 0;) {
    double s = b[ii];
    for (index_t k = ii + 1; k < n; ++k) s -= u_(ii, k) * x[k];
    x[ii] = s / u_(ii, ii);
  }
  return x;
}

Vector Cholesky::solve(const Vector& b) const {
  return solve_factor(solve_transposed_factor(b));
}

Lu::Lu(const DenseMatrix& m) : lu_(m), perm_(m.rows()) {
  require(m.is_square(), ErrorCode::invalid_argument, "lu: non-square input");
  const index_t n = m.rows();
  for (index_t i = 0; i < n; ++i) perm_[i] = i;
  for (index_t k = 0; k < n; ++k) {
    index_t p = k;
    double pmax = std::abs(lu_(k, k));
    for (index_t i = k + 1; i < n; ++i) {
      const double v = std::abs(lu_(i, k));
      if (v > pmax) {
        pmax = v;
        p = i;
      }
    }
    if (pmax == 0.0) {
      singular_ = true;
      continue;
    }
    if (p != k) {
      for (index_t j = 0; j < n; ++j) std::swap(lu_(p, j), lu_(k, j));
      std::swap(perm_[p], perm_[k]);
    }
    for (index_t i = k + 1; i < n; ++i) {
      lu_(i, k) /= lu_(k, k);
      const double lik = lu_(i, k);
      if (lik == 0.0) continue;
      for (index_t j = k + 1; j < n; ++j) lu_(i, j) -= lik * lu_(k, j);
    }
  }
}

Vector Lu::solve(const Vector& b) const {
  require(!singular_, ErrorCode::singular_matrix, "lu solve: singular matrix");
  const index_t n = lu_.rows();
  require(b.size() == n, ErrorCode::dimension_mismatch,
          "lu solve: length mismatch");
  Vector x(n);
  for (index_t i = 0; i < n; ++i) {
    double s = b[perm_[i]];
    for (index_t k = 0; k < i; ++k) s -= lu_(i, k) * x[k];
    x[i] = s;
  }
  for (index_t ii = n; ii-- > 0;) {
    double s = x[ii];
    for (index_t k = ii + 1; k < n; ++k) s -= lu_(ii, k) * x[k];
    x[ii] = s / lu_(ii, ii);
  }
  return x;
}

DenseMatrix Lu::solve(const DenseMatrix& b) const {
  DenseMatrix x(b.rows(), b.cols());
  Vector col(b.rows());
  for (index_t j = 0; j < b.cols(); ++j) {
    for (index_t i = 0; i < b.rows(); ++i) col[i] = b(i, j);
    Vector sol = solve(col);
    for (index_t i = 0; i < b.rows(); ++i) x(i, j) = sol[i];
  }
  return x;
}

Vector dense_solve(const DenseMatrix& m, const Vector& b) {
  return Lu(m).solve(b);
}

DenseMatrix dense_inverse(const DenseMatrix& m) {
  return Lu(m).solve(DenseMatrix::identity(m.rows()));
}

index_t numerical_rank(const DenseMatrix& m, double tol) {
  // Column-pivoted Householder QR; the pivoted |R_jj| decay is a reliable
  // rank indicator at this scale.
  DenseMatrix a = m;
  const index_t rows = a.rows(), cols = a.cols();
  const index_t steps = std::min(rows, cols);
  std::vector<double> colnorm(cols);
  for (index_t j = 0; j < cols; ++j) {
    double s = 0.0;
    for (index_t i = 0; i < rows; ++i) s += a(i, j) * a(i, j);
    colnorm[j] = s;
  }
  index_t rank = 0;
  for (index_t k = 0; k < steps; ++k) {
    index_t p = k;
    for (index_t j = k + 1; j < cols; ++j)
      if (colnorm[j] > colnorm[p]) p = j;
    if (p != k) {
      for (index_t i = 0; i < rows; ++i) std::swap(a(i, p), a(i, k));
      std::swap(colnorm[p], colnorm[k]);
    }
    double nrm = 0.0;
    for (index_t i = k; i < rows; ++i) nrm += a(i, k) * a(i, k);
    nrm = std::sqrt(nrm);
    if (nrm <= tol) break;
    ++rank;
    if (a(k, k) > 0) nrm = -nrm;
    for (index_t i = k; i < rows; ++i) a(i, k) /= nrm;
    a(k, k) += 1.0;
    for (index_t j = k + 1; j < cols; ++j) {
      double s = 0.0;
      for (index_t i = k; i < rows; ++i) s += a(i, k) * a(i, j);
      s = -s / a(k, k);
      for (index_t i = k; i < rows; ++i) a(i, j) += s * a(i, k);
      colnorm[j] = 0.0;
      for (index_t i = k + 1; i < rows; ++i) colnorm[j] += a(i, j) * a(i, j);
    }
  }
  return rank;
}

DenseMatrix dense_cholesky(const DenseMatrix& m) {
  return Cholesky(m).factor();
}

}  // namespace bagmres
