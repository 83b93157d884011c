#include "bagmres/rpcg.hpp"

#include <cmath>
#include <utility>

namespace bagmres {

namespace {

// Solve T X = B column by column against the Cholesky factor of T.
DenseMatrix solve_columns(const Cholesky& chol, const DenseMatrix& b) {
  DenseMatrix x(b.rows(), b.cols());
  Vector col(b.rows());
  for (index_t j = 0; j < b.cols(); ++j) {
    for (index_t i = 0; i < b.rows(); ++i) col[i] = b(i, j);
    const Vector sol = chol.solve(col);
    for (index_t i = 0; i < b.rows(); ++i) x(i, j) = sol[i];
  }
  return x;
}

Cholesky factor_s_hat(const DenseMatrix& s_hat, double& shift_out) {
  try {
    shift_out = 0.0;
    return Cholesky(s_hat);
  } catch (const Error&) {
  }
  double gamma = 1e-8 * s_hat.frobenius_norm();
  for (int attempt = 0; attempt <= 4; ++attempt) {
    DenseMatrix shifted = s_hat;
    for (index_t i = 0; i < shifted.rows(); ++i) shifted(i, i) += gamma;
    try {
      shift_out = gamma;
      return Cholesky(shifted);
    } catch (const Error&) {
      gamma *= 2.0;
    }
  }
  throw Error(ErrorCode::not_positive_definite,
              "S_hat is not positive definite even after diagonal shifts; "
              "choose a different split index");
}

}  // namespace

BlockPartition build_partition(const DenseMatrix& a, index_t split) {
  require(a.is_square(), ErrorCode::invalid_argument,
          "build_partition: non-square input");
  const index_t n = a.rows();
  require(split > 0 && split < n, ErrorCode::invalid_argument,
          "build_partition: split index must lie strictly inside (0, n)");
  BlockPartition p;
  p.split = split;
  const index_t k = split, r = n - split;
  p.t = DenseMatrix(k, k);
  p.b_blk = DenseMatrix(k, r);
  p.c = DenseMatrix(r, k);
  p.d = DenseMatrix(r, r);
  for (index_t i = 0; i < n; ++i)
    for (index_t j = 0; j < n; ++j) {
      if (i < k && j < k)
        p.t(i, j) = a(i, j);
      else if (i < k)
        p.b_blk(i, j - k) = a(i, j);
      else if (j < k)
        p.c(i - k, j) = a(i, j);
      else
        p.d(i - k, j - k) = a(i, j);
    }
  return p;
}

BlockPartition build_partition(const SparseMatrix& a, index_t split) {
  return build_partition(a.to_dense(), split);
}

DenseMatrix schur_complement(const BlockPartition& p) {
  Cholesky chol_t(p.t);
  return p.d - p.c * solve_columns(chol_t, p.b_blk);
}

DenseMatrix symmetrize_upper(const DenseMatrix& s) {
  require(s.is_square(), ErrorCode::invalid_argument,
          "symmetrize_upper: non-square input");
  DenseMatrix out(s.rows(), s.cols());
  for (index_t i = 0; i < s.rows(); ++i) {
    out(i, i) = s(i, i);
    for (index_t j = i + 1; j < s.cols(); ++j) {
      out(i, j) = s(i, j);
      out(j, i) = s(i, j);
    }
  }
  return out;
}

Cholesky RpcgFactors::factor_schur_blocks() {
  s_schur_ =
      partition_.d - partition_.c * solve_columns(chol_t_, partition_.b_blk);
  s_hat_ = symmetrize_upper(s_schur_);
  return factor_s_hat(s_hat_, shift_);
}

RpcgFactors::RpcgFactors(BlockPartition partition)
    : partition_(std::move(partition)),
      chol_t_(partition_.t),
      chol_s_(factor_schur_blocks()) {
  const index_t k = partition_.split;
  const index_t r = partition_.d.rows();
  const index_t n = k + r;

  tinv_b_ = solve_columns(chol_t_, partition_.b_blk);
  // C T^{-1} = (T^{-1} C^T)^T since T is symmetric.
  ct_inv_ = solve_columns(chol_t_, partition_.c.transposed()).transposed();

  p_ = DenseMatrix::identity(n);
  q_ = DenseMatrix::identity(n);
  for (index_t i = 0; i < r; ++i)
    for (index_t j = 0; j < k; ++j) p_(k + i, j) = ct_inv_(i, j);
  for (index_t i = 0; i < k; ++i)
    for (index_t j = 0; j < r; ++j) q_(i, k + j) = tinv_b_(i, j);
}

Vector RpcgFactors::apply_m_inverse(const Vector& v) const {
  const index_t k = partition_.split;
  const index_t n = k + partition_.d.rows();
  require(v.size() == n, ErrorCode::dimension_mismatch,
          "apply_m_inverse: length mismatch");
  Vector v1(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(k));
  Vector v2(v.begin() + static_cast<std::ptrdiff_t>(k), v.end());

  // u = P^{-1} v:  u1 = v1, u2 = v2 - (C T^{-1}) v1
  const Vector ct_v1 = ct_inv_.apply(v1);
  Vector u2 = v2;
  for (index_t i = 0; i < u2.size(); ++i) u2[i] -= ct_v1[i];

  // g = G^{-1} u: blockwise Cholesky solves
  const Vector g1 = chol_t_.solve(v1);
  const Vector g2 = chol_s_.solve(u2);

  // w = Q^{-1} g:  w1 = g1 - (T^{-1} B) g2, w2 = g2
  const Vector tb_g2 = tinv_b_.apply(g2);
  Vector out(n);
  for (index_t i = 0; i < k; ++i) out[i] = g1[i] - tb_g2[i];
  for (index_t i = 0; i < g2.size(); ++i) out[k + i] = g2[i];
  return out;
}

Vector RpcgFactors::apply_w_inverse(const Vector& v) const {
  const index_t k = partition_.split;
  const index_t n = k + partition_.d.rows();
  require(v.size() == n, ErrorCode::dimension_mismatch,
          "apply_w_inverse: length mismatch");
  Vector v1(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(k));
  Vector v2(v.begin() + static_cast<std::ptrdiff_t>(k), v.end());

  // u = Q v:  u1 = v1 + (T^{-1} B) v2, u2 = v2
  const Vector tb_v2 = tinv_b_.apply(v2);
  Vector u1 = v1;
  for (index_t i = 0; i < k; ++i) u1[i] += tb_v2[i];

  // w = P^{-T} u:  w1 = u1 - (C T^{-1})^T u2, w2 = u2
  const Vector ct_t_u2 = ct_inv_.apply_transpose(v2);
  Vector out(n);
  for (index_t i = 0; i < k; ++i) out[i] = u1[i] - ct_t_u2[i];
  for (index_t i = 0; i < v2.size(); ++i) out[k + i] = v2[i];
  return out;
}

CgResult pcg_solve(const LinearOp& a_apply, const LinearOp& m_apply,
                   const Vector& b, const Vector& x0, double tol, int maxit) {
  CgResult res;
  res.x = x0;
  Vector r = subtract(b, a_apply(res.x));
  Vector z = m_apply ? m_apply(r) : r;
  Vector p = z;
  double rz = dot(r, z);
  const double target = tol * norm2(b);
  res.history.residuals.push_back(norm2(r));

  for (int k = 0; k < maxit; ++k) {
    if (res.history.residuals.back() <= target) {
      res.converged = true;
      break;
    }
    const Vector ap = a_apply(p);
    const double p_ap = dot(p, ap);
    if (p_ap <= 0.0)
      throw Error(ErrorCode::not_positive_definite,
                  "matrix not SPD along Krylov direction");
    const double alpha = rz / p_ap;
    axpy(alpha, p, res.x);
    axpy(-alpha, ap, r);
    z = m_apply ? m_apply(r) : r;
    const double rz_new = dot(r, z);
    const double beta = rz_new / rz;
    rz = rz_new;
    for (index_t i = 0; i < p.size(); ++i) p[i] = z[i] + beta * p[i];
    ++res.iterations;
    res.history.residuals.push_back(norm2(r));
  }
  if (res.history.residuals.back() <= target) res.converged = true;
  return res;
}

CgResult pcg_solve(const SparseMatrix& a, const LinearOp& m_apply,
                   const Vector& b, const Vector& x0, double tol, int maxit) {
  return pcg_solve([&a](const Vector& v) { return a.apply(v); }, m_apply, b, x0,
                   tol, maxit);
}

CgResult rpcg_solve(const SparseMatrix& a, const RpcgFactors& f,
                    const Vector& b, const Vector& x0, double tol, int maxit) {
  CgResult res;
  res.x = x0;
  Vector r = subtract(b, a.apply(res.x));
  Vector z = f.apply_m_inverse(r);
  Vector p = z;
  Vector v = f.apply_w_inverse(z);
  Vector q = v;
  double vr = dot(v, r);
  const double target = tol * norm2(b);
  res.history.residuals.push_back(norm2(r));

  for (int k = 0; k < maxit; ++k) {
    if (res.history.residuals.back() <= target) {
      res.converged = true;
      break;
    }
    const Vector ap = a.apply(p);
    const double q_ap = dot(q, ap);
    if (q_ap == 0.0)
      throw Error(ErrorCode::no_convergence, "rpcg breakdown: q^T A p is zero");
    const double alpha = vr / q_ap;
    axpy(alpha, p, res.x);
    axpy(-alpha, ap, r);
    z = f.apply_m_inverse(r);
    v = f.apply_w_inverse(z);
    const double vr_new = dot(v, r);
    const double beta = vr_new / vr;
    vr = vr_new;
    for (index_t i = 0; i < p.size(); ++i) p[i] = z[i] + beta * p[i];
    for (index_t i = 0; i < q.size(); ++i) q[i] = v[i] + beta * q[i];
    ++res.iterations;
    res.history.residuals.push_back(norm2(r));
  }
  if (res.history.residuals.back() <= target) res.converged = true;
  return res;
}

}  // namespace bagmres
