/// @file rpcg.hpp
/// @brief Block-partition factors (P, Q, Schur complement, Cholesky-based
///        G) and the restricted preconditioned conjugate gradient solver,
///        plus plain CG/PCG.

#ifndef BAGMRES_RPCG_HPP
#define BAGMRES_RPCG_HPP

#include <functional>

#include "bagmres/dense.hpp"
#include "bagmres/report.hpp"
#include "bagmres/sparse.hpp"

namespace bagmres {

/// 2x2 block decomposition A = [[T, B], [C, D]] at a split index.
struct BlockPartition {
  index_t split = 0;
  DenseMatrix t;      ///< k x k
  DenseMatrix b_blk;  ///< k x (n-k)
  DenseMatrix c;      ///< (n-k) x k
  DenseMatrix d;      ///< (n-k) x (n-k)
};

BlockPartition build_partition(const DenseMatrix& a, index_t split);
BlockPartition build_partition(const SparseMatrix& a, index_t split);

/// S = D - C T^{-1} B via triangular solves against T's Cholesky factor.
DenseMatrix schur_complement(const BlockPartition& p);

/// Mirror the upper triangle into the lower one.
DenseMatrix symmetrize_upper(const DenseMatrix& s);

/// Factors of the block preconditioner M = P G Q with
/// G = blkdiag(E^T E, F^T F), E^T E = T, F^T F = S_hat.
class RpcgFactors {
 public:
  explicit RpcgFactors(BlockPartition partition);

  index_t split() const { return partition_.split; }
  const BlockPartition& partition() const { return partition_; }
  const DenseMatrix& p() const { return p_; }
  const DenseMatrix& q() const { return q_; }
  const DenseMatrix& schur() const { return s_schur_; }
  const DenseMatrix& schur_symmetrized() const { return s_hat_; }
  const DenseMatrix& e_factor() const { return chol_t_.factor(); }
  const DenseMatrix& f_factor() const { return chol_s_.factor(); }
  /// Diagonal shift that was needed to make S_hat factorizable (0 normally).
  double shift() const { return shift_; }

  /// v -> (P G Q)^{-1} v via block and triangular solves.
  Vector apply_m_inverse(const Vector& v) const;
  /// v -> (Q^{-1} P^T)^{-1} v = P^{-T} Q v.
  Vector apply_w_inverse(const Vector& v) const;

 private:
  Cholesky factor_schur_blocks();

  // Declaration order matters: factor_schur_blocks() fills s_schur_,
  // s_hat_ and shift_ while initializing chol_s_.
  BlockPartition partition_;
  DenseMatrix s_schur_;
  DenseMatrix s_hat_;
  double shift_ = 0.0;
  Cholesky chol_t_;
  Cholesky chol_s_;
  DenseMatrix ct_inv_;  ///< C T^{-1}
  DenseMatrix tinv_b_;  ///< T^{-1} B
  DenseMatrix p_;
  DenseMatrix q_;
};

struct CgResult {
  Vector x;
  ConvergenceHistory history;
  int iterations = 0;
  bool converged = false;
};

using LinearOp = std::function<Vector(const Vector&)>;

/// Preconditioned conjugate gradient; `m_apply` may be empty (plain CG).
/// Throws when p^T A p <= 0 ("matrix not SPD along Krylov direction").
CgResult pcg_solve(const LinearOp& a_apply, const LinearOp& m_apply,
                   const Vector& b, const Vector& x0, double tol, int maxit);
CgResult pcg_solve(const SparseMatrix& a, const LinearOp& m_apply,
                   const Vector& b, const Vector& x0, double tol, int maxit);

/// Restricted PCG in original variables (the transformed-system CG
/// recurrence mapped back through the factors).
CgResult rpcg_solve(const SparseMatrix& a, const RpcgFactors& f,
                    const Vector& b, const Vector& x0, double tol, int maxit);

}  // namespace bagmres

#endif  // BAGMRES_RPCG_HPP
