/// @file kaczmarz.hpp
/// @brief Row-action solvers: cyclic/randomized Kaczmarz with constant
///        step and the extrapolated adaptive-step averaged-block variant.

#ifndef BAGMRES_KACZMARZ_HPP
#define BAGMRES_KACZMARZ_HPP

#include <optional>

#include "bagmres/report.hpp"
#include "bagmres/sparse.hpp"

namespace bagmres {

enum class StepMode { constant, adaptive };
enum class RowSelection { cyclic, randomized };

struct KaczmarzConfig {
  StepMode step_mode = StepMode::constant;
  double alpha = 1.0;  ///< constant step, in (0,2) for the single-row method
  double delta = 0.5;  ///< adaptive step factor, in (0,1]
  RowSelection row_selection = RowSelection::cyclic;
  std::uint64_t seed = 0;
  index_t block_size = 1;  ///< tau, in [1, n_rows]
  long max_steps = 1000;   ///< ell_max
  double eta = 1e-6;       ///< residual factor: stop at ||b-Ax|| <= eta ||b||
  /// Optional known solution; when set the history records ||x_k - x*||.
  std::optional<Vector> known_solution;
};

/// One projection step onto row i: x + alpha (b_i - a_i^T x)/||a_i||^2 a_i.
/// Throws on a zero row ("degenerate row").
Vector kaczmarz_step(const SparseMatrix& a, const Vector& b, const Vector& x,
                     index_t i, double alpha);

/// Sample a row index with probability ||a_i||^2 / ||A||_F^2.
index_t sample_row(const Vector& row_norms_sq, double frobenius_sq, Rng& rng);

struct KaczmarzResult {
  Vector x;
  ConvergenceHistory history;
  long steps = 0;
  bool converged = false;
};

/// Single-row Kaczmarz (Algorithm: cyclic sweeps or norm-weighted random
/// row selection) with constant step.
KaczmarzResult rk_solve(const SparseMatrix& a, const Vector& b,
                        const Vector& x0, const KaczmarzConfig& config);

/// A sampled row block with its weights; weights sum to 1 and
/// wbar_i = w_i / ||a_i||^2.
struct BlockSample {
  std::vector<index_t> indices;
  Vector weights;
  Vector normalized_weights;
};

/// Draw tau distinct rows with probability proportional to ||a_i||^2
/// (zero rows excluded), uniform weights w_i = 1/tau.
BlockSample sample_block(const Vector& row_norms_sq, index_t tau, Rng& rng);

/// Consecutive rows starting at `start` (cyclic, zero rows skipped).
BlockSample cyclic_block(const Vector& row_norms_sq, index_t tau,
                         index_t& start);

struct RabkStep {
  double alpha_k;
  double l_k;
};

/// Adaptive step of the averaged-block method: alpha_k = (2 - delta) L_k
/// with the two-branch L_k; the exact-0/0 case takes L_k = 1.
RabkStep rabk_step_size(const SparseMatrix& a, const Vector& x, const Vector& b,
                        const BlockSample& block, double delta);

/// Averaged-block Kaczmarz.  Adaptive mode computes alpha_k per block via
/// rabk_step_size; constant mode applies config.alpha every iteration
/// (callers pass the theorem step (2-delta) w_min / (w_max^2 lambda_max_block)).
KaczmarzResult rabk_solve(const SparseMatrix& a, const Vector& b,
                          const Vector& x0, const KaczmarzConfig& config);

}  // namespace bagmres

#endif  // BAGMRES_KACZMARZ_HPP
