/// @file report.hpp
/// @brief Convergence histories, solver reports and the outer-solve
///        configuration shared by every solver in the library.

#ifndef BAGMRES_REPORT_HPP
#define BAGMRES_REPORT_HPP

#include <string>

#include "bagmres/types.hpp"

namespace bagmres {

enum class SolveStatus { converged, failed };

struct ConvergenceHistory {
  /// Monitored residual norm per iteration, including iteration 0.
  Vector residuals;
  /// ||x_k - x*|| per iteration when the caller supplied x* (test mode).
  Vector error_to_solution;
  /// Inner depth used at each outer iteration (BA-GMRES only).
  std::vector<int> inner_depths;
};

/// Bookkeeping for the complexity comparison: products with A, inner
/// micro-steps during the Arnoldi loop (setup preconditioning of r0 is
/// tracked separately) and the scalar work spent in orthogonalization
/// dot products.
struct OperationCounts {
  long matvecs = 0;
  long inner_steps = 0;
  long inner_setup_steps = 0;
  long orthog_dot_flops = 0;
};

struct SolveReport {
  std::string method;
  SolveStatus status = SolveStatus::failed;
  int iterations = 0;
  /// True relative residual ||b - A x|| / ||b||, recomputed at the end.
  double final_relative_residual = 0.0;
  /// Final value of the monitored (preconditioned) residual estimate,
  /// relative to its initial value.
  double residual_estimate = 0.0;
  /// Relative error against a known solution; NaN when unknown.
  double error_to_solution = 0.0;
  double wall_seconds = 0.0;
  bool flexible_mode = false;
  ConvergenceHistory history;
  OperationCounts counts;
  Vector solution;
};

struct SolveConfig {
  double tol = 1e-6;    ///< relative residual target
  int maxit = 300;      ///< full GMRES, no restarting
  int inner_max = 100;  ///< cap on inner iterations per apply
  double eta = 0.5;     ///< inner-depth residual factor, in (0,1]
  bool flexible = false;  ///< re-select the inner depth every outer iteration
};

}  // namespace bagmres

#endif  // BAGMRES_REPORT_HPP
