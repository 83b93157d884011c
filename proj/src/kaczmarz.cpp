#include "bagmres/kaczmarz.hpp"

#include <algorithm>
#include <cmath>

#include "bagmres/eig.hpp"

namespace bagmres {

namespace {

double row_norm_sq(const SparseMatrix& a, index_t i) {
  double s = 0.0;
  for (index_t k = a.row_offsets()[i]; k < a.row_offsets()[i + 1]; ++k)
    s += a.values()[k] * a.values()[k];
  return s;
}

double row_dot(const SparseMatrix& a, index_t i, const Vector& x) {
  double s = 0.0;
  for (index_t k = a.row_offsets()[i]; k < a.row_offsets()[i + 1]; ++k)
    s += a.values()[k] * x[a.col_indices()[k]];
  return s;
}

void record(ConvergenceHistory& h, const SparseMatrix& a, const Vector& b,
            const Vector& x, const std::optional<Vector>& xstar) {
  h.residuals.push_back(norm2(subtract(b, a.apply(x))));
  if (xstar) h.error_to_solution.push_back(norm2(subtract(x, *xstar)));
}

}  // namespace

Vector kaczmarz_step(const SparseMatrix& a, const Vector& b, const Vector& x,
                     index_t i, double alpha) {
  require(i < a.n_rows(), ErrorCode::invalid_argument,
          "kaczmarz_step: row index out of range");
  require(b.size() == a.n_rows() && x.size() == a.n_cols(),
          ErrorCode::dimension_mismatch, "kaczmarz_step: dimension mismatch");
  const double nsq = row_norm_sq(a, i);
  require(nsq > 0.0, ErrorCode::invalid_argument, "degenerate row");
  const double coef = alpha * (b[i] - row_dot(a, i, x)) / nsq;
  Vector y = x;
  for (index_t k = a.row_offsets()[i]; k < a.row_offsets()[i + 1]; ++k)
    y[a.col_indices()[k]] += coef * a.values()[k];
  return y;
}

index_t sample_row(const Vector& row_norms_sq, double frobenius_sq, Rng& rng) {
  require(frobenius_sq > 0.0, ErrorCode::invalid_argument,
          "sample_row: all rows are zero");
  const double u = rng.uniform01() * frobenius_sq;
  double cum = 0.0;
  index_t last_nonzero = 0;
  for (index_t i = 0; i < row_norms_sq.size(); ++i) {
    if (row_norms_sq[i] == 0.0) continue;
    last_nonzero = i;
    cum += row_norms_sq[i];
    if (u < cum) return i;
  }
  return last_nonzero;  // rounding left u at the very top of the CDF
}

KaczmarzResult rk_solve(const SparseMatrix& a, const Vector& b,
                        const Vector& x0, const KaczmarzConfig& config) {
  require(config.alpha > 0.0 && config.alpha < 2.0, ErrorCode::invalid_argument,
          "rk_solve: constant step must lie in (0,2)");
  require(config.max_steps >= 1, ErrorCode::invalid_argument,
          "rk_solve: max_steps must be >= 1");
  const Vector rnsq = row_norms_sq(a);
  const double fsq = frobenius_sq(a);
  require(fsq > 0.0, ErrorCode::invalid_argument, "degenerate row");

  KaczmarzResult res;
  res.x = x0;
  record(res.history, a, b, res.x, config.known_solution);
  const double target = config.eta * norm2(b);

  Rng rng(config.seed);
  index_t cyclic_pos = 0;
  for (long step = 0; step < config.max_steps; ++step) {
    if (res.history.residuals.back() <= target) {
      res.converged = true;
      break;
    }
    index_t i;
    if (config.row_selection == RowSelection::randomized) {
      i = sample_row(rnsq, fsq, rng);
    } else {
      while (rnsq[cyclic_pos % rnsq.size()] == 0.0) ++cyclic_pos;
      i = cyclic_pos % rnsq.size();
      ++cyclic_pos;
    }
    res.x = kaczmarz_step(a, b, res.x, i, config.alpha);
    ++res.steps;
    record(res.history, a, b, res.x, config.known_solution);
  }
  if (!res.converged && res.history.residuals.back() <= target)
    res.converged = true;
  return res;
}

BlockSample sample_block(const Vector& rnsq, index_t tau, Rng& rng) {
  index_t nonzero_rows = 0;
  double total = 0.0;
  for (double v : rnsq) {
    if (v > 0.0) ++nonzero_rows;
    total += v;
  }
  require(tau >= 1 && tau <= nonzero_rows, ErrorCode::invalid_argument,
          "sample_block: block size out of range");
  BlockSample s;
  Vector remaining = rnsq;
  for (index_t t = 0; t < tau; ++t) {
    const index_t i = sample_row(remaining, total, rng);
    s.indices.push_back(i);
    total -= remaining[i];
    remaining[i] = 0.0;
  }
  const double w = 1.0 / static_cast<double>(tau);
  for (index_t i : s.indices) {
    s.weights.push_back(w);
    s.normalized_weights.push_back(w / rnsq[i]);
  }
  return s;
}

BlockSample cyclic_block(const Vector& rnsq, index_t tau, index_t& start) {
  index_t nonzero_rows = 0;
  for (double v : rnsq)
    if (v > 0.0) ++nonzero_rows;
  require(tau >= 1 && tau <= nonzero_rows, ErrorCode::invalid_argument,
          "cyclic_block: block size out of range");
  BlockSample s;
  const index_t m = rnsq.size();
  while (s.indices.size() < tau) {
    const index_t i = start % m;
    ++start;
    if (rnsq[i] > 0.0) s.indices.push_back(i);
  }
  const double w = 1.0 / static_cast<double>(tau);
  for (index_t i : s.indices) {
    s.weights.push_back(w);
    s.normalized_weights.push_back(w / rnsq[i]);
  }
  return s;
}

RabkStep rabk_step_size(const SparseMatrix& a, const Vector& x, const Vector& b,
                        const BlockSample& block, double delta) {
  require(!block.indices.empty(), ErrorCode::invalid_argument,
          "rabk_step_size: empty block");
  require(delta > 0.0 && delta <= 1.0, ErrorCode::invalid_argument,
          "rabk_step_size: delta must lie in (0,1]");

  double num = 0.0;
  Vector direction(a.n_cols(), 0.0);
  bool any_nonzero = false;
  for (index_t t = 0; t < block.indices.size(); ++t) {
    const index_t i = block.indices[t];
    const double r = row_dot(a, i, x) - b[i];
    if (r != 0.0) any_nonzero = true;
    const double c = block.normalized_weights[t] * r;
    num += c * r;
    for (index_t k = a.row_offsets()[i]; k < a.row_offsets()[i + 1]; ++k)
      direction[a.col_indices()[k]] += c * a.values()[k];
  }

  RabkStep step;
  if (any_nonzero) {
    const double den = dot(direction, direction);
    // den == 0 with nonzero residuals means the averaged direction
    // cancelled exactly; the step moves nothing, so L is immaterial and
    // the 0/0 = 1 convention is applied.
    step.l_k = (den > 0.0) ? num / den : 1.0;
  } else {
    step.l_k = 1.0 / lambda_max_block(a, block.indices, block.normalized_weights);
  }
  step.alpha_k = (2.0 - delta) * step.l_k;
  return step;
}

KaczmarzResult rabk_solve(const SparseMatrix& a, const Vector& b,
                          const Vector& x0, const KaczmarzConfig& config) {
  require(config.max_steps >= 1, ErrorCode::invalid_argument,
          "rabk_solve: max_steps must be >= 1");
  const Vector rnsq = row_norms_sq(a);
  require(frobenius_sq(a) > 0.0, ErrorCode::invalid_argument, "degenerate row");

  KaczmarzResult res;
  res.x = x0;
  record(res.history, a, b, res.x, config.known_solution);
  const double target = config.eta * norm2(b);

  Rng rng(config.seed);
  index_t cyclic_pos = 0;
  for (long step = 0; step < config.max_steps; ++step) {
    if (res.history.residuals.back() <= target) {
      res.converged = true;
      break;
    }
    const BlockSample block =
        config.row_selection == RowSelection::randomized
            ? sample_block(rnsq, config.block_size, rng)
            : cyclic_block(rnsq, config.block_size, cyclic_pos);

    double alpha = config.alpha;
    if (config.step_mode == StepMode::adaptive)
      alpha = rabk_step_size(a, res.x, b, block, config.delta).alpha_k;

    // x <- x - alpha * sum_i wbar_i (a_i^T x - b_i) a_i
    Vector direction(a.n_cols(), 0.0);
    for (index_t t = 0; t < block.indices.size(); ++t) {
      const index_t i = block.indices[t];
      const double c =
          block.normalized_weights[t] * (row_dot(a, i, res.x) - b[i]);
      for (index_t k = a.row_offsets()[i]; k < a.row_offsets()[i + 1]; ++k)
        direction[a.col_indices()[k]] += c * a.values()[k];
    }
    axpy(-alpha, direction, res.x);
    ++res.steps;
    record(res.history, a, b, res.x, config.known_solution);
  }
  if (!res.converged && res.history.residuals.back() <= target)
    res.converged = true;
  return res;
}

}  // namespace bagmres
