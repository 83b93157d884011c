#include "bagmres/eig.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace bagmres {

namespace {

// Householder reduction to upper Hessenberg form, transformations not
// accumulated (eigenvalues only).
void hessenberg_reduce(DenseMatrix& h) {
  const int n = static_cast<int>(h.rows());
  const int low = 0;
  const int high = n - 1;
  Vector ort(n, 0.0);

  for (int m = low + 1; m <= high - 1; ++m) {
    double scale = 0.0;
    for (int i = m; i <= high; ++i) scale += std::abs(h(i, m - 1));
    if (scale == 0.0) continue;

    double hh = 0.0;
    for (int i = high; i >= m; --i) {
      ort[i] = h(i, m - 1) / scale;
      hh += ort[i] * ort[i];
    }
    double g = std::sqrt(hh);
    if (ort[m] > 0) g = -g;
    hh -= ort[m] * g;
    ort[m] -= g;

    // Householder similarity transformation  H = (I - u u^T / h) H (I - u u^T / h)
    for (int j = m; j < n; ++j) {
      double f = 0.0;
      for (int i = high; i >= m; --i) f += ort[i] * h(i, j);
      f /= hh;
      for (int i = m; i <= high; ++i) h(i, j) -= f * ort[i];
    }
    for (int i = 0; i <= high; ++i) {
      double f = 0.0;
      for (int j = high; j >= m; --j) f += ort[j] * h(i, j);
      f /= hh;
      for (int j = m; j <= high; ++j) h(i, j) -= f * ort[j];
    }
    h(m, m - 1) = scale * g;
    for (int i = m + 1; i <= high; ++i) h(i, m - 1) = 0.0;
  }
}

// Shifted QR iteration on a Hessenberg matrix (Francis double shift),
// eigenvalues only.  Ported from the classic real Schur reduction.
void hqr_eigenvalues(DenseMatrix& h, Vector& d, Vector& e) {
  const int nn = static_cast<int>(h.rows());
  int n = nn - 1;
  const int low = 0;
  const double eps = 0x1.0p-52;
  double exshift = 0.0;
  double p = 0, q = 0, r = 0, s = 0, z = 0, w, x, y;

  double norm = 0.0;
  for (int i = 0; i < nn; ++i)
    for (int j = std::max(i - 1, 0); j < nn; ++j) norm += std::abs(h(i, j));

  int iter = 0;
  long total_iter = 0;
  const long iter_cap = 60L * std::max(nn, 1);
  while (n >= low) {
    if (++total_iter > iter_cap * 8)
      throw Error(ErrorCode::no_convergence, "qr iteration did not converge");

    // Look for a single small sub-diagonal element.
    int l = n;
    while (l > low) {
      s = std::abs(h(l - 1, l - 1)) + std::abs(h(l, l));
      if (s == 0.0) s = norm;
      if (std::abs(h(l, l - 1)) < eps * s) break;
      --l;
    }

    if (l == n) {
      // One root found.
      h(n, n) += exshift;
      d[n] = h(n, n);
      e[n] = 0.0;
      --n;
      iter = 0;
    } else if (l == n - 1) {
      // Two roots found.
      w = h(n, n - 1) * h(n - 1, n);
      p = (h(n - 1, n - 1) - h(n, n)) / 2.0;
      q = p * p + w;
      z = std::sqrt(std::abs(q));
      h(n, n) += exshift;
      h(n - 1, n - 1) += exshift;
      x = h(n, n);
      if (q >= 0) {
        // Real pair.
        z = (p >= 0) ? p + z : p - z;
        d[n - 1] = x + z;
        d[n] = d[n - 1];
        if (z != 0.0) d[n] = x - w / z;
        e[n - 1] = 0.0;
        e[n] = 0.0;
      } else {
        // Complex pair.
        d[n - 1] = x + p;
        d[n] = x + p;
        e[n - 1] = z;
        e[n] = -z;
      }
      n -= 2;
      iter = 0;
    } else {
      // No convergence yet; form the shift.
      x = h(n, n);
      y = 0.0;
      w = 0.0;
      if (l < n) {
        y = h(n - 1, n - 1);
        w = h(n, n - 1) * h(n - 1, n);
      }

      // Wilkinson's original ad hoc shift.
      if (iter == 10) {
        exshift += x;
        for (int i = low; i <= n; ++i) h(i, i) -= x;
        s = std::abs(h(n, n - 1)) + std::abs(h(n - 1, n - 2));
        x = y = 0.75 * s;
        w = -0.4375 * s * s;
      }

      // MATLAB's new ad hoc shift.
      if (iter == 30) {
        s = (y - x) / 2.0;
        s = s * s + w;
        if (s > 0) {
          s = std::sqrt(s);
          if (y < x) s = -s;
          s = x - w / ((y - x) / 2.0 + s);
          for (int i = low; i <= n; ++i) h(i, i) -= s;
          exshift += s;
          x = y = w = 0.964;
        }
      }

      ++iter;
      if (iter > iter_cap)
        throw Error(ErrorCode::no_convergence, "qr iteration did not converge");

      // Look for two consecutive small sub-diagonal elements.
      int m = n - 2;
      while (m >= l) {
        z = h(m, m);
        r = x - z;
        s = y - z;
        p = (r * s - w) / h(m + 1, m) + h(m, m + 1);
        q = h(m + 1, m + 1) - z - r - s;
        r = h(m + 2, m + 1);
        s = std::abs(p) + std::abs(q) + std::abs(r);
        p /= s;
        q /= s;
        r /= s;
        if (m == l) break;
        if (std::abs(h(m, m - 1)) * (std::abs(q) + std::abs(r)) <
            eps * (std::abs(p) * (std::abs(h(m - 1, m - 1)) + std::abs(z) +
                                  std::abs(h(m + 1, m + 1)))))
          break;
        --m;
      }

      for (int i = m + 2; i <= n; ++i) {
        h(i, i - 2) = 0.0;
        if (i > m + 2) h(i, i - 3) = 0.0;
      }

      // Double QR step on rows l..n and columns m..n.
      for (int k = m; k <= n - 1; ++k) {
        const bool notlast = (k != n - 1);
        if (k != m) {
          p = h(k, k - 1);
          q = h(k + 1, k - 1);
          r = notlast ? h(k + 2, k - 1) : 0.0;
          x = std::abs(p) + std::abs(q) + std::abs(r);
          if (x == 0.0) continue;
          p /= x;
          q /= x;
          r /= x;
        }
        s = std::sqrt(p * p + q * q + r * r);
        if (p < 0) s = -s;
        if (s != 0) {
          if (k != m)
            h(k, k - 1) = -s * x;
          else if (l != m)
            h(k, k - 1) = -h(k, k - 1);
          p += s;
          x = p / s;
          y = q / s;
          z = r / s;
          q /= p;
          r /= p;

          for (int j = k; j < nn; ++j) {
            p = h(k, j) + q * h(k + 1, j);
            if (notlast) {
              p += r * h(k + 2, j);
              h(k + 2, j) -= p * z;
            }
            h(k, j) -= p * x;
            h(k + 1, j) -= p * y;
          }
          for (int i = 0; i <= std::min(n, k + 3); ++i) {
            p = x * h(i, k) + y * h(i, k + 1);
            if (notlast) {
              p += z * h(i, k + 2);
              h(i, k + 2) -= p * r;
            }
            h(i, k) -= p;
            h(i, k + 1) -= p * q;
          }
        }
      }
    }
  }
}

DenseMatrix gram_dense(const DenseMatrix& a, bool transpose_first) {
  // transpose_first: A^T A, otherwise A A^T.
  if (transpose_first) return a.transposed() * a;
  return a * a.transposed();
}

}  // namespace

std::vector<std::complex<double>> dense_eigenvalues(const DenseMatrix& m) {
  require(m.is_square(), ErrorCode::invalid_argument,
          "dense_eigenvalues: non-square input");
  require(m.rows() <= kDenseCap, ErrorCode::invalid_argument,
          "dense_eigenvalues: matrix exceeds the dense cap");
  const index_t n = m.rows();
  if (n == 0) return {};
  DenseMatrix h = m;
  Vector d(n, 0.0), e(n, 0.0);
  hessenberg_reduce(h);
  hqr_eigenvalues(h, d, e);
  std::vector<std::complex<double>> ev(n);
  for (index_t i = 0; i < n; ++i) ev[i] = {d[i], e[i]};
  return ev;
}

Vector symmetric_eigenvalues(const DenseMatrix& m) {
  const auto ev = dense_eigenvalues(m);
  const double tol = 1e-8 * (m.frobenius_norm() + 1.0);
  Vector out(ev.size());
  for (index_t i = 0; i < ev.size(); ++i) {
    require(std::abs(ev[i].imag()) <= tol, ErrorCode::no_convergence,
            "symmetric_eigenvalues: complex eigenvalue on symmetric input");
    out[i] = ev[i].real();
  }
  std::sort(out.begin(), out.end());
  return out;
}

double spectral_radius(const DenseMatrix& m) {
  double rho = 0.0;
  for (const auto& ev : dense_eigenvalues(m)) rho = std::max(rho, std::abs(ev));
  return rho;
}

double spectral_norm(const DenseMatrix& m) {
  if (m.rows() == 0 || m.cols() == 0) return 0.0;
  const Vector ev = symmetric_eigenvalues(gram_dense(m, true));
  return std::sqrt(std::max(0.0, ev.back()));
}

double min_nonzero_eig_gram(const SparseMatrix& a, GramSide side) {
  const DenseMatrix gram = gram_dense(a.to_dense(), side == GramSide::ata);
  const Vector ev = symmetric_eigenvalues(gram);
  const double lam_max = ev.empty() ? 0.0 : ev.back();
  const double tol = 1e-10 * lam_max;
  for (double lam : ev)
    if (lam > tol) return lam;
  throw Error(ErrorCode::invalid_argument,
              "min_nonzero_eig_gram: all eigenvalues are numerically zero");
}

double lambda_max_block(const SparseMatrix& a, const std::vector<index_t>& block,
                        const Vector& wbar) {
  require(!block.empty(), ErrorCode::invalid_argument,
          "lambda_max_block: empty block");
  require(wbar.size() == block.size(), ErrorCode::dimension_mismatch,
          "lambda_max_block: weight count != block size");
  const index_t n = a.n_cols();
  DenseMatrix g(n, n);
  for (index_t t = 0; t < block.size(); ++t) {
    const index_t i = block[t];
    require(i < a.n_rows(), ErrorCode::invalid_argument,
            "lambda_max_block: row index out of range");
    const index_t b = a.row_offsets()[i], ee = a.row_offsets()[i + 1];
    for (index_t k1 = b; k1 < ee; ++k1)
      for (index_t k2 = b; k2 < ee; ++k2)
        g(a.col_indices()[k1], a.col_indices()[k2]) +=
            wbar[t] * a.values()[k1] * a.values()[k2];
  }
  const Vector ev = symmetric_eigenvalues(g);
  return ev.empty() ? 0.0 : ev.back();
}

DenseMatrix build_W(const SparseMatrix& a, const Vector& probabilities) {
  require(probabilities.size() == a.n_rows(), ErrorCode::dimension_mismatch,
          "build_W: probability count != rows");
  const Vector rn = row_norms_sq(a);
  double psum = 0.0;
  for (index_t i = 0; i < a.n_rows(); ++i) {
    require(probabilities[i] >= 0.0, ErrorCode::invalid_argument,
            "build_W: negative probability");
    if (rn[i] == 0.0)
      require(probabilities[i] == 0.0, ErrorCode::invalid_argument,
              "build_W: nonzero probability on a zero row");
    psum += probabilities[i];
  }
  require(std::abs(psum - 1.0) <= 1e-8, ErrorCode::invalid_argument,
          "build_W: probabilities do not sum to 1");
  const index_t n = a.n_cols();
  DenseMatrix w(n, n);
  for (index_t i = 0; i < a.n_rows(); ++i) {
    if (probabilities[i] == 0.0) continue;
    const double coef = probabilities[i] / rn[i];
    const index_t b = a.row_offsets()[i], ee = a.row_offsets()[i + 1];
    for (index_t k1 = b; k1 < ee; ++k1)
      for (index_t k2 = b; k2 < ee; ++k2)
        w(a.col_indices()[k1], a.col_indices()[k2]) +=
            coef * a.values()[k1] * a.values()[k2];
  }
  return w;
}

bool is_semi_convergent(const DenseMatrix& h) {
  require(h.is_square(), ErrorCode::invalid_argument,
          "is_semi_convergent: non-square input");
  const auto ev = dense_eigenvalues(h);
  const double unit_tol = 1e-8;
  double rho = 0.0;
  for (const auto& lam : ev) rho = std::max(rho, std::abs(lam));
  if (rho < 1.0 - unit_tol) return true;
  if (rho > 1.0 + unit_tol) return false;
  // Spectral radius is (numerically) one: every eigenvalue on the unit
  // circle must be 1 itself, and 1 must be semisimple.
  index_t algebraic = 0;
  for (const auto& lam : ev) {
    if (std::abs(lam) < 1.0 - unit_tol) continue;
    if (std::abs(lam - std::complex<double>(1.0, 0.0)) > unit_tol) return false;
    ++algebraic;
  }
  const index_t n = h.rows();
  const DenseMatrix shifted = h - DenseMatrix::identity(n);
  const double rank_tol = 1e-8 * h.frobenius_norm();
  const index_t geometric = n - numerical_rank(shifted, rank_tol);
  return geometric == algebraic;
}

double condition_2(const DenseMatrix& m) {
  require(m.is_square(), ErrorCode::invalid_argument,
          "condition_2: non-square input");
  const Vector ev = symmetric_eigenvalues(gram_dense(m, true));
  const double lam_max = ev.back();
  const double lam_min = ev.front();
  require(lam_min > 1e-30 * lam_max, ErrorCode::singular_matrix,
          "condition_2: numerically singular input");
  return std::sqrt(lam_max / lam_min);
}

double condition_eig(const DenseMatrix& m) {
  const auto ev = dense_eigenvalues(m);
  double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
  for (const auto& lam : ev) {
    lo = std::min(lo, std::abs(lam));
    hi = std::max(hi, std::abs(lam));
  }
  require(lo > 1e-30 * hi, ErrorCode::singular_matrix,
          "condition_eig: zero eigenvalue");
  return hi / lo;
}

SpectralSummary spectral_summary(const DenseMatrix& m) {
  SpectralSummary s;
  s.eigenvalues = dense_eigenvalues(m);
  s.spectral_radius = 0.0;
  for (const auto& lam : s.eigenvalues)
    s.spectral_radius = std::max(s.spectral_radius, std::abs(lam));

  const double nan = std::numeric_limits<double>::quiet_NaN();
  bool symmetric = m.is_square();
  for (index_t i = 0; symmetric && i < m.rows(); ++i)
    for (index_t j = i + 1; j < m.cols(); ++j)
      if (m(i, j) != m(j, i)) {
        symmetric = false;
        break;
      }
  s.min_nonzero_eig = nan;
  if (symmetric) {
    double lam_max = 0.0;
    bool psd = true;
    for (const auto& lam : s.eigenvalues) {
      lam_max = std::max(lam_max, lam.real());
      if (lam.real() < -1e-10 * m.frobenius_norm()) psd = false;
    }
    if (psd) {
      const double tol = 1e-10 * lam_max;
      double best = std::numeric_limits<double>::infinity();
      for (const auto& lam : s.eigenvalues)
        if (lam.real() > tol) best = std::min(best, lam.real());
      if (std::isfinite(best)) s.min_nonzero_eig = best;
    }
  }
  try {
    s.condition_2 = condition_2(m);
  } catch (const Error&) {
    s.condition_2 = nan;
  }
  return s;
}

}  // namespace bagmres
