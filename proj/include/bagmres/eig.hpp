/// @file eig.hpp
/// @brief Desk-scale dense spectral computations: eigenvalues via
///        Hessenberg reduction + shifted QR, spectral radius/norm,
///        condition numbers, the row-action rate constants and the
///        semi-convergence check.

#ifndef BAGMRES_EIG_HPP
#define BAGMRES_EIG_HPP

#include <complex>

#include "bagmres/sparse.hpp"

namespace bagmres {

/// All eigenvalues of a real square matrix.  Throws no_convergence when
/// the QR iteration fails to deflate (never silent).
std::vector<std::complex<double>> dense_eigenvalues(const DenseMatrix& m);

/// Eigenvalues of a symmetric matrix, sorted ascending.  Validates that
/// the computed spectrum is real to tolerance.
Vector symmetric_eigenvalues(const DenseMatrix& m);

double spectral_radius(const DenseMatrix& m);

/// Matrix 2-norm via the largest eigenvalue of M^T M.
double spectral_norm(const DenseMatrix& m);

enum class GramSide { ata, aat };

/// Smallest eigenvalue of A^T A or A A^T exceeding 1e-10 * lambda_max.
double min_nonzero_eig_gram(const SparseMatrix& a, GramSide side);

/// Largest eigenvalue of A_J^T diag(wbar) A_J for the row subset J.
double lambda_max_block(const SparseMatrix& a, const std::vector<index_t>& block,
                        const Vector& wbar);

/// W = A^T diag(p_i / ||a_i||^2) A; probabilities must sum to 1 over the
/// nonzero rows and vanish on zero rows.
DenseMatrix build_W(const SparseMatrix& a, const Vector& probabilities);

/// True iff lim H^i exists: rho(H) < 1, or rho(H) = 1 with 1 the only
/// unit-modulus eigenvalue and that eigenvalue semisimple.
bool is_semi_convergent(const DenseMatrix& h);

/// Euclidean condition number: ratio of extreme singular values computed
/// from the eigenvalues of M^T M.  Throws singular_matrix.
double condition_2(const DenseMatrix& m);

/// Spectral condition number max|lambda| / min|lambda|; the quantity
/// preserved by similarity transformations.
double condition_eig(const DenseMatrix& m);

struct SpectralSummary {
  std::vector<std::complex<double>> eigenvalues;
  double spectral_radius = 0.0;
  double min_nonzero_eig = 0.0;  ///< NaN when not symmetric PSD
  double condition_2 = 0.0;      ///< NaN when singular
};

SpectralSummary spectral_summary(const DenseMatrix& m);

}  // namespace bagmres

#endif  // BAGMRES_EIG_HPP
