#ifndef KLT_LINALG_HPP
#define KLT_LINALG_HPP

#include <cstddef>
#include <vector>

#include "klt/matrix.hpp"

namespace klt::linalg {

/// Eigensystem of a symmetric matrix. Eigenvalues are sorted descending;
/// column j of `eigenvectors` is the unit eigenvector for eigenvalues[j].
/// Sign convention: the first component of each eigenvector with magnitude
/// above 1e-12 is positive.
struct SpectralDecomposition {
    std::vector<double> eigenvalues;
    Matrix eigenvectors;
};

/// Rank-revealing factorization of a Gramian LL* = U D^2 U^T. `u` is n x r,
/// `d` holds the r singular values above rank_tol, descending.
/// `w_coefficients` = U D^{-1}: column j holds the coefficients expressing
/// the j-th synthesized basis vector W_j = sum_i (UD^{-1})_ij f_i over the
/// analysis frame, so W never needs the frame vectors themselves.
struct SingularDecomposition {
    Matrix u;
    std::vector<double> d;
    Matrix w_coefficients;
};

struct PowerIterationResult {
    double lambda_est = 0.0;
    Vector vec_est;
    std::vector<double> ratio_history; // estimate after each step
};

/// Cyclic Jacobi eigensolver for symmetric matrices; the reference oracle
/// the iterative routines are tested against. Caps at 100 sweeps.
SpectralDecomposition jacobi_eigh(const Matrix& m, double tol = 1e-12);

/// Norm-ratio power iteration: lambda_est = |G^{n+1}x0| / |G^n x0|,
/// vec_est = G^n x0 normalized (computed with per-step renormalization,
/// which leaves both quantities unchanged).
PowerIterationResult power_iteration(const Matrix& g, const Vector& x0, std::size_t n);

/// Top-k eigenpairs by power iteration with deflation G -> Q^perp G Q^perp.
/// Refuses (SpectralGapTooSmall) when the requested pairs are not separated
/// well enough for the iteration to pin them down.
SpectralDecomposition top_k_spectrum(const Matrix& g, std::size_t k, std::size_t n_steps);

/// Hilbert-Schmidt (Frobenius) norm: sqrt(sum of squared entries).
double hs_norm(const Matrix& m);

/// Eigendecomposition of a symmetric PSD Gramian with rank truncation:
/// eigenvalues (squared singular values) are kept while above 1e-10 relative
/// to the largest one.
SingularDecomposition gram_svd(const Matrix& gramian);

} // namespace klt::linalg

#endif
