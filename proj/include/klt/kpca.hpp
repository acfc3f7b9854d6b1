#ifndef KLT_KPCA_HPP
#define KLT_KPCA_HPP

#include <cstddef>
#include <vector>

#include "klt/kernels.hpp"
#include "klt/matrix.hpp"

namespace klt::kpca {

/// Kernel PCA model: dual eigensystem (U, D) of the centered training Gram,
/// JGJ = U D^2 U^T, truncated to the r modes above rank tolerance. The
/// uncentered Gram is retained for test-point centering.
struct KpcaModel {
    Matrix train_points; // d x n, columns are samples
    kernels::KernelSpec kernel;
    Matrix u;              // n x r
    std::vector<double> d; // r singular values, descending
    kernels::GramMatrix gram_uncentered;
    std::size_t k_retained = 0;
    bool truncated = false; // requested components exceeded the usable rank

    std::size_t rank() const { return d.size(); }
};

/// Builds the Gram matrix, centers it, eigendecomposes, and keeps
/// min(n_components, rank) components. Requesting more components than the
/// centered Gram supports soft-truncates and sets `truncated`.
KpcaModel fit(const Matrix& points, const kernels::KernelSpec& kernel,
              std::size_t n_components);

/// Projection coefficients of a test point onto the retained principal
/// directions: D^{-1} U^T ktilde(x), where the kernel column is centered the
/// same way the training Gram was, ktilde(x) = J (k(x) - (1/n) G 1). With
/// this centering, projecting a training point reproduces its training score
/// (row of U D) exactly.
Vector project(const KpcaModel& model, const Vector& x);

/// The uncentered textbook formula D^{-1} U^T k(x), kept for comparison with
/// the centered variant above.
Vector project_raw(const KpcaModel& model, const Vector& x);

/// n x k_retained matrix whose row j is project(model, x_j); coincides with
/// U D (truncated) up to round-off.
Matrix embed_dataset(const KpcaModel& model);

/// Retained variance sum_{j<=k} D_j^2 = tr(Q_k G) of the KL projection.
double variance_objective(const KpcaModel& model, std::size_t k);

} // namespace klt::kpca

#endif
