#ifndef KLT_KERNELS_HPP
#define KLT_KERNELS_HPP

#include <string>

#include "klt/matrix.hpp"

namespace klt::kernels {

/// Positive-definite kernel descriptor.
///   gaussian     K(x,y) = exp(-|x-y|^2 / sigma)   (sigma divides, no factor 2)
///   exponential  K(s,t) = exp(-|s-t| / 2)
///   brownian_min K(s,t) = min(s,t), nonnegative scalars only
///   linear       K(x,y) = <x,y>
struct KernelSpec {
    enum class Kind { gaussian, exponential, brownian_min, linear };

    Kind kind = Kind::linear;
    double sigma = 0.0; // gaussian only

    static KernelSpec gaussian(double sigma);
    static KernelSpec exponential() { return {Kind::exponential, 0.0}; }
    static KernelSpec brownian_min() { return {Kind::brownian_min, 0.0}; }
    static KernelSpec linear() { return {Kind::linear, 0.0}; }

    std::string name() const;
};

/// Sampled n x n kernel matrix. `centered` records whether the double
/// centering J G J has been applied.
struct GramMatrix {
    Matrix matrix;
    bool centered = false;
};

double eval(const KernelSpec& k, const Vector& x, const Vector& y);

/// Gram matrix of a point set; row i of `points` is the i-th point.
/// brownian_min requires one-dimensional, strictly positive points.
GramMatrix gram(const KernelSpec& k, const Matrix& points);

/// Double centering G -> J G J with J = I - (1/n) 1 1^T. Rejects input
/// that is already centered.
GramMatrix center_gram(const GramMatrix& g);

/// True iff the smallest eigenvalue is >= -tol * max(1, largest eigenvalue).
bool check_pd(const GramMatrix& g, double tol);

} // namespace klt::kernels

#endif
