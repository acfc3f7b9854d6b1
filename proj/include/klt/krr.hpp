#ifndef KLT_KRR_HPP
#define KLT_KRR_HPP

#include "klt/kernels.hpp"
#include "klt/matrix.hpp"

namespace klt::krr {

/// Kernel ridge regression fit: F(x) = sum_i c_i K(x, t_i) with
/// c = (K_m + beta I)^{-1} y.
struct KrrModel {
    Matrix sample_points; // d x m, columns t_i
    Vector coefficients;  // c, length m
    double beta = 0.0;
    kernels::KernelSpec kernel;
    Vector fitted; // F(t_i) = (K_m c)_i
};

/// Solves the ridge system by Cholesky factorization of K_m + beta I.
/// A factorization breakdown (impossible for beta > 0 and PSD K_m) signals
/// a non-positive-definite kernel matrix.
KrrModel fit(const Matrix& points, const Vector& y, double beta,
             const kernels::KernelSpec& kernel);

double predict(const KrrModel& model, const Vector& x);

/// The regularized least-squares objective at coefficient vector a:
/// |y - K_m a|^2 + beta a^T K_m a.
double objective(const Matrix& points, const Vector& y, double beta,
                 const kernels::KernelSpec& kernel, const Vector& a);

} // namespace klt::krr

#endif
