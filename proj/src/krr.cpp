#include "klt/krr.hpp"

#include <cmath>

#include "klt/errors.hpp"

namespace klt::krr {

namespace {

// Cholesky solve of A x = b for symmetric positive definite A.
Vector spd_solve(Matrix a, Vector b) {
    const std::size_t n = a.rows();
    // lower factor in place
    for (std::size_t j = 0; j < n; ++j) {
        double d = a(j, j);
        for (std::size_t k = 0; k < j; ++k) d -= a(j, k) * a(j, k);
        if (!(d > 0.0))
            throw NotPositiveDefinite("spd_solve: matrix is not positive definite");
        d = std::sqrt(d);
        a(j, j) = d;
        for (std::size_t i = j + 1; i < n; ++i) {
            double s = a(i, j);
            for (std::size_t k = 0; k < j; ++k) s -= a(i, k) * a(j, k);
            a(i, j) = s / d;
        }
    }
    // forward then back substitution
    for (std::size_t i = 0; i < n; ++i) {
        double s = b[i];
        for (std::size_t k = 0; k < i; ++k) s -= a(i, k) * b[k];
        b[i] = s / a(i, i);
    }
    for (std::size_t ii = n; ii-- > 0;) {
        double s = b[ii];
        for (std::size_t k = ii + 1; k < n; ++k) s -= a(k, ii) * b[k];
        b[ii] = s / a(ii, ii);
    }
    return b;
}

} // namespace

KrrModel fit(const Matrix& points, const Vector& y, double beta,
             const kernels::KernelSpec& kernel) {
    const std::size_t m = points.cols();
    if (m < 1) throw InvalidInput("krr::fit: empty sample set");
    if (y.size() != m) throw InvalidInput("krr::fit: one target per sample required");
    if (!(beta > 0.0)) throw InvalidInput("krr::fit: beta must be positive");

    auto km = kernels::gram(kernel, points.transpose()).matrix;
    Matrix ridge = km;
    for (std::size_t i = 0; i < m; ++i) ridge(i, i) += beta;

    KrrModel model;
    model.sample_points = points;
    model.beta = beta;
    model.kernel = kernel;
    model.coefficients = spd_solve(std::move(ridge), y);
    model.fitted = km * model.coefficients;
    return model;
}

double predict(const KrrModel& model, const Vector& x) {
    if (x.size() != model.sample_points.rows())
        throw InvalidInput("krr::predict: point dimension mismatch");
    double s = 0.0;
    for (std::size_t i = 0; i < model.sample_points.cols(); ++i)
        s += model.coefficients[i] *
             kernels::eval(model.kernel, x, model.sample_points.col(i));
    return s;
}

double objective(const Matrix& points, const Vector& y, double beta,
                 const kernels::KernelSpec& kernel, const Vector& a) {
    if (!(beta > 0.0)) throw InvalidInput("krr::objective: beta must be positive");
    if (y.size() != points.cols() || a.size() != points.cols())
        throw InvalidInput("krr::objective: length mismatch");

    auto km = kernels::gram(kernel, points.transpose()).matrix;
    Vector ka = km * a;
    double fit2 = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i) {
        double r = y[i] - ka[i];
        fit2 += r * r;
    }
    return fit2 + beta * dot(a, ka);
}

} // namespace klt::krr
