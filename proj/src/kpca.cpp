#include "klt/kpca.hpp"

#include <algorithm>

#include "klt/errors.hpp"
#include "klt/linalg.hpp"

namespace klt::kpca {

KpcaModel fit(const Matrix& points, const kernels::KernelSpec& kernel,
              std::size_t n_components) {
    if (points.cols() < 2)
        throw InvalidInput("kpca::fit: need at least two sample points");
    if (n_components < 1)
        throw InvalidInput("kpca::fit: need at least one component");

    KpcaModel model;
    model.train_points = points;
    model.kernel = kernel;
    model.gram_uncentered = kernels::gram(kernel, points.transpose());

    auto centered = kernels::center_gram(model.gram_uncentered);
    auto svd = linalg::gram_svd(centered.matrix);

    model.u = std::move(svd.u);
    model.d = std::move(svd.d);
    model.k_retained = std::min(n_components, model.d.size());
    model.truncated = n_components > model.d.size();
    return model;
}

namespace {

// centered kernel column ktilde(x) = J (k(x) - (1/n) G 1)
Vector centered_kernel_column(const KpcaModel& model, const Vector& x) {
    const std::size_t n = model.train_points.cols();
    Vector kx(n);
    for (std::size_t i = 0; i < n; ++i)
        kx[i] = kernels::eval(model.kernel, model.train_points.col(i), x);

    const Matrix& g = model.gram_uncentered.matrix;
    Vector g_mean(n, 0.0); // (1/n) G 1
    for (std::size_t i = 0; i < n; ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < n; ++j) s += g(i, j);
        g_mean[i] = s / static_cast<double>(n);
    }

    double shift = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        kx[i] -= g_mean[i];
        shift += kx[i];
    }
    shift /= static_cast<double>(n);
    for (double& v : kx) v -= shift; // apply J
    return kx;
}

Vector dual_coefficients(const KpcaModel& model, const Vector& column) {
    Vector out(model.k_retained, 0.0);
    for (std::size_t j = 0; j < model.k_retained; ++j) {
        double s = 0.0;
        for (std::size_t i = 0; i < column.size(); ++i)
            s += model.u(i, j) * column[i];
        out[j] = s / model.d[j];
    }
    return out;
}

} // namespace

Vector project(const KpcaModel& model, const Vector& x) {
    if (x.size() != model.train_points.rows())
        throw InvalidInput("kpca::project: point dimension mismatch");
    return dual_coefficients(model, centered_kernel_column(model, x));
}

Vector project_raw(const KpcaModel& model, const Vector& x) {
    if (x.size() != model.train_points.rows())
        throw InvalidInput("kpca::project: point dimension mismatch");
    const std::size_t n = model.train_points.cols();
    Vector kx(n);
    for (std::size_t i = 0; i < n; ++i)
        kx[i] = kernels::eval(model.kernel, model.train_points.col(i), x);
    return dual_coefficients(model, kx);
}

Matrix embed_dataset(const KpcaModel& model) {
    const std::size_t n = model.train_points.cols();
    Matrix out(n, model.k_retained);
    for (std::size_t j = 0; j < n; ++j)
        out.set_row(j, project(model, model.train_points.col(j)));
    return out;
}

double variance_objective(const KpcaModel& model, std::size_t k) {
    if (k > model.rank())
        throw InvalidInput("kpca::variance_objective: k exceeds rank");
    double s = 0.0;
    for (std::size_t j = 0; j < k; ++j) s += model.d[j] * model.d[j];
    return s;
}

} // namespace klt::kpca
