#include "klt/kernels.hpp"

#include <algorithm>
#include <cmath>

#include "klt/errors.hpp"
#include "klt/linalg.hpp"

namespace klt::kernels {

KernelSpec KernelSpec::gaussian(double sigma) {
    if (!(sigma > 0.0))
        throw InvalidInput("gaussian kernel: sigma must be positive");
    return {Kind::gaussian, sigma};
}

std::string KernelSpec::name() const {
    switch (kind) {
        case Kind::gaussian: return "gaussian";
        case Kind::exponential: return "exponential";
        case Kind::brownian_min: return "brownian_min";
        case Kind::linear: return "linear";
    }
    return "?";
}

double eval(const KernelSpec& k, const Vector& x, const Vector& y) {
    if (x.size() != y.size())
        throw InvalidInput("kernel eval: dimension mismatch");
    switch (k.kind) {
        case KernelSpec::Kind::gaussian: {
            double d2 = 0.0;
            for (std::size_t i = 0; i < x.size(); ++i) {
                double d = x[i] - y[i];
                d2 += d * d;
            }
            return std::exp(-d2 / k.sigma);
        }
        case KernelSpec::Kind::exponential: {
            double d2 = 0.0;
            for (std::size_t i = 0; i < x.size(); ++i) {
                double d = x[i] - y[i];
                d2 += d * d;
            }
            return std::exp(-0.5 * std::sqrt(d2));
        }
        case KernelSpec::Kind::brownian_min: {
            if (x.size() != 1)
                throw InvalidInput("brownian_min kernel: scalar inputs required");
            if (x[0] < 0.0 || y[0] < 0.0)
                throw InvalidInput("brownian_min kernel: negative input");
            return std::min(x[0], y[0]);
        }
        case KernelSpec::Kind::linear:
            return dot(x, y);
    }
    throw InvalidInput("kernel eval: unknown kernel");
}

GramMatrix gram(const KernelSpec& k, const Matrix& points) {
    const std::size_t m = points.rows();
    if (m < 1) throw InvalidInput("gram: empty point set");
    if (k.kind == KernelSpec::Kind::brownian_min) {
        if (points.cols() != 1)
            throw InvalidInput("gram: brownian_min requires one-dimensional points");
        for (std::size_t i = 0; i < m; ++i)
            if (points(i, 0) <= 0.0)
                throw InvalidInput("gram: brownian_min requires positive points");
    }

    GramMatrix out;
    out.matrix = Matrix(m, m);
    out.centered = false;
    for (std::size_t i = 0; i < m; ++i) {
        Vector xi = points.row(i);
        for (std::size_t j = i; j < m; ++j) {
            double v = eval(k, xi, points.row(j));
            out.matrix(i, j) = v;
            out.matrix(j, i) = v;
        }
    }
    return out;
}

GramMatrix center_gram(const GramMatrix& g) {
    if (g.centered) throw InvalidState("center_gram: matrix is already centered");
    const Matrix& a = g.matrix;
    const std::size_t n = a.rows();

    // J G J expanded: g_ij - rowmean_i - colmean_j + totalmean
    Vector row_mean(n, 0.0);
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < n; ++j) s += a(i, j);
        row_mean[i] = s / static_cast<double>(n);
        total += s;
    }
    total /= static_cast<double>(n * n);

    GramMatrix out;
    out.matrix = Matrix(n, n);
    out.centered = true;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            out.matrix(i, j) = a(i, j) - row_mean[i] - row_mean[j] + total;
    return out;
}

bool check_pd(const GramMatrix& g, double tol) {
    if (tol < 0.0) throw InvalidInput("check_pd: tol must be nonnegative");
    auto eig = linalg::jacobi_eigh(g.matrix);
    if (eig.eigenvalues.empty()) return true;
    double lo = eig.eigenvalues.back();
    double hi = eig.eigenvalues.front();
    return lo >= -tol * std::max(1.0, hi);
}

} // namespace klt::kernels
