#include "klt/pca.hpp"

#include <algorithm>
#include <cmath>

#include "klt/errors.hpp"
#include "klt/linalg.hpp"

namespace klt::pca {

FrameOperator::FrameOperator(Matrix vectors, Vector weights)
    : vectors_(std::move(vectors)), weights_(std::move(weights)) {
    if (vectors_.cols() != weights_.size())
        throw InvalidInput("FrameOperator: one weight per vector required");
    for (std::size_t a = 0; a < weights_.size(); ++a) {
        if (weights_[a] < 0.0)
            throw InvalidInput("FrameOperator: negative weight");
        if (std::abs(norm(vectors_.col(a)) - 1.0) > 1e-10)
            throw InvalidInput("FrameOperator: frame vectors must be unit");
    }
}

double FrameOperator::weight_sum() const {
    double s = 0.0;
    for (double w : weights_) s += w;
    return s;
}

Matrix FrameOperator::assemble() const {
    const std::size_t d = vectors_.rows();
    Matrix g(d, d);
    for (std::size_t a = 0; a < weights_.size(); ++a) {
        Vector f = vectors_.col(a);
        double w = weights_[a];
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < d; ++j) g(i, j) += w * f[i] * f[j];
    }
    return g;
}

PcaModel fit(const Matrix& samples) {
    const std::size_t d = samples.rows();
    const std::size_t n = samples.cols();
    if (n < 1 || d < 1) throw InvalidInput("pca::fit: empty sample matrix");

    PcaModel model;
    model.mean.assign(d, 0.0);
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < d; ++i) model.mean[i] += samples(i, j);
    for (double& m : model.mean) m /= static_cast<double>(n);

    // population covariance C = (1/n) B B^T
    Matrix cov(d, d);
    for (std::size_t j = 0; j < n; ++j) {
        Vector b(d);
        for (std::size_t i = 0; i < d; ++i) b[i] = samples(i, j) - model.mean[i];
        for (std::size_t r = 0; r < d; ++r)
            for (std::size_t c = r; c < d; ++c) cov(r, c) += b[r] * b[c];
    }
    for (std::size_t r = 0; r < d; ++r)
        for (std::size_t c = r; c < d; ++c) {
            cov(r, c) /= static_cast<double>(n);
            cov(c, r) = cov(r, c);
        }

    auto eig = linalg::jacobi_eigh(cov);
    for (double& lam : eig.eigenvalues) {
        if (lam < -1e-10)
            throw NotPositiveDefinite("pca::fit: covariance eigenvalue below -1e-10");
        if (lam < 0.0) lam = 0.0;
    }
    model.eigenvalues = std::move(eig.eigenvalues);
    model.feature_matrix = eig.eigenvectors.transpose(); // eigenvectors as rows
    return model;
}

Matrix transform(const PcaModel& model, const Matrix& x) {
    const std::size_t d = model.mean.size();
    if (x.rows() != d)
        throw InvalidInput("pca::transform: feature dimension mismatch");
    Matrix centered = x;
    for (std::size_t j = 0; j < x.cols(); ++j)
        for (std::size_t i = 0; i < d; ++i) centered(i, j) -= model.mean[i];
    return model.feature_matrix * centered;
}

Matrix reconstruct(const PcaModel& model, const Matrix& y, std::size_t l) {
    const std::size_t d = model.mean.size();
    if (l < 1 || l > d)
        throw InvalidInput("pca::reconstruct: component count out of range");
    if (y.rows() != d)
        throw InvalidInput("pca::reconstruct: scores have wrong dimension");

    // A_l^T Y_l + mean, keeping only the top-l rows of A and of Y
    Matrix out(d, y.cols());
    for (std::size_t j = 0; j < y.cols(); ++j)
        for (std::size_t i = 0; i < d; ++i) {
            double s = 0.0;
            for (std::size_t k = 0; k < l; ++k)
                s += model.feature_matrix(k, i) * y(k, j);
            out(i, j) = s + model.mean[i];
        }
    return out;
}

double residual_error(const Matrix& g, const Matrix& onb, std::size_t n) {
    if (g.rows() != g.cols() || g.rows() != onb.rows())
        throw InvalidInput("residual_error: dimension mismatch");
    if (n > onb.cols())
        throw InvalidInput("residual_error: n exceeds basis size");
    for (std::size_t a = 0; a < onb.cols(); ++a) {
        Vector va = onb.col(a);
        if (std::abs(dot(va, va) - 1.0) > 1e-8)
            throw InvalidInput("residual_error: basis columns not unit");
        for (std::size_t b = a + 1; b < onb.cols(); ++b)
            if (std::abs(dot(va, onb.col(b))) > 1e-8)
                throw InvalidInput("residual_error: basis columns not orthogonal");
    }

    // tr(G Qn_perp) = tr(G) - sum_{i<=n} <psi_i, G psi_i>
    double err = g.trace();
    for (std::size_t i = 0; i < n; ++i) {
        Vector psi = onb.col(i);
        err -= dot(psi, g * psi);
    }
    return err;
}

FrameBounds frame_bounds(const Matrix& vectors) {
    if (vectors.cols() == 0 || vectors.rows() == 0)
        throw InvalidInput("frame_bounds: empty vector system");

    const std::size_t d = vectors.rows();
    Matrix s(d, d);
    for (std::size_t a = 0; a < vectors.cols(); ++a) {
        Vector h = vectors.col(a);
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < d; ++j) s(i, j) += h[i] * h[j];
    }
    auto eig = linalg::jacobi_eigh(s);

    FrameBounds out;
    out.c2 = eig.eigenvalues.front();
    double lo = eig.eigenvalues.back();
    out.spanning = lo > 1e-10 * std::max(1.0, out.c2);
    out.c1 = out.spanning ? lo : 0.0;
    return out;
}

ColorPca color_pca(const Matrix& rgb, std::size_t width, std::size_t height) {
    if (rgb.rows() != 3)
        throw InvalidInput("color_pca: expected 3 x (w*h) RGB samples");
    if (rgb.cols() != width * height || rgb.cols() == 0)
        throw InvalidInput("color_pca: sample count does not match width*height");
    for (double v : rgb.entries())
        if (v < 0.0 || v > 1.0)
            throw InvalidInput("color_pca: pixel samples must lie in [0,1]");

    ColorPca out;
    out.model = fit(rgb);
    out.scores = transform(out.model, rgb);
    for (std::size_t k = 0; k < 3; ++k) {
        data::GrayImage plane(width, height);
        double lo = out.scores(k, 0), hi = lo;
        for (std::size_t j = 0; j < out.scores.cols(); ++j) {
            lo = std::min(lo, out.scores(k, j));
            hi = std::max(hi, out.scores(k, j));
        }
        double span = hi - lo;
        for (std::size_t j = 0; j < out.scores.cols(); ++j)
            plane.pixels[j] = span > 0.0 ? (out.scores(k, j) - lo) / span : 0.0;
        out.planes[k] = std::move(plane);
    }
    return out;
}

} // namespace klt::pca
