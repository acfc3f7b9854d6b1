#include "klt/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>

#include "klt/errors.hpp"

namespace klt::linalg {

namespace {

constexpr double kSymTol = 1e-12;
constexpr int kMaxSweeps = 100;

void require_symmetric(const Matrix& m, const char* who) {
    if (m.rows() != m.cols())
        throw InvalidInput(std::string(who) + ": matrix is not square");
    if (!m.is_symmetric(kSymTol))
        throw InvalidInput(std::string(who) + ": matrix is not symmetric");
}

double offdiag_hs(const Matrix& a) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = i + 1; j < a.cols(); ++j) s += a(i, j) * a(i, j);
    return std::sqrt(2.0 * s);
}

// Flip so the first component with |v_i| > 1e-12 is positive.
void fix_sign(Vector& v) {
    for (double x : v) {
        if (std::abs(x) > 1e-12) {
            if (x < 0)
                for (double& y : v) y = -y;
            return;
        }
    }
}

} // namespace

double hs_norm(const Matrix& m) {
    double s = 0.0;
    for (double x : m.entries()) s += x * x;
    return std::sqrt(s);
}

SpectralDecomposition jacobi_eigh(const Matrix& m, double tol) {
    require_symmetric(m, "jacobi_eigh");
    if (tol <= 0.0) throw InvalidInput("jacobi_eigh: tol must be positive");

    const std::size_t n = m.rows();
    Matrix a = m;
    Matrix vt = Matrix::identity(n); // row i of vt accumulates eigenvector i

    const double scale = hs_norm(m);
    const double target = std::max(tol, 1e-14) * std::max(scale, 1e-300);

    bool converged = scale == 0.0;
    for (int sweep = 0; sweep < kMaxSweeps && !converged; ++sweep) {
        double off = offdiag_hs(a);
        if (off <= target) {
            converged = true;
            break;
        }
        // rotate only the off-diagonals that still matter this sweep
        const double thresh =
            sweep < 3 ? 0.2 * off * off / static_cast<double>(n * n) : 0.0;

        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                double apq = a(p, q);
                double g = 100.0 * std::abs(apq);
                if (sweep > 4 && std::abs(a(p, p)) + g == std::abs(a(p, p)) &&
                    std::abs(a(q, q)) + g == std::abs(a(q, q))) {
                    a(p, q) = 0.0;
                    continue;
                }
                if (apq * apq <= thresh * thresh || apq == 0.0) continue;

                double app = a(p, p), aqq = a(q, q);
                double theta = 0.5 * (aqq - app) / apq;
                double t = 1.0 / (std::abs(theta) + std::sqrt(1.0 + theta * theta));
                if (theta < 0.0) t = -t;
                double c = 1.0 / std::sqrt(1.0 + t * t);
                double s = t * c;
                double tau = s / (1.0 + c);
                double h = t * apq;

                // only the upper triangle is maintained during sweeps; the
                // three index ranges below cover every affected entry of it
                a(p, p) = app - h;
                a(q, q) = aqq + h;
                a(p, q) = 0.0;
                double* base = a.row_ptr(0);
                for (std::size_t j = 0; j < p; ++j) {
                    double x = base[j * n + p], y = base[j * n + q];
                    base[j * n + p] = x - s * (y + x * tau);
                    base[j * n + q] = y + s * (x - y * tau);
                }
                double* __restrict rp = a.row_ptr(p);
                for (std::size_t j = p + 1; j < q; ++j) {
                    double x = rp[j], y = base[j * n + q];
                    rp[j] = x - s * (y + x * tau);
                    base[j * n + q] = y + s * (x - y * tau);
                }
                double* __restrict rq = a.row_ptr(q);
                for (std::size_t j = q + 1; j < n; ++j) {
                    double x = rp[j], y = rq[j];
                    rp[j] = x - s * (y + x * tau);
                    rq[j] = y + s * (x - y * tau);
                }

                double* __restrict vp = vt.row_ptr(p);
                double* __restrict vq = vt.row_ptr(q);
                for (std::size_t j = 0; j < n; ++j) {
                    double x = vp[j], y = vq[j];
                    vp[j] = x - s * (y + x * tau);
                    vq[j] = y + s * (x - y * tau);
                }
            }
        }
        if (offdiag_hs(a) <= target) converged = true;
    }
    if (!converged)
        throw NoConvergence("jacobi_eigh: no convergence within 100 sweeps");

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&a](std::size_t i, std::size_t j) { return a(i, i) > a(j, j); });

    SpectralDecomposition out;
    out.eigenvalues.resize(n);
    out.eigenvectors = Matrix(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        out.eigenvalues[j] = a(order[j], order[j]);
        Vector v = vt.row(order[j]);
        double nv = norm(v);
        if (nv > 0.0)
            for (double& x : v) x /= nv;
        fix_sign(v);
        out.eigenvectors.set_col(j, v);
    }
    return out;
}

PowerIterationResult power_iteration(const Matrix& g, const Vector& x0, std::size_t n) {
    require_symmetric(g, "power_iteration");
    if (n < 1) throw InvalidInput("power_iteration: need n >= 1");
    if (x0.size() != g.rows())
        throw InvalidInput("power_iteration: start vector has wrong dimension");

    double nx = norm(x0);
    double floor = 1e-300 * std::max(1.0, g.max_abs());
    if (nx <= floor) throw InvalidInput("power_iteration: start vector is zero");

    // The ratio |G^{n+1}x| / |G^n x| is invariant under rescaling of the
    // iterate, so renormalize each step to dodge overflow.
    Vector y = x0;
    for (double& v : y) v /= nx;

    PowerIterationResult out;
    out.ratio_history.reserve(n);
    for (std::size_t step = 0; step < n; ++step) {
        Vector gy = g * y;
        double ng = norm(gy);
        if (ng <= floor)
            throw DegenerateStart("power_iteration: iterate vanished (start orthogonal to range)");
        for (double& v : gy) v /= ng;
        y = std::move(gy);
        out.ratio_history.push_back(norm(g * y));
    }
    out.lambda_est = out.ratio_history.back(); // |G^{n+1}x| / |G^n x|
    fix_sign(y);
    out.vec_est = std::move(y);
    return out;
}

SpectralDecomposition top_k_spectrum(const Matrix& g, std::size_t k, std::size_t n_steps) {
    require_symmetric(g, "top_k_spectrum");
    const std::size_t n = g.rows();
    if (k > n) throw InvalidInput("top_k_spectrum: k exceeds dimension");

    const double scale = std::max(hs_norm(g), 1e-300);
    const double gap_tol = 1e-8;
    const double resid_tol = 1e-6;

    Matrix deflated = g;
    std::vector<Vector> vecs;
    std::vector<double> vals;

    // One extra probe pair (when it exists) exposes a tie at the k-th gap.
    std::size_t extract = std::min(k + 1, n);
    for (std::size_t j = 0; j < extract; ++j) {
        // deterministic generic start, deflated against found eigenvectors
        Vector x(n);
        for (std::size_t i = 0; i < n; ++i)
            x[i] = 1.0 + 0.25 * std::sin(static_cast<double>(i + 7 * j + 1));
        for (const auto& u : vecs) {
            double c = dot(u, x);
            for (std::size_t i = 0; i < n; ++i) x[i] -= c * u[i];
        }
        if (norm(x) < 1e-10) {
            x.assign(n, 0.0);
            x[j % n] = 1.0;
            for (const auto& u : vecs) {
                double c = dot(u, x);
                for (std::size_t i = 0; i < n; ++i) x[i] -= c * u[i];
            }
        }

        PowerIterationResult pr;
        try {
            pr = power_iteration(deflated, x, n_steps);
        } catch (const DegenerateStart&) {
            // remaining deflated operator is numerically zero
            vals.push_back(0.0);
            Vector u(n, 0.0);
            u[j % n] = 1.0;
            vecs.push_back(u);
            continue;
        }

        if (pr.lambda_est > gap_tol * std::max(1.0, vals.empty() ? 1.0 : vals.front())) {
            Vector r = g * pr.vec_est;
            double lam = dot(pr.vec_est, r);
            double resid = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                double e = r[i] - lam * pr.vec_est[i];
                resid += e * e;
            }
            if (std::sqrt(resid) > resid_tol * scale)
                throw SpectralGapTooSmall(
                    "top_k_spectrum: iteration did not settle; eigenvalues too close");
        }

        vals.push_back(pr.lambda_est);
        vecs.push_back(pr.vec_est);

        // deflate: Qperp G Qperp with Qperp = I - |u><u| applied to the current matrix
        const Vector& u = pr.vec_est;
        Vector du = deflated * u;
        double uu = dot(u, du);
        for (std::size_t r = 0; r < n; ++r)
            for (std::size_t c = 0; c < n; ++c)
                deflated(r, c) += -du[r] * u[c] - u[r] * du[c] + uu * u[r] * u[c];
    }

    double head = std::max(std::abs(vals.front()), 1.0);
    for (std::size_t j = 0; j + 1 < extract; ++j)
        if (vals[j] - vals[j + 1] <= gap_tol * head &&
            std::max(vals[j], vals[j + 1]) > gap_tol * head)
            throw SpectralGapTooSmall("top_k_spectrum: degenerate gap between eigenvalues " +
                                      std::to_string(j + 1) + " and " + std::to_string(j + 2));

    SpectralDecomposition out;
    out.eigenvalues.assign(vals.begin(), vals.begin() + static_cast<std::ptrdiff_t>(k));
    out.eigenvectors = Matrix(n, k);
    for (std::size_t j = 0; j < k; ++j) out.eigenvectors.set_col(j, vecs[j]);
    return out;
}

SingularDecomposition gram_svd(const Matrix& gramian) {
    require_symmetric(gramian, "gram_svd");
    SpectralDecomposition eig = jacobi_eigh(gramian);

    const std::size_t n = gramian.rows();
    double top = eig.eigenvalues.empty() ? 0.0 : std::max(eig.eigenvalues.front(), 0.0);
    // truncate at 1e-10 relative to the largest eigenvalue D_max^2, which is
    // comfortably above the O(eps * lambda_max) noise floor of the eigensolve
    double rank_tol = 1e-10 * top;

    std::size_t r = 0;
    while (r < n && eig.eigenvalues[r] > rank_tol) ++r;

    SingularDecomposition out;
    out.d.resize(r);
    out.u = Matrix(n, r);
    out.w_coefficients = Matrix(n, r);
    for (std::size_t j = 0; j < r; ++j) {
        out.d[j] = std::sqrt(eig.eigenvalues[j]);
        for (std::size_t i = 0; i < n; ++i) {
            double uij = eig.eigenvectors(i, j);
            out.u(i, j) = uij;
            out.w_coefficients(i, j) = uij / out.d[j];
        }
    }
    return out;
}

} // namespace klt::linalg
