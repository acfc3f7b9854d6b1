#include "klt/brownian.hpp"

#include <cmath>

#include "klt/errors.hpp"
#include "klt/rng.hpp"

namespace klt::brownian {

BrownianGrid::BrownianGrid(std::vector<double> points) : points_(std::move(points)) {
    if (points_.empty()) throw InvalidInput("BrownianGrid: empty grid");
    if (!(points_.front() > 0.0)) throw InvalidInput("BrownianGrid: grid must be positive");
    for (std::size_t i = 0; i + 1 < points_.size(); ++i)
        if (!(points_[i + 1] - points_[i] > 1e-14))
            throw InvalidInput("BrownianGrid: grid must be strictly increasing");
    for (double x : points_)
        if (!std::isfinite(x)) throw InvalidInput("BrownianGrid: non-finite grid point");
}

Matrix min_kernel_matrix(const BrownianGrid& grid) {
    const std::size_t n = grid.size();
    Matrix k(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) k(i, j) = std::min(grid[i], grid[j]);
    return k;
}

double det_closed_form(const BrownianGrid& grid) {
    double det = grid[0];
    for (std::size_t i = 1; i < grid.size(); ++i) det *= grid[i] - grid[i - 1];
    return det;
}

Matrix cholesky_factor(const BrownianGrid& grid) {
    const std::size_t n = grid.size();
    std::vector<double> root_gap(n);
    for (std::size_t j = 0; j < n; ++j)
        root_gap[j] = std::sqrt(grid[j] - (j == 0 ? 0.0 : grid[j - 1]));
    Matrix a(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j <= i; ++j) a(i, j) = root_gap[j];
    return a;
}

PathEnsemble sample_paths(const BrownianGrid& grid, std::size_t n_paths,
                          std::uint64_t seed) {
    if (n_paths < 1) throw InvalidInput("sample_paths: need n_paths >= 1");

    const std::size_t n = grid.size();
    std::vector<double> root_gap(n);
    for (std::size_t j = 0; j < n; ++j)
        root_gap[j] = std::sqrt(grid[j] - (j == 0 ? 0.0 : grid[j - 1]));

    Matrix paths(n_paths, n);
    for (std::size_t p = 0; p < n_paths; ++p) {
        GaussianStream z(Xoshiro256pp::substream(seed, p));
        // X_{x_k} = sum_{j<=k} sqrt(gap_j) z_j  (the lower-triangular factor
        // applied to the path's normal draws)
        double acc = 0.0;
        double* row = paths.row_ptr(p);
        for (std::size_t j = 0; j < n; ++j) {
            acc += root_gap[j] * z.next();
            row[j] = acc;
        }
    }
    return PathEnsemble{grid, std::move(paths), seed};
}

namespace {

void require_index(const PathEnsemble& ens, std::size_t k, const char* who) {
    if (k >= ens.grid.size())
        throw InvalidInput(std::string(who) + ": grid index out of range");
}

struct ComplexAccumulator {
    double sum_re = 0.0, sum_im = 0.0;
    double sq_re = 0.0, sq_im = 0.0;
    std::size_t count = 0;

    void add(double re, double im) {
        sum_re += re;
        sum_im += im;
        sq_re += re * re;
        sq_im += im * im;
        ++count;
    }

    void finish(std::complex<double>& mean, double& se_re, double& se_im) const {
        double p = static_cast<double>(count);
        double mre = sum_re / p;
        double mim = sum_im / p;
        mean = {mre, mim};
        double var_re = (sq_re / p - mre * mre) / (p - 1.0);
        double var_im = (sq_im / p - mim * mim) / (p - 1.0);
        se_re = std::sqrt(std::max(var_re, 0.0));
        se_im = std::sqrt(std::max(var_im, 0.0));
    }
};

} // namespace

double McComplex::se() const { return std::hypot(se_re, se_im); }

double McComplex::sigma_from(std::complex<double> target) const {
    double denom = se();
    return denom > 0.0 ? std::abs(mean - target) / denom : HUGE_VAL;
}

double McReal::sigma_from(double target) const {
    return se > 0.0 ? std::abs(mean - target) / se : HUGE_VAL;
}

McComplex mc_char_function(const PathEnsemble& ens, std::size_t k_index) {
    require_index(ens, k_index, "mc_char_function");
    ComplexAccumulator acc;
    for (std::size_t p = 0; p < ens.paths.rows(); ++p) {
        double x = ens.paths(p, k_index);
        acc.add(std::cos(x), std::sin(x));
    }
    McComplex out;
    acc.finish(out.mean, out.se_re, out.se_im);
    return out;
}

McComplex mc_char_function_pair(const PathEnsemble& ens, std::size_t i_index,
                                std::size_t j_index) {
    require_index(ens, i_index, "mc_char_function_pair");
    require_index(ens, j_index, "mc_char_function_pair");
    ComplexAccumulator acc;
    for (std::size_t p = 0; p < ens.paths.rows(); ++p) {
        double x = ens.paths(p, i_index) - ens.paths(p, j_index);
        acc.add(std::cos(x), std::sin(x));
    }
    McComplex out;
    acc.finish(out.mean, out.se_re, out.se_im);
    return out;
}

McReal mc_moment(const PathEnsemble& ens, std::size_t k_index, std::size_t order) {
    require_index(ens, k_index, "mc_moment");
    if (order % 2 != 0) throw InvalidInput("mc_moment: order must be even");
    if (order > 8) throw InvalidInput("mc_moment: order above 8 is too noisy");

    double sum = 0.0, sq = 0.0;
    const std::size_t n_paths = ens.paths.rows();
    for (std::size_t p = 0; p < n_paths; ++p) {
        double x = ens.paths(p, k_index);
        double v = 1.0;
        for (std::size_t k = 0; k < order; ++k) v *= x;
        sum += v;
        sq += v * v;
    }
    McReal out;
    double np = static_cast<double>(n_paths);
    out.mean = sum / np;
    out.se = std::sqrt(std::max((sq / np - out.mean * out.mean) / (np - 1.0), 0.0));
    return out;
}

double hermite(std::size_t n, double xi) {
    if (n > 20) throw InvalidInput("hermite: degree capped at 20");
    // coefficient recurrence for H_{n+1} = H_n' - xi H_n
    std::vector<double> coeff{1.0}; // H_0
    for (std::size_t k = 0; k < n; ++k) {
        std::vector<double> next(coeff.size() + 1, 0.0);
        // H_n' term: d/dxi xi^j = j xi^{j-1}
        for (std::size_t j = 1; j < coeff.size(); ++j)
            next[j - 1] += static_cast<double>(j) * coeff[j];
        // -xi H_n term
        for (std::size_t j = 0; j < coeff.size(); ++j) next[j + 1] -= coeff[j];
        coeff = std::move(next);
    }
    double v = 0.0;
    for (std::size_t j = coeff.size(); j-- > 0;) v = v * xi + coeff[j];
    return v;
}

TransformCheck mc_transform_monomial(const PathEnsemble& ens, std::size_t s_index,
                                     std::size_t t_index, std::size_t n) {
    require_index(ens, s_index, "mc_transform_monomial");
    require_index(ens, t_index, "mc_transform_monomial");
    if (s_index >= t_index)
        throw InvalidInput("mc_transform_monomial: need s_index < t_index");
    if (n > 4) throw InvalidInput("mc_transform_monomial: monomial degree capped at 4");

    ComplexAccumulator acc;
    for (std::size_t p = 0; p < ens.paths.rows(); ++p) {
        double xs = ens.paths(p, s_index);
        double xt = ens.paths(p, t_index);
        double mono = 1.0;
        for (std::size_t k = 0; k < n; ++k) mono *= xs;
        acc.add(mono * std::cos(xt), -mono * std::sin(xt));
    }

    TransformCheck out;
    acc.finish(out.mc, out.se_re, out.se_im);

    double s = ens.grid[s_index];
    double t = ens.grid[t_index];
    std::complex<double> i_pow_n(1.0, 0.0);
    for (std::size_t k = 0; k < n; ++k) i_pow_n *= std::complex<double>(0.0, 1.0);
    out.closed_form = i_pow_n * std::exp(-0.5 * t) * std::pow(s, 0.5 * static_cast<double>(n)) *
                      hermite(n, std::sqrt(s));

    double denom = std::hypot(out.se_re, out.se_im);
    out.sigma = denom > 0.0 ? std::abs(out.mc - out.closed_form) / denom : HUGE_VAL;
    return out;
}

} // namespace klt::brownian
