#ifndef KLT_BROWNIAN_HPP
#define KLT_BROWNIAN_HPP

#include <complex>
#include <cstdint>
#include <vector>

#include "klt/matrix.hpp"

namespace klt::brownian {

/// Strictly increasing positive sample times 0 < x_1 < ... < x_N.
class BrownianGrid {
  public:
    explicit BrownianGrid(std::vector<double> points);

    const std::vector<double>& points() const { return points_; }
    std::size_t size() const { return points_.size(); }
    double operator[](std::size_t i) const { return points_[i]; }

  private:
    std::vector<double> points_;
};

/// Sampled Brownian paths over a grid; row p of `paths` holds path p's
/// values at the grid points. Same (grid, n_paths, seed) is bit-identical.
struct PathEnsemble {
    BrownianGrid grid;
    Matrix paths; // n_paths x N
    std::uint64_t seed = 0;
};

/// K_N with entries min(x_i, x_j).
Matrix min_kernel_matrix(const BrownianGrid& grid);

/// det(K_N) as the telescoping product x_1 (x_2-x_1) ... (x_N - x_{N-1}).
double det_closed_form(const BrownianGrid& grid);

/// Exact lower-triangular square root of K_N: entry (i,j) = sqrt(x_j -
/// x_{j-1}) for j <= i (with x_0 = 0), zero above the diagonal.
Matrix cholesky_factor(const BrownianGrid& grid);

/// Paths X = A_N z with z iid standard normal from per-path substreams, so
/// generation order (or parallel scheduling) cannot change the result.
PathEnsemble sample_paths(const BrownianGrid& grid, std::size_t n_paths,
                          std::uint64_t seed);

/// Monte Carlo estimate of a complex-valued mean with per-component
/// standard errors.
struct McComplex {
    std::complex<double> mean;
    double se_re = 0.0;
    double se_im = 0.0;

    double se() const;
    /// |mean - target| in units of the combined standard error.
    double sigma_from(std::complex<double> target) const;
};

struct McReal {
    double mean = 0.0;
    double se = 0.0;
    double sigma_from(double target) const;
};

/// E(e^{i X_{x_k}}); expected e^{-x_k / 2}.
McComplex mc_char_function(const PathEnsemble& ens, std::size_t k_index);

/// E(e^{i X_{x_i}} e^{-i X_{x_j}}); expected e^{-|x_i - x_j| / 2}.
McComplex mc_char_function_pair(const PathEnsemble& ens, std::size_t i_index,
                                std::size_t j_index);

/// E(X_{x_k}^order) for even order <= 8; expected (order-1)!! x_k^{order/2}.
McReal mc_moment(const PathEnsemble& ens, std::size_t k_index, std::size_t order);

/// Hermite polynomials in the derivative convention
/// (d/dxi)^n e^{-xi^2/2} = H_n(xi) e^{-xi^2/2}, so H_1(xi) = -xi,
/// H_2(xi) = xi^2 - 1. Note the sign: this differs from the usual
/// probabilists' He_n by a factor (-1)^n.
double hermite(std::size_t n, double xi);

/// Transform identity check: Monte Carlo E(e^{-i X_t} X_s^n) against the
/// closed form i^n e^{-t/2} s^{n/2} H_n(sqrt(s)), for grid indices s < t.
struct TransformCheck {
    std::complex<double> mc;
    double se_re = 0.0;
    double se_im = 0.0;
    std::complex<double> closed_form;
    double sigma = 0.0; // |mc - closed_form| / combined SE
};

TransformCheck mc_transform_monomial(const PathEnsemble& ens, std::size_t s_index,
                                     std::size_t t_index, std::size_t n);

} // namespace klt::brownian

#endif
