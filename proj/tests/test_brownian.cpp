#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>

#include "klt/brownian.hpp"
#include "klt/errors.hpp"
#include "klt/linalg.hpp"
#include "test_helpers.hpp"

using namespace klt;
using namespace klt::testing;
namespace bm = klt::brownian;

namespace {

bm::BrownianGrid random_grid(std::size_t n, Xoshiro256pp& gen) {
    std::vector<double> pts(n);
    double x = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        x += uniform(gen, 0.02, 1.0);
        pts[i] = x;
    }
    return bm::BrownianGrid(pts);
}

double det3_cofactor(const Matrix& m) {
    return m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) -
           m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0)) +
           m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0));
}

} // namespace

TEST_CASE("grid validation") {
    CHECK_THROWS_AS(bm::BrownianGrid({}), InvalidInput);
    CHECK_THROWS_AS(bm::BrownianGrid({0.0, 1.0}), InvalidInput);
    CHECK_THROWS_AS(bm::BrownianGrid({-1.0, 1.0}), InvalidInput);
    CHECK_THROWS_AS(bm::BrownianGrid({1.0, 1.0}), InvalidInput);
    CHECK_THROWS_AS(bm::BrownianGrid({2.0, 1.0}), InvalidInput);
}

TEST_CASE("min_kernel_matrix on {1,2,3} and structure on random grids") {
    bm::BrownianGrid g123({1.0, 2.0, 3.0});
    Matrix k = bm::min_kernel_matrix(g123);
    CHECK(linalg::hs_norm(k - Matrix{{1, 1, 1}, {1, 2, 2}, {1, 2, 3}}) == 0.0);

    bm::BrownianGrid single({0.7});
    CHECK(bm::min_kernel_matrix(single)(0, 0) == 0.7);

    Xoshiro256pp gen(81);
    auto grid = random_grid(9, gen);
    Matrix km = bm::min_kernel_matrix(grid);
    for (std::size_t i = 0; i < 9; ++i) {
        CHECK(km(0, i) == grid[0]); // first row is constant x_1
        CHECK(km(i, 0) == grid[0]);
        for (std::size_t j = 0; j < 9; ++j) CHECK(km(i, j) == km(j, i));
    }
}

TEST_CASE("det_closed_form matches cofactor and 2x2 oracles") {
    CHECK(bm::det_closed_form(bm::BrownianGrid({1.0, 2.0, 3.0})) ==
          doctest::Approx(1.0).epsilon(1e-15));
    CHECK(det3_cofactor(bm::min_kernel_matrix(bm::BrownianGrid({1.0, 2.0, 3.0}))) ==
          doctest::Approx(1.0).epsilon(1e-15));
    CHECK(bm::det_closed_form(bm::BrownianGrid({0.5, 1.0})) ==
          doctest::Approx(0.25).epsilon(1e-15));
    CHECK(bm::det_closed_form(bm::BrownianGrid({0.3})) ==
          doctest::Approx(0.3).epsilon(1e-15));
}

TEST_CASE("det_closed_form equals the cofactor determinant on random 3-grids") {
    Xoshiro256pp gen(82);
    for (int rep = 0; rep < 20; ++rep) {
        auto grid = random_grid(3, gen);
        double closed = bm::det_closed_form(grid);
        double cof = det3_cofactor(bm::min_kernel_matrix(grid));
        CHECK(closed == doctest::Approx(cof).epsilon(1e-12));
    }
}

TEST_CASE("det_closed_form equals the eigenvalue product") {
    Xoshiro256pp gen(83);
    for (int rep = 0; rep < 10; ++rep) {
        auto grid = random_grid(8, gen);
        auto eig = linalg::jacobi_eigh(bm::min_kernel_matrix(grid));
        double prod = 1.0;
        for (double lam : eig.eigenvalues) prod *= lam;
        CHECK(prod == doctest::Approx(bm::det_closed_form(grid)).epsilon(1e-8));
    }
}

TEST_CASE("cholesky_factor closed form") {
    Matrix a = bm::cholesky_factor(bm::BrownianGrid({1.0, 2.0, 3.0}));
    CHECK(linalg::hs_norm(a - Matrix{{1, 0, 0}, {1, 1, 0}, {1, 1, 1}}) == 0.0);

    Matrix a1 = bm::cholesky_factor(bm::BrownianGrid({0.49}));
    CHECK(a1(0, 0) == doctest::Approx(0.7).epsilon(1e-15));
}

TEST_CASE("A_N A_N^T factorization is exact and consistent with the determinant") {
    Xoshiro256pp gen(84);
    for (int rep = 0; rep < 20; ++rep) {
        auto grid = random_grid(2 + rep * 2, gen);
        Matrix a = bm::cholesky_factor(grid);
        Matrix k = bm::min_kernel_matrix(grid);
        CHECK(linalg::hs_norm(a * a.transpose() - k) <= 1e-12 * linalg::hs_norm(k));

        double diag_prod = 1.0;
        for (std::size_t i = 0; i < a.rows(); ++i) diag_prod *= a(i, i);
        CHECK(diag_prod * diag_prod ==
              doctest::Approx(bm::det_closed_form(grid)).epsilon(1e-12));
    }
}

TEST_CASE("sample_paths is deterministic and substream-stable") {
    bm::BrownianGrid grid({0.5, 1.0, 2.0});
    auto a = bm::sample_paths(grid, 8, 99);
    auto b = bm::sample_paths(grid, 8, 99);
    CHECK(a.paths.entries() == b.paths.entries()); // bit-identical

    auto c = bm::sample_paths(grid, 4, 99);
    for (std::size_t p = 0; p < 4; ++p)
        for (std::size_t j = 0; j < 3; ++j)
            CHECK(c.paths(p, j) == a.paths(p, j)); // path p depends only on (seed, p)

    auto d = bm::sample_paths(grid, 8, 100);
    CHECK(a.paths.entries() != d.paths.entries());
}

TEST_CASE("empirical variances and covariances match the min kernel") {
    bm::BrownianGrid grid({0.5, 1.0, 2.0});
    auto ens = bm::sample_paths(grid, 40000, 7);
    const double np = 40000.0;

    for (std::size_t k = 0; k < 3; ++k) {
        auto m2 = bm::mc_moment(ens, k, 2);
        CHECK(m2.sigma_from(grid[k]) < 4.0);
    }

    // covariance of distinct coordinates
    for (std::size_t i = 0; i < 3; ++i) {
        for (std::size_t j = i + 1; j < 3; ++j) {
            double sum = 0.0, sq = 0.0;
            for (std::size_t p = 0; p < ens.paths.rows(); ++p) {
                double v = ens.paths(p, i) * ens.paths(p, j);
                sum += v;
                sq += v * v;
            }
            double mean = sum / np;
            double se = std::sqrt((sq / np - mean * mean) / (np - 1.0));
            CHECK(std::abs(mean - std::min(grid[i], grid[j])) < 4.0 * se);
        }
    }

    // successive increments are uncorrelated
    double sum = 0.0, sq = 0.0, v1 = 0.0, v2 = 0.0;
    for (std::size_t p = 0; p < ens.paths.rows(); ++p) {
        double d1 = ens.paths(p, 1) - ens.paths(p, 0);
        double d2 = ens.paths(p, 2) - ens.paths(p, 1);
        sum += d1 * d2;
        sq += d1 * d2 * d1 * d2;
        v1 += d1 * d1;
        v2 += d2 * d2;
    }
    double mean = sum / np;
    double se = std::sqrt((sq / np - mean * mean) / (np - 1.0));
    double corr = mean / std::sqrt((v1 / np) * (v2 / np));
    double corr_se = se / std::sqrt((v1 / np) * (v2 / np));
    CHECK(std::abs(corr) < 4.0 * corr_se);
}

TEST_CASE("characteristic function checks") {
    bm::BrownianGrid grid({1.0, 2.0, 3.0});
    auto ens = bm::sample_paths(grid, 50000, 11);

    auto cf = bm::mc_char_function(ens, 0); // t = 1
    CHECK(cf.sigma_from({std::exp(-0.5), 0.0}) < 3.0);
    CHECK(std::abs(std::exp(-0.5) - 0.60653) < 1e-5);

    auto pair = bm::mc_char_function_pair(ens, 0, 1); // |s-t| = 1
    CHECK(pair.sigma_from({std::exp(-0.5), 0.0}) < 3.0);

    auto same = bm::mc_char_function_pair(ens, 1, 1);
    CHECK(same.mean.real() == 1.0);
    CHECK(same.mean.imag() == 0.0);

    CHECK_THROWS_AS(bm::mc_char_function(ens, 3), InvalidInput);
}

TEST_CASE("moment checks against (2n-1)!! t^n") {
    bm::BrownianGrid grid({1.0, 2.0});
    auto ens = bm::sample_paths(grid, 50000, 13);

    CHECK(bm::mc_moment(ens, 0, 2).sigma_from(1.0) < 3.0);
    CHECK(bm::mc_moment(ens, 0, 4).sigma_from(3.0) < 3.0);
    CHECK(bm::mc_moment(ens, 1, 4).sigma_from(12.0) < 4.0); // 3 * 2^2
    CHECK(bm::mc_moment(ens, 0, 6).sigma_from(15.0) < 4.0);

    CHECK_THROWS_AS(bm::mc_moment(ens, 0, 3), InvalidInput);
    CHECK_THROWS_AS(bm::mc_moment(ens, 0, 10), InvalidInput);
}

TEST_CASE("hermite polynomials in the derivative convention") {
    CHECK(bm::hermite(0, 1.7) == 1.0);
    CHECK(bm::hermite(1, 0.4) == doctest::Approx(-0.4).epsilon(1e-15));
    CHECK(bm::hermite(2, 0.4) == doctest::Approx(0.4 * 0.4 - 1.0).epsilon(1e-15));
    CHECK(bm::hermite(2, 1.0) == doctest::Approx(0.0));
    // H3 = 3 xi - xi^3 from the recurrence
    CHECK(bm::hermite(3, 0.7) == doctest::Approx(3 * 0.7 - 0.343).epsilon(1e-12));
    CHECK_THROWS_AS(bm::hermite(21, 0.0), InvalidInput);
}

TEST_CASE("transform of monomials matches the closed form") {
    bm::BrownianGrid grid({1.0, 2.0});
    auto ens = bm::sample_paths(grid, 50000, 17);

    auto t0 = bm::mc_transform_monomial(ens, 0, 1, 0);
    CHECK(t0.closed_form.real() == doctest::Approx(std::exp(-1.0)).epsilon(1e-12));
    CHECK(t0.closed_form.imag() == 0.0);
    CHECK(t0.sigma < 3.0);

    auto t1 = bm::mc_transform_monomial(ens, 0, 1, 1);
    // i e^{-1} H_1(1) = -i e^{-1}
    CHECK(t1.closed_form.real() == doctest::Approx(0.0));
    CHECK(t1.closed_form.imag() == doctest::Approx(-std::exp(-1.0)).epsilon(1e-12));
    CHECK(std::abs(t1.closed_form.imag() + 0.36788) < 1e-5);
    CHECK(t1.sigma < 3.0);

    auto t2 = bm::mc_transform_monomial(ens, 0, 1, 2);
    // H_2(1) = 0 so the closed form vanishes
    CHECK(std::abs(t2.closed_form) == doctest::Approx(0.0));
    CHECK(t2.sigma < 3.0);

    CHECK_THROWS_AS(bm::mc_transform_monomial(ens, 1, 0, 1), InvalidInput);
    CHECK_THROWS_AS(bm::mc_transform_monomial(ens, 0, 0, 1), InvalidInput);
    CHECK_THROWS_AS(bm::mc_transform_monomial(ens, 0, 1, 5), InvalidInput);
}

TEST_CASE("semigroup factorization over an intermediate time") {
    // with F = e^{i X_u}, u <= s < t: E(e^{-i X_t} F) = e^{-(t-s)/2} E(e^{-i X_s} F)
    bm::BrownianGrid grid({1.0, 2.0, 3.0});
    auto ens = bm::sample_paths(grid, 50000, 19);
    auto lhs = bm::mc_char_function_pair(ens, 0, 2); // E(e^{i(X_1 - X_3)})
    auto rhs = bm::mc_char_function_pair(ens, 0, 1); // E(e^{i(X_1 - X_2)})
    double factor = std::exp(-0.5); // e^{-(t-s)/2}, t - s = 1
    std::complex<double> diff = lhs.mean - factor * rhs.mean;
    double se = lhs.se() + factor * rhs.se();
    CHECK(std::abs(diff) < 3.0 * se);
}
