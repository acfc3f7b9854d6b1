#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "klt/errors.hpp"
#include "klt/linalg.hpp"
#include "test_helpers.hpp"

using namespace klt;
using namespace klt::linalg;
using namespace klt::testing;

namespace {

const Matrix kMinKernel3{{1, 1, 1}, {1, 2, 2}, {1, 2, 3}};

double reconstruction_error(const Matrix& m, const SpectralDecomposition& eig) {
    const std::size_t n = m.rows();
    Matrix rec(n, n);
    for (std::size_t k = 0; k < n; ++k) {
        Vector v = eig.eigenvectors.col(k);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                rec(i, j) += eig.eigenvalues[k] * v[i] * v[j];
    }
    return hs_norm(m - rec);
}

} // namespace

TEST_CASE("jacobi_eigh on the identity") {
    auto eig = jacobi_eigh(Matrix::identity(3));
    for (double lam : eig.eigenvalues) CHECK(lam == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("jacobi_eigh on a diagonal matrix") {
    auto eig = jacobi_eigh(Matrix{{3, 0}, {0, 1}});
    CHECK(eig.eigenvalues[0] == doctest::Approx(3.0).epsilon(1e-14));
    CHECK(eig.eigenvalues[1] == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(eig.eigenvectors(0, 0) == doctest::Approx(1.0));
    CHECK(eig.eigenvectors(1, 0) == doctest::Approx(0.0));
    CHECK(eig.eigenvectors(1, 1) == doctest::Approx(1.0));
}

TEST_CASE("jacobi_eigh reproduces the worked 3x3 min-kernel spectrum") {
    auto eig = jacobi_eigh(kMinKernel3);
    CHECK(eig.eigenvalues[0] == doctest::Approx(5.0489).epsilon(1e-4));
    CHECK(eig.eigenvectors(0, 0) == doctest::Approx(0.3280).epsilon(1e-3));
    CHECK(eig.eigenvectors(1, 0) == doctest::Approx(0.5910).epsilon(1e-3));
    CHECK(eig.eigenvectors(2, 0) == doctest::Approx(0.7370).epsilon(1e-3));
}

TEST_CASE("jacobi_eigh rejects bad input") {
    CHECK_THROWS_AS(jacobi_eigh(Matrix{{1, 2, 3}, {4, 5, 6}}), InvalidInput);
    CHECK_THROWS_AS(jacobi_eigh(Matrix{{1, 2}, {0, 1}}), InvalidInput);
    CHECK_THROWS_AS(jacobi_eigh(Matrix::identity(2), -1.0), InvalidInput);
}

TEST_CASE("jacobi_eigh reconstruction and orthonormality on random symmetric input") {
    Xoshiro256pp gen(11);
    for (int rep = 0; rep < 20; ++rep) {
        Matrix m = random_symmetric(5, gen);
        auto eig = jacobi_eigh(m);
        double scale = hs_norm(m);
        CHECK(reconstruction_error(m, eig) <= 1e-9 * scale);
        for (std::size_t a = 0; a < 5; ++a) {
            for (std::size_t b = a; b < 5; ++b) {
                double g = dot(eig.eigenvectors.col(a), eig.eigenvectors.col(b));
                CHECK(std::abs(g - (a == b ? 1.0 : 0.0)) < 1e-10);
            }
        }
        for (std::size_t a = 0; a + 1 < 5; ++a)
            CHECK(eig.eigenvalues[a] >= eig.eigenvalues[a + 1]);
    }
}

TEST_CASE("jacobi_eigh residual meets the stated bound on random PSD input") {
    Xoshiro256pp gen(12);
    for (int rep = 0; rep < 10; ++rep) {
        Matrix m = random_psd(5, gen);
        auto eig = jacobi_eigh(m, 1e-12);
        double bound = std::max(1e-12, 1e-10 * hs_norm(m));
        for (std::size_t k = 0; k < 5; ++k) {
            Vector v = eig.eigenvectors.col(k);
            Vector mv = m * v;
            for (std::size_t i = 0; i < 5; ++i)
                CHECK(std::abs(mv[i] - eig.eigenvalues[k] * v[i]) <= bound);
        }
    }
}

TEST_CASE("power_iteration matches the worked example") {
    auto res = power_iteration(kMinKernel3, {1, 0, 0}, 2);
    // |K^3 e1| / |K^2 e1| = sqrt(1782/70)
    CHECK(res.lambda_est == doctest::Approx(std::sqrt(1782.0 / 70.0)).epsilon(1e-12));
    CHECK(res.lambda_est == doctest::Approx(5.0455).epsilon(1e-4));
    // vec_est = K^2 e1 normalized = (3,5,6)/sqrt(70)
    CHECK(res.vec_est[0] == doctest::Approx(3.0 / std::sqrt(70.0)).epsilon(1e-12));
    CHECK(res.vec_est[1] == doctest::Approx(5.0 / std::sqrt(70.0)).epsilon(1e-12));
    CHECK(res.vec_est[2] == doctest::Approx(6.0 / std::sqrt(70.0)).epsilon(1e-12));
}

TEST_CASE("power_iteration on the identity returns 1 at every step") {
    auto res = power_iteration(Matrix::identity(4), {0.3, -0.2, 0.9, 0.1}, 5);
    for (double r : res.ratio_history) CHECK(r == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("power_iteration hand example diag(4,1)") {
    auto res = power_iteration(Matrix{{4, 0}, {0, 1}}, {1, 1}, 1);
    CHECK(res.lambda_est == doctest::Approx(std::sqrt(257.0 / 17.0)).epsilon(1e-14));
    CHECK(res.lambda_est == doctest::Approx(3.8882).epsilon(1e-4));
}

TEST_CASE("power_iteration error cases") {
    CHECK_THROWS_AS(power_iteration(kMinKernel3, {0, 0, 0}, 3), InvalidInput);
    CHECK_THROWS_AS(power_iteration(kMinKernel3, {1, 0}, 3), InvalidInput);
    CHECK_THROWS_AS(power_iteration(kMinKernel3, {1, 0, 0}, 0), InvalidInput);
    // start exactly orthogonal to the range of a rank-deficient operator
    CHECK_THROWS_AS(power_iteration(Matrix{{1, 0}, {0, 0}}, {0, 1}, 3), DegenerateStart);
}

TEST_CASE("power_iteration estimates improve with n and hit 1e-6 by n=200") {
    Xoshiro256pp gen(13);
    for (int rep = 0; rep < 5; ++rep) {
        Matrix g = psd_with_spectrum({5.0, 3.9, 2.7, 1.6, 0.4}, gen);
        double oracle = jacobi_eigh(g).eigenvalues[0];
        Vector x0(5);
        for (double& v : x0) v = uniform(gen, 0.1, 1.0);
        auto res = power_iteration(g, x0, 200);
        CHECK(std::abs(res.lambda_est - oracle) < 1e-6);
        // non-increasing error beyond a short burn-in
        for (std::size_t n = 10; n + 1 < res.ratio_history.size(); ++n) {
            double e_n = std::abs(res.ratio_history[n] - oracle);
            double e_next = std::abs(res.ratio_history[n + 1] - oracle);
            CHECK(e_next <= e_n + 1e-12);
        }
    }
}

TEST_CASE("rank-one limit: lambda^{-2n} (G^T G)^n converges to |u1><u1| monotonically") {
    Xoshiro256pp gen(14);
    Matrix g = psd_with_spectrum({4.0, 2.5, 1.2, 0.6}, gen);
    auto eig = jacobi_eigh(g);
    double lam1 = eig.eigenvalues[0];
    Vector u1 = eig.eigenvectors.col(0);
    Matrix target = outer(u1, u1);

    Matrix gtg = g.transpose() * g;
    double prev = HUGE_VAL;
    for (int n : {5, 10, 20}) {
        Matrix power = Matrix::identity(4);
        for (int k = 0; k < n; ++k) power = power * gtg;
        power *= std::pow(lam1, -2.0 * n);
        double dist = hs_norm(power - target);
        CHECK(dist < prev);
        prev = dist;
    }
    CHECK(prev < 1e-4);
}

TEST_CASE("nonzero spectra of A A^T and A^T A agree") {
    Xoshiro256pp gen(15);
    Matrix a = random_matrix(4, 7, gen);
    auto s1 = jacobi_eigh(a * a.transpose()).eigenvalues;         // 4 values
    auto s2 = jacobi_eigh(a.transpose() * a).eigenvalues;         // 7 values
    for (std::size_t k = 0; k < 4; ++k)
        CHECK(std::abs(s1[k] - s2[k]) < 1e-9 * std::max(1.0, s1[0]));
    for (std::size_t k = 4; k < 7; ++k) CHECK(std::abs(s2[k]) < 1e-9);
}

TEST_CASE("top_k_spectrum on a diagonal matrix") {
    auto eig = top_k_spectrum(Matrix{{3, 0, 0}, {0, 2, 0}, {0, 0, 1}}, 2, 200);
    CHECK(eig.eigenvalues[0] == doctest::Approx(3.0).epsilon(1e-10));
    CHECK(eig.eigenvalues[1] == doctest::Approx(2.0).epsilon(1e-10));
    CHECK(std::abs(eig.eigenvectors(0, 0)) == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(std::abs(eig.eigenvectors(1, 1)) == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("top_k_spectrum matches the Jacobi oracle on the worked matrix") {
    auto oracle = jacobi_eigh(kMinKernel3);

    auto top1 = top_k_spectrum(kMinKernel3, 1, 300);
    CHECK(top1.eigenvalues[0] ==
          doctest::Approx(oracle.eigenvalues[0]).epsilon(1e-6));

    auto top3 = top_k_spectrum(kMinKernel3, 3, 300);
    double sum = 0.0;
    for (std::size_t k = 0; k < 3; ++k) {
        sum += top3.eigenvalues[k];
        CHECK(top3.eigenvalues[k] ==
              doctest::Approx(oracle.eigenvalues[k]).epsilon(1e-6));
        // eigenvectors agree up to the shared sign convention
        for (std::size_t i = 0; i < 3; ++i)
            CHECK(top3.eigenvectors(i, k) ==
                  doctest::Approx(oracle.eigenvectors(i, k)).epsilon(1e-5));
    }
    CHECK(sum == doctest::Approx(kMinKernel3.trace()).epsilon(1e-9));
}

TEST_CASE("top_k_spectrum refuses degenerate gaps") {
    CHECK_THROWS_AS(top_k_spectrum(Matrix{{2, 0, 0}, {0, 2, 0}, {0, 0, 1}}, 2, 100),
                    SpectralGapTooSmall);
    // tie just below the requested count is detected by the probe pair
    CHECK_THROWS_AS(top_k_spectrum(Matrix{{3, 0, 0}, {0, 2, 0}, {0, 0, 2}}, 2, 100),
                    SpectralGapTooSmall);
}

TEST_CASE("top_k_spectrum agrees with jacobi on random well-gapped PSD matrices") {
    Xoshiro256pp gen(16);
    for (int rep = 0; rep < 5; ++rep) {
        Matrix g = psd_with_spectrum({6.0, 4.1, 2.9, 1.5, 0.7}, gen);
        auto oracle = jacobi_eigh(g);
        auto top = top_k_spectrum(g, 3, 600);
        for (std::size_t k = 0; k < 3; ++k)
            CHECK(std::abs(top.eigenvalues[k] - oracle.eigenvalues[k]) <
                  1e-6 * oracle.eigenvalues[0]);
    }
}

TEST_CASE("hs_norm basics") {
    CHECK(hs_norm(Matrix(3, 3)) == 0.0);
    CHECK(hs_norm(Matrix::identity(4)) == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(hs_norm(Matrix{{1, 2}, {3, 4}}) ==
          doctest::Approx(std::sqrt(30.0)).epsilon(1e-15));
}

TEST_CASE("hs_norm squared equals trace of M^T M") {
    Xoshiro256pp gen(17);
    for (int rep = 0; rep < 10; ++rep) {
        Matrix m = random_matrix(4, 6, gen);
        double h2 = hs_norm(m) * hs_norm(m);
        double tr = (m.transpose() * m).trace();
        CHECK(h2 == doctest::Approx(tr).epsilon(1e-12));
    }
}

TEST_CASE("gram_svd on the identity Gramian") {
    auto svd = gram_svd(Matrix::identity(2));
    REQUIRE(svd.d.size() == 2);
    CHECK(svd.d[0] == doctest::Approx(1.0));
    CHECK(svd.d[1] == doctest::Approx(1.0));
}

TEST_CASE("gram_svd on the rank-1 all-ones Gramian") {
    Matrix ones(3, 3);
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) ones(i, j) = 1.0;
    auto svd = gram_svd(ones);
    REQUIRE(svd.d.size() == 1);
    CHECK(svd.d[0] == doctest::Approx(std::sqrt(3.0)).epsilon(1e-12));
}

TEST_CASE("gram_svd drops the zero mode of a rank-deficient Gramian") {
    auto svd = gram_svd(Matrix{{2, 0}, {0, 0}});
    REQUIRE(svd.d.size() == 1);
    CHECK(svd.d[0] == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
    CHECK_THROWS_AS(gram_svd(Matrix{{1, 2}, {0, 1}}), InvalidInput);
}

TEST_CASE("gram_svd reconstructs the Gramian as U D^2 U^T") {
    Xoshiro256pp gen(18);
    Matrix a = random_matrix(5, 3, gen); // rank <= 3
    Matrix gramian = a * a.transpose();
    auto svd = gram_svd(gramian);
    CHECK(svd.d.size() == 3);

    Matrix rec(5, 5);
    for (std::size_t k = 0; k < svd.d.size(); ++k) {
        Vector u = svd.u.col(k);
        for (std::size_t i = 0; i < 5; ++i)
            for (std::size_t j = 0; j < 5; ++j)
                rec(i, j) += svd.d[k] * svd.d[k] * u[i] * u[j];
    }
    CHECK(hs_norm(gramian - rec) <= 1e-9 * hs_norm(gramian));

    // U^T U = I_r
    for (std::size_t p = 0; p < svd.d.size(); ++p)
        for (std::size_t q = p; q < svd.d.size(); ++q)
            CHECK(std::abs(dot(svd.u.col(p), svd.u.col(q)) - (p == q ? 1.0 : 0.0)) <
                  1e-10);

    // w_coefficients = U D^{-1}
    for (std::size_t k = 0; k < svd.d.size(); ++k)
        for (std::size_t i = 0; i < 5; ++i)
            CHECK(svd.w_coefficients(i, k) ==
                  doctest::Approx(svd.u(i, k) / svd.d[k]).epsilon(1e-12));
}
