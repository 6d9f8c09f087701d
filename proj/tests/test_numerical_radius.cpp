#include "cqms/numerical_radius.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

using namespace cqms;

TEST(NumericalRadius, ShiftMatrixIsHalf)
{
    cmat e12 = cmat::Zero(2, 2);
    e12(0, 1) = 1;
    RadiusBracket b = numerical_radius_bracket(e12, 1e-10);
    EXPECT_LE(b.lower, 0.5 + 1e-12);
    EXPECT_GE(b.upper, 0.5 - 1e-12);
    EXPECT_LE(b.upper - b.lower, 1e-10);
    EXPECT_NEAR(oracle::numerical_radius_2x2_grid(e12, 400), 0.5, 1e-4);
}

TEST(NumericalRadius, MatchesSphereGridOn2x2)
{
    Rng rng(21);
    for (int s = 0; s < 20; ++s) {
        cmat m = random_matrix(rng, 2, 2);
        RadiusBracket b = numerical_radius_bracket(m, 1e-9);
        double grid = oracle::numerical_radius_2x2_grid(m, 300);
        // the grid is a lower bound within O(h^2) of the maximum
        EXPECT_LE(grid, b.upper + 1e-12);
        EXPECT_NEAR(grid, b.lower, 1e-3 * std::max(1.0, b.lower));
    }
}

TEST(NumericalRadius, JordanBlock)
{
    // w(J_n) = cos(pi / (n + 1)) for the nilpotent shift
    for (int n : {2, 3, 5, 8}) {
        cmat j = cmat::Zero(n, n);
        for (int k = 0; k + 1 < n; ++k)
            j(k, k + 1) = 1;
        RadiusBracket b = numerical_radius_bracket(j, 1e-10);
        EXPECT_NEAR(b.lower, std::cos(pi / (n + 1)), 1e-9) << n;
    }
}

TEST(NumericalRadius, NormalMatrixIsSpectralRadius)
{
    Rng rng(22);
    for (int s = 0; s < 10; ++s) {
        const int n = 2 + s % 5;
        cvec d = random_vector(rng, n);
        Eigen::HouseholderQR<cmat> qr(random_matrix(rng, n, n));
        cmat u = qr.householderQ();
        cmat m = u * d.asDiagonal() * u.adjoint();
        double want = d.cwiseAbs().maxCoeff();
        RadiusBracket b = numerical_radius_bracket(m, 1e-10);
        EXPECT_NEAR(b.lower, want, 1e-9);
        EXPECT_NEAR(b.upper, want, 1e-9);
    }
}

TEST(NumericalRadius, HermitianFastPath)
{
    cmat h(2, 2);
    h << 1, cplx(0, 2), cplx(0, -2), -3;
    RadiusBracket b = numerical_radius_bracket(h);
    rvec ev = hermitian_eigenvalues(h);
    EXPECT_DOUBLE_EQ(b.lower, std::max(std::abs(ev(0)), std::abs(ev(1))));
    EXPECT_EQ(b.nodes, 0);
}

TEST(NumericalRadiusProperty, SandwichAndSampledVectors)
{
    Rng rng(23);
    for (int s = 0; s < 40; ++s) {
        const int n = 1 + s % 10;
        cmat m = random_matrix(rng, n, n);
        RadiusBracket b = numerical_radius_bracket(m, 1e-8);
        double nrm = opnorm(m);
        EXPECT_LE(b.lower, nrm + 1e-10);
        EXPECT_GE(2 * b.upper, nrm - 1e-10);
        EXPECT_LE(b.upper - b.lower, 1e-8 + 1e-12);
        for (int k = 0; k < 200; ++k) {
            cvec xi = random_unit_vector(rng, n);
            EXPECT_LE(std::abs(xi.dot(m * xi)), b.upper + 1e-12);
        }
    }
}

TEST(NumericalRadiusProperty, UnitaryAndPhaseInvariance)
{
    Rng rng(24);
    for (int s = 0; s < 10; ++s) {
        const int n = 3 + s % 4;
        cmat m = random_matrix(rng, n, n);
        Eigen::HouseholderQR<cmat> qr(random_matrix(rng, n, n));
        cmat u = qr.householderQ();
        double w = numerical_radius(m, 1e-10);
        EXPECT_NEAR(numerical_radius(cmat(u * m * u.adjoint()), 1e-10), w, 1e-8);
        EXPECT_NEAR(numerical_radius(cmat(std::polar(1.0, 0.7 * s) * m), 1e-10), w, 1e-8);
    }
}

TEST(NumericalRadius, CutoffStopsEarly)
{
    Rng rng(25);
    cmat m = random_matrix(rng, 6, 6);
    RadiusBracket full = numerical_radius_bracket(m, 1e-10);
    RadiusBracket cut = numerical_radius_bracket(m, 1e-10, 200000, 10 * full.upper);
    EXPECT_LE(cut.nodes, full.nodes);
    EXPECT_GE(cut.upper, full.lower - 1e-12);
    EXPECT_LE(cut.lower, full.upper + 1e-12);
}
