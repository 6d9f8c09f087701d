#include "cqms/simplex.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

using namespace cqms;

namespace {

rmat mat(int r, int c, std::initializer_list<double> v)
{
    rmat m(r, c);
    auto it = v.begin();
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < c; ++j)
            m(i, j) = *it++;
    return m;
}

rvec vec(std::initializer_list<double> v)
{
    rvec x(static_cast<Eigen::Index>(v.size()));
    int i = 0;
    for (double d : v)
        x(i++) = d;
    return x;
}

} // namespace

TEST(Simplex, TextbookExample)
{
    // max 3x + 5y, x <= 4, 2y <= 12, 3x + 2y <= 18
    LPResult r = solve_lp(mat(3, 2, {1, 0, 0, 2, 3, 2}), vec({4, 12, 18}), vec({3, 5}));
    ASSERT_EQ(r.status, LPStatus::optimal);
    EXPECT_NEAR(r.value, 36, 1e-12);
    EXPECT_NEAR(r.x(0), 2, 1e-12);
    EXPECT_NEAR(r.x(1), 6, 1e-12);
    EXPECT_LT(r.gap, 1e-12);
}

TEST(Simplex, NegativeRightHandSideNeedsPhaseOne)
{
    // max -x with x >= 2
    LPResult r = solve_lp(mat(1, 1, {-1}), vec({-2}), vec({-1}));
    ASSERT_EQ(r.status, LPStatus::optimal);
    EXPECT_NEAR(r.value, -2, 1e-12);
}

TEST(Simplex, Infeasible)
{
    // x <= -1 with x >= 0
    EXPECT_EQ(solve_lp(mat(1, 1, {1}), vec({-1}), vec({1})).status, LPStatus::infeasible);
}

TEST(Simplex, Unbounded)
{
    EXPECT_EQ(solve_lp(mat(1, 2, {1, -1}), vec({1}), vec({0, 1})).status, LPStatus::unbounded);
}

TEST(Simplex, BealeCyclingExample)
{
    // cycles under the largest-coefficient rule; optimum 1/20
    rmat a = mat(3, 4, {0.25, -60, -1.0 / 25, 9, 0.5, -90, -1.0 / 50, 3, 0, 0, 1, 0});
    LPResult r = solve_lp(a, vec({0, 0, 1}), vec({0.75, -150, 1.0 / 50, -6}));
    ASSERT_EQ(r.status, LPStatus::optimal);
    EXPECT_NEAR(r.value, 0.05, 1e-12);
}

TEST(SimplexProperty, RandomPlanarLPsMatchVertexEnumeration)
{
    Rng rng(31);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    int optimal = 0;
    for (int s = 0; s < 200; ++s) {
        const int m = 2 + s % 5;
        rmat a(m, 2);
        rvec b(m);
        for (int i = 0; i < m; ++i) {
            a(i, 0) = u(rng);
            a(i, 1) = u(rng);
            b(i) = u(rng) + 0.3;
        }
        // keep it bounded
        rmat ab(m + 1, 2);
        ab << a, 1, 1;
        rvec bb(m + 1);
        bb << b, 5;
        Eigen::Vector2d c(u(rng), u(rng));
        bool feasible = false;
        double want = oracle::lp2_by_vertices(ab, bb, c, feasible);
        LPResult r = solve_lp(ab, bb, c);
        if (!feasible) {
            EXPECT_EQ(r.status, LPStatus::infeasible) << s;
            continue;
        }
        ASSERT_EQ(r.status, LPStatus::optimal) << s;
        ++optimal;
        EXPECT_NEAR(r.value, want, 1e-9) << s;
        EXPECT_LT(r.primal_residual, 1e-9);
        EXPECT_LT(r.dual_residual, 1e-9);
        EXPECT_LT(r.gap, 1e-9);
    }
    EXPECT_GT(optimal, 100);
}

TEST(SimplexProperty, CertificatesOnRandomBoxedLPs)
{
    Rng rng(32);
    std::normal_distribution<double> nd;
    for (int s = 0; s < 50; ++s) {
        const int m = 10 + s % 7, n = 6 + s % 5;
        rmat a(m + n, n);
        rvec b(m + n), c(n);
        for (int i = 0; i < m; ++i) {
            for (int j = 0; j < n; ++j)
                a(i, j) = nd(rng);
            b(i) = std::abs(nd(rng)) + 0.1;
        }
        a.bottomRows(n) = rmat::Identity(n, n);
        b.tail(n).setConstant(3.0);
        for (int j = 0; j < n; ++j)
            c(j) = nd(rng);
        LPResult r = solve_lp(a, b, c);
        ASSERT_EQ(r.status, LPStatus::optimal);
        EXPECT_LT(r.primal_residual, 1e-9);
        EXPECT_LT(r.dual_residual, 1e-9);
        EXPECT_LT(r.gap, 1e-9);
    }
}
