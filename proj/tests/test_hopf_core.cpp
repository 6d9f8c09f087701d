#include "cqms/hopf_core.hpp"

#include <gtest/gtest.h>

using namespace cqms;

namespace {

FiniteQuantumGroup fz(int n) { return function_algebra(cyclic_table(n), arc_metric(n)); }

FiniteQuantumGroup cs3()
{
    StockGroup s = symmetric_group_3();
    return group_algebra(s.table, word_length(FiniteGroup(s.table), {1, 2}));
}

} // namespace

TEST(FunctionAlgebra, Z2Comultiplication)
{
    FiniteQuantumGroup g = fz(2);
    EXPECT_EQ(g.dim, 2);
    // Delta(delta_0) = delta_0 (x) delta_0 + delta_1 (x) delta_1, index j*n + k
    cvec want = cvec::Zero(4);
    want(0) = 1;
    want(3) = 1;
    EXPECT_LT(max_abs(cvec(g.comult.col(0) - want)), 1e-15);
}

TEST(FunctionAlgebra, Z4ArcMetric)
{
    FiniteQuantumGroup g = fz(4);
    ASSERT_TRUE(g.metric.has_value());
    EXPECT_NEAR((*g.metric)(0, 1), pi / 2, 1e-15);
    EXPECT_NEAR((*g.metric)(0, 2), pi, 1e-15);
}

TEST(FunctionAlgebra, S3AxiomsPass)
{
    FiniteQuantumGroup g = function_algebra(symmetric_group_3().table);
    EXPECT_EQ(g.dim, 6);
    EXPECT_LT(check_axioms(g).max_residual(), 1e-12);
}

TEST(FunctionAlgebra, BadTableRejected)
{
    CayleyTable t = {{0, 1, 2}, {1, 2, 0}, {2, 0, 0}};
    try {
        function_algebra(t);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), Error::Kind::table);
    }
}

TEST(FunctionAlgebra, NonInvariantMetricNamesTriple)
{
    // distance on Z_4 that is symmetric and a metric but not translation invariant
    rmat d = arc_metric(4);
    d(0, 1) = d(1, 0) = 1.0;
    try {
        function_algebra(cyclic_table(4), d);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), Error::Kind::metric);
        EXPECT_NE(std::string(e.what()).find("("), std::string::npos);
    }
}

TEST(GroupAlgebra, Z2Comultiplication)
{
    FiniteQuantumGroup g = group_algebra(cyclic_table(2));
    cvec want = cvec::Zero(4);
    want(3) = 1;  // lambda_1 (x) lambda_1
    EXPECT_LT(max_abs(cvec(g.comult.col(1) - want)), 1e-15);
}

TEST(GroupAlgebra, S3HaarIsTraceAtIdentity)
{
    FiniteQuantumGroup g = cs3();
    EXPECT_EQ(g.dim, 6);
    cvec h = solve_haar(g);
    for (int x = 0; x < 6; ++x)
        EXPECT_NEAR(std::abs(h(x) - (x == 0 ? 1.0 : 0.0)), 0.0, 1e-12);
}

TEST(GroupAlgebra, Z4PodlesRank)
{
    FiniteQuantumGroup g = group_algebra(cyclic_table(4));
    const int n = g.dim;
    // span of (a (x) 1)Delta(b) over basis a, b: independent rank computation
    cmat span(n * n, n * n);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            cvec v = kron(g.left_basis(a), identity(n)) * g.comult.col(b);
            span.col(a * n + b) = v;
        }
    EXPECT_EQ(rank(span), 16);
    EXPECT_LT(check_axioms(g)["podles_left"], 1e-12);
}

TEST(GroupAlgebra, BadLengthRejected)
{
    rvec len(4);
    len << 0, 1, 0, 1;
    try {
        group_algebra(cyclic_table(4), len);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), Error::Kind::length);
    }
}

TEST(Axioms, BuiltinsPass)
{
    for (const FiniteQuantumGroup& g : {fz(4), cs3(), fz(8)})
        EXPECT_LT(check_axioms(g).max_residual(), 1e-12);
}

TEST(Axioms, PerturbedMultiplicationDetected)
{
    FiniteQuantumGroup g = fz(4);
    // e_0 e_0 picks up a component along e_1
    g.mult(1, 0) += 1e-3;
    AxiomReport r = check_axioms(g);
    EXPECT_GE(r["associativity"], 1e-3);
    EXPECT_FALSE(r.passes(1e-9));
}

TEST(Axioms, ShapeMismatchNamesTensor)
{
    FiniteQuantumGroup g = fz(4);
    g.comult.conservativeResize(15, 4);
    try {
        check_axioms(g);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), Error::Kind::structural);
        EXPECT_NE(std::string(e.what()).find("comult"), std::string::npos);
    }
}

TEST(Haar, FunctionAlgebraIsUniform)
{
    FiniteQuantumGroup g = function_algebra(symmetric_group_3().table);
    State h = haar_state(g);
    for (int i = 0; i < 6; ++i)
        EXPECT_NEAR(std::abs(h.coeffs(i) - 1.0 / 6), 0.0, 1e-12);
}

TEST(Haar, GramPositiveOnRandomElements)
{
    FiniteQuantumGroup g = function_algebra(symmetric_group_3().table);
    Rng rng(3);
    for (int s = 0; s < 20; ++s) {
        cvec f = random_vector(rng, 6);
        // h(f f*) = mean |f|^2 for functions
        cvec ff = g.product(f, g.adjoint(f));
        cplx v = (g.haar.transpose() * ff)(0);
        EXPECT_GT(v.real(), 0);
        EXPECT_NEAR(v.real(), f.squaredNorm() / 6, 1e-12);
    }
}

TEST(Haar, BiInvariant)
{
    for (const FiniteQuantumGroup& g : {fz(8), cs3()}) {
        Rng rng(5);
        for (int s = 0; s < 10; ++s) {
            cvec a = random_vector(rng, g.dim);
            cmat t = unflatten(g.comult * a, g.dim, g.dim);
            cplx ha = (g.haar.transpose() * a)(0);
            EXPECT_LT(max_abs(cvec(slice(Side::right, Functional{g.haar}, t) - ha * g.unit)), 1e-12);
            EXPECT_LT(max_abs(cvec(slice(Side::left, Functional{g.haar}, t) - ha * g.unit)), 1e-12);
        }
    }
}

TEST(State, RejectsNonPositive)
{
    FiniteQuantumGroup g = fz(4);
    cvec mu(4);
    mu << 1.5, -0.5, 0, 0;
    try {
        certify_state(g, mu);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), Error::Kind::state_certification);
    }
}

TEST(Convolution, PointMassesTranslate)
{
    FiniteQuantumGroup g = fz(4);
    Functional d1{cvec::Unit(4, 1)};
    Functional c = convolve(d1, d1, g);
    EXPECT_LT(max_abs(cvec(c.coeffs - cvec::Unit(4, 2))), 1e-15);
}

TEST(Convolution, CounitIsUnitAndHaarAbsorbs)
{
    for (const FiniteQuantumGroup& g : {fz(8), cs3()}) {
        Rng rng(7);
        Functional eps{g.counit}, h{g.haar};
        for (int s = 0; s < 10; ++s) {
            Functional mu{random_vector(rng, g.dim)};
            EXPECT_LT(max_abs(cvec(convolve(eps, mu, g).coeffs - mu.coeffs)), 1e-12);
            EXPECT_LT(max_abs(cvec(convolve(mu, eps, g).coeffs - mu.coeffs)), 1e-12);
            cplx mu1 = mu(g.unit);
            EXPECT_LT(max_abs(cvec(convolve(h, mu, g).coeffs - mu1 * g.haar)), 1e-12);
        }
    }
}

TEST(Convolution, Associative)
{
    FiniteQuantumGroup g = cs3();
    Rng rng(9);
    for (int s = 0; s < 10; ++s) {
        Functional a{random_vector(rng, 6)}, b{random_vector(rng, 6)}, c{random_vector(rng, 6)};
        cvec l = convolve(convolve(a, b, g), c, g).coeffs;
        cvec r = convolve(a, convolve(b, c, g), g).coeffs;
        EXPECT_LT(max_abs(cvec(l - r)), 1e-12);
    }
}

TEST(Slice, CounitRecoversElement)
{
    FiniteQuantumGroup g = fz(8);
    Rng rng(11);
    cvec a = random_vector(rng, 8);
    cmat t = unflatten(g.comult * a, 8, 8);
    EXPECT_LT(max_abs(cvec(slice(Side::left, Functional{g.counit}, t) - a)), 1e-12);
}

TEST(Slice, FubiniOnRandomTensors)
{
    // (phi (x) id) then psi  ==  (id (x) psi) then phi
    Rng rng(13);
    for (int s = 0; s < 50; ++s) {
        cmat t = random_matrix(rng, 5, 5);
        Functional phi{random_vector(rng, 5)}, psi{random_vector(rng, 5)};
        cplx a = psi(slice(Side::left, phi, t));
        cplx b = phi(slice(Side::right, psi, t));
        EXPECT_LT(std::abs(a - b), 1e-12);
    }
}

TEST(CounitSupport, FunctionAlgebraIsDeltaAtIdentity)
{
    FiniteQuantumGroup g = fz(4);
    cvec p = counit_support_projection(g);
    EXPECT_LT(max_abs(cvec(p - cvec::Unit(4, 0))), 1e-12);
}

TEST(CounitSupport, GroupAlgebraIsAverage)
{
    FiniteQuantumGroup g = cs3();
    cvec p = counit_support_projection(g);
    EXPECT_LT(max_abs(cvec(p - cvec::Constant(6, 1.0 / 6))), 1e-12);
    EXPECT_LT(max_abs(cvec(g.product(p, p) - p)), 1e-12);
    EXPECT_LT(max_abs(cvec(g.adjoint(p) - p)), 1e-12);
    EXPECT_NEAR(std::abs((g.counit.transpose() * p)(0) - 1.0), 0.0, 1e-12);
}

TEST(Representation, StarHomomorphism)
{
    for (const FiniteQuantumGroup& g : {fz(8), cs3()}) {
        Rng rng(17);
        for (int s = 0; s < 10; ++s) {
            cvec a = random_vector(rng, g.dim), b = random_vector(rng, g.dim);
            EXPECT_LT(max_abs(cmat(g.rho(g.product(a, b)) - g.rho(a) * g.rho(b))), 1e-12);
            EXPECT_LT(max_abs(cmat(g.rho(g.adjoint(a)) - g.rho(a).adjoint())), 1e-12);
        }
    }
}
