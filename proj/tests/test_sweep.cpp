#include "cqms/sweep.hpp"

#include <gtest/gtest.h>

using namespace cqms;

namespace {

Experiment z_experiment(int n)
{
    FiniteQuantumGroup g = function_algebra(cyclic_table(n), arc_metric(n));
    PolyhedralSeminorm l = lip_from_metric(g);
    return Experiment(g, *builtin_coreps(g), l);
}

Experiment cs3_experiment()
{
    StockGroup s = symmetric_group_3();
    FiniteQuantumGroup g = group_algebra(s.table, word_length(FiniteGroup(s.table), {1, 2}));
    PolyhedralSeminorm l = lip_fourier(g);
    return Experiment(g, *builtin_coreps(g), l);
}

RowOptions quick()
{
    RowOptions o;
    o.samples = 20;
    o.hausdorff_samples = 5;
    o.seed = 3;
    return o;
}

} // namespace

TEST(Chains, FrequencyChainZ8)
{
    Experiment e = z_experiment(8);
    auto chain = frequency_chain(e.g, e.pw);
    ASSERT_EQ(chain.size(), 5u);
    EXPECT_EQ(chain[0], std::vector<int>{0});
    EXPECT_EQ(chain[1], (std::vector<int>{0, 1, 7}));
    EXPECT_EQ(chain[4].size(), 8u);
}

TEST(Chains, FrequencyChainNeedsCyclicFunctionAlgebra)
{
    Experiment e = cs3_experiment();
    EXPECT_THROW(frequency_chain(e.g, e.pw), Error);
}

TEST(Chains, NormalizeAppendsOrDropsFull)
{
    Experiment e = z_experiment(4);
    std::vector<std::vector<int>> chain{{0}, {0, 1}};
    auto with = normalize_chain(chain, e.pw, true);
    ASSERT_EQ(with.size(), 3u);
    EXPECT_EQ(with.back().size(), 4u);
    auto without = normalize_chain(incremental_chain(e.pw), e.pw, false);
    EXPECT_EQ(without.size(), 3u);
    EXPECT_EQ(normalize_chain(incremental_chain(e.pw), e.pw, true).size(), 4u);
}

TEST(Chains, ValidationErrors)
{
    Experiment e = z_experiment(4);
    auto kind = [&](std::vector<std::vector<int>> c) {
        try {
            normalize_chain(std::move(c), e.pw, false);
        } catch (const Error& err) {
            return err.kind();
        }
        return Error::Kind::internal_inconsistency;
    };
    EXPECT_EQ(kind({{0, 1}, {0}}), Error::Kind::config);
    EXPECT_EQ(kind({{0, 1}, {0, 2}}), Error::Kind::config);
    EXPECT_EQ(kind({{0, 9}}), Error::Kind::config);
    EXPECT_EQ(kind({{0, 0}}), Error::Kind::config);
    EXPECT_EQ(kind({{0, 1, 2, 3}}), Error::Kind::config);  // only the full set, which is dropped
}

TEST(Sweep, FrequencyChainBoundDecreasesToZero)
{
    Experiment e = z_experiment(8);
    auto chain = frequency_chain(e.g, e.pw);
    double prev = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < chain.size(); ++k) {
        SweepRow row = run_row(e, chain[k], quick(), static_cast<int>(k));
        EXPECT_LT(row.bound_b, prev + 1e-12) << k;
        EXPECT_LE(row.c1_max_residual, 1e-8) << k;
        EXPECT_LE(row.diam_lower, row.diam_upper + 1e-12);
        EXPECT_NEAR(row.criterion_r, row.bound_b, 1e-15);
        if (k + 1 < chain.size())
            EXPECT_GT(row.bound_b, 0.0);
        prev = row.bound_b;
    }
    EXPECT_NEAR(prev, 0.0, 1e-8);
}

TEST(Sweep, TrivialTruncationDiameterBracket)
{
    // X = C: every state agrees, and the bound is twice the distance from h to eps
    Experiment e = z_experiment(8);
    SweepRow row = run_row(e, {0}, quick(), 0);
    EXPECT_EQ(row.dim_sys, 1);
    EXPECT_NEAR(row.bound_b, 2 * e.eps_h, 1e-10);
    EXPECT_NEAR(row.diam_lower, 0.0, 0.0);
}

TEST(Sweep, GroupAlgebraResiduals)
{
    Experiment e = cs3_experiment();
    auto chain = normalize_chain(incremental_chain(e.pw), e.pw, true);
    for (std::size_t k = 0; k < chain.size(); ++k) {
        SweepRow row = run_row(e, chain[k], quick(), static_cast<int>(k));
        EXPECT_LE(row.c1_max_residual, 1e-8) << k;
        EXPECT_GE(row.bound_b, 0.0);
    }
}

TEST(Sweep, HausdorffColumnsBelowCriterion)
{
    Experiment e = z_experiment(8);
    SweepRow row = run_row(e, {0, 1, 7}, quick(), 0);
    EXPECT_GT(row.n1_hausdorff_lower, 0.0);
    EXPECT_LE(row.n1_hausdorff_lower, row.criterion_r * (1 + 1e-12));
    EXPECT_LE(row.n2_hausdorff_lower, row.criterion_r * (1 + 1e-12));
}

TEST(SweepProperty, HausdorffColumnsBelowCriterionOnEveryRow)
{
    // includes one-dimensional systems, where every pair cancels to rounding
    Experiment e = z_experiment(8);
    for (const std::vector<int>& sub : normalize_chain(incremental_chain(e.pw), e.pw, true)) {
        SweepRow row = run_row(e, sub, quick(), 0);
        EXPECT_LE(row.n1_hausdorff_lower, row.criterion_r * (1 + 1e-12) + 1e-12) << sub.size();
        EXPECT_LE(row.n2_hausdorff_lower, row.criterion_r * (1 + 1e-12) + 1e-12) << sub.size();
    }
}

TEST(Sweep, SameSeedSameRow)
{
    Experiment e = z_experiment(8);
    SweepRow a = run_row(e, {0, 1, 7}, quick(), 2), b = run_row(e, {0, 1, 7}, quick(), 2);
    a.runtime_ms = b.runtime_ms = 0;
    EXPECT_EQ(csv_line(a), csv_line(b));
}

TEST(Sweep, ExplicitVectorState)
{
    Experiment e = z_experiment(4);
    RowOptions o = quick();
    o.state = StateChoice::explicit_vector;
    o.vector = cvec::Zero(2);
    o.vector(0) = 2;
    SweepRow row = run_row(e, {0, 1}, o, 0);
    EXPECT_NE(row.note.find("norm was 2"), std::string::npos);
    o.vector = cvec::Ones(3);
    EXPECT_THROW(run_row(e, {0, 1}, o, 0), Error);
}

TEST(Csv, Format)
{
    SweepRow r;
    r.lambda = {0, 1, 7};
    r.dim_sys = 5;
    r.bound_b = 0.5;
    r.runtime_ms = 1.23456;
    EXPECT_EQ(csv_line(r), "\"0,1,7\",5,0.5,0,0,0,0,0,0,1.235");
    EXPECT_EQ(std::string(csv_header()).substr(0, 10), "lambda_id,");
}
