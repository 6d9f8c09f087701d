#ifndef CQMS_SWEEP_HPP
#define CQMS_SWEEP_HPP

// Truncation experiments: one row per Lambda with the bound B, the criterion
// r, a diameter bracket, Prop-style residuals and sampled Hausdorff lower
// estimates. Shared by the command-line tool and the tests.

#include "cqms/mk_distance.hpp"

#include <chrono>
#include <cstdio>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace cqms {

enum class StateChoice { canonical, optimized, explicit_vector };

struct Experiment {
    FiniteQuantumGroup g;
    GNSSpace gns;
    PWDecomposition pw;
    PolyhedralSeminorm lip;
    MKSolver solver;
    double eps_h = 0;       // d^{L_A}(eps, h)
    cvec eps_h_witness;     // optimizer of the same LP

    Experiment(FiniteQuantumGroup group, const std::vector<Corepresentation>& irreps, PolyhedralSeminorm l,
               double tol = 1e-9)
        : g(std::move(group)), gns(gns_build(g)), pw(peter_weyl(g, gns, irreps)), lip(std::move(l)),
          solver(g, lip, tol)
    {
        MKResult r = solver.solve(g.counit, g.haar);
        eps_h = r.value;
        eps_h_witness = r.optimizer;
    }
};

struct RowOptions {
    StateChoice state = StateChoice::canonical;
    cvec vector;               // explicit state vector on H_Lambda
    double tol = 1e-9;
    double radius_tol = 1e-10; // numerical radius bracket width
    std::uint64_t seed = 0;
    int samples = 200;
    int hausdorff_samples = 50;
};

struct SweepRow {
    std::vector<int> lambda;
    int dim_sys = 0;
    double bound_b = 0;
    double criterion_r = 0;
    double diam_lower = 0;
    double diam_upper = 0;
    double c1_max_residual = 0;
    double n1_hausdorff_lower = 0;
    double n2_hausdorff_lower = 0;
    double runtime_ms = 0;
    std::string note;
};

/// A random element of A: self-adjoint on even draws.
inline cvec sample_element(const FiniteQuantumGroup& g, Rng& rng, int s)
{
    cvec a = random_vector(rng, g.dim);
    if (s % 2 == 0)
        a = 0.5 * (a + g.adjoint(a));
    return a;
}

inline cvec sample_system_element(const TruncatedSystem& t, Rng& rng, int s)
{
    cvec x = random_vector(rng, t.dim_sys());
    if (s % 2 == 0)
        x = 0.5 * (x + t.adjoint(x));
    return x;
}

inline SystemState choose_state(const Experiment& e, const TruncatedSystem& t, const RowOptions& opt,
                                std::uint64_t seed, std::string& note)
{
    SystemState canon = canonical_state(e.g, e.gns, t);
    switch (opt.state) {
    case StateChoice::canonical:
        return canon;
    case StateChoice::optimized:
        return optimized_state(e.solver, e.g, t, canon, 4, 60, seed);
    case StateChoice::explicit_vector:
        if (opt.vector.size() != t.m())
            fail(Error::Kind::config, "--vector has " + std::to_string(opt.vector.size()) +
                                          " entries but H_Lambda has dimension " + std::to_string(t.m()));
        if (std::abs(opt.vector.norm() - 1.0) > 1e-12) {
            std::ostringstream os;
            os << "vector normalized (norm was " << opt.vector.norm() << ")";
            note = os.str();
        }
        return vector_state(opt.vector);
    }
    return canon;
}

inline SweepRow run_row(const Experiment& e, const std::vector<int>& subset, const RowOptions& opt, int row_index)
{
    auto start = std::chrono::steady_clock::now();
    const std::uint64_t seed = opt.seed + static_cast<std::uint64_t>(row_index);
    const FiniteQuantumGroup& g = e.g;
    SweepRow row;
    row.lambda = subset;
    TruncatedSystem t = truncate(g, e.gns, e.pw, subset);
    row.dim_sys = t.dim_sys();
    Coaction alpha = induced_coaction(g, t, Side::right);
    Coaction beta = induced_coaction(g, t, Side::left);
    SystemState phi = choose_state(e, t, opt, seed, row.note);
    cmat sigma = symbol(t, alpha, phi);

    row.bound_b = truncation_bound(e.solver, g, t, phi);
    if (std::abs(row.bound_b) <= opt.tol)
        row.bound_b = std::max(row.bound_b, 0.0);
    auto lx = [&](const cvec& x) { return bi_induced_lip_bracket(e.lip, alpha, beta, x, opt.radius_tol); };

    // Diameter of the truncation: |psi(x) - h_X(x)| <= d^{L_A}(eps, h) for
    // every state psi once L^alpha(x) <= 1; below, two eigenvector states of
    // tau applied to the LP witness.
    row.diam_upper = 2.0 * e.eps_h;
    {
        cvec w = 0.5 * (e.eps_h_witness + g.adjoint(e.eps_h_witness));
        cvec x = t.tau_coords(w);
        double lup = lx(x).upper;
        if (lup > 0) {
            rvec ev = hermitian_eigenvalues(t.to_matrix(x));
            row.diam_lower = (ev(ev.size() - 1) - ev(0)) / lup;
        }
        row.diam_lower = std::min(row.diam_lower, row.diam_upper);
    }
    row.criterion_r = criterion_bound({row.diam_upper, row.diam_upper, 1.0, 1.0, row.bound_b, row.bound_b});

    // ||sigma tau a - a|| <= B L_A(a) and ||tau sigma x - x|| <= B L^beta(x)
    Rng rng(seed);
    double worst = -std::numeric_limits<double>::infinity();
    for (int s = 0; s < opt.samples; ++s) {
        cvec a = sample_element(g, rng, s);
        cvec back = sigma * t.tau_coords(a);
        worst = std::max(worst, g.norm(cvec(back - a)) - row.bound_b * e.lip(a));
        cvec x = sample_system_element(t, rng, s);
        cvec there = t.tau_coords(cvec(sigma * x));
        double lb = induced_lip_bracket(e.lip, beta, x, opt.radius_tol).lower;
        worst = std::max(worst, opnorm(t.to_matrix(cvec(there - x))) - row.bound_b * lb);
    }
    row.c1_max_residual = opt.samples > 0 ? worst : 0.0;

    // Hausdorff lower estimates in the admissible sum with r: pairing with a
    // scalar fixes the other side, so every point of the other state space
    // sits at least |mu_n(a) - lambda| / L(a, lambda 1) away.
    if (row.criterion_r > opt.tol) {
        auto sum = admissible_sum_lipnorm<cvec, cvec>(
            [&](const cvec& a) { return e.lip(a); }, [&](const cvec& x) { return lx(x).upper; },
            [&](const cvec& a) { return t.tau_coords(a); }, [&](const cvec& x) { return cvec(sigma * x); },
            [&](const cvec& a, const cvec& b) { return g.norm(cvec(a - b)); },
            [&](const cvec& x, const cvec& y) { return opnorm(t.to_matrix(cvec(x - y))); }, row.criterion_r);
        Rng hr(seed ^ 0x9e3779b97f4a7c15ULL);
        // pairs that cancel to rounding noise carry no information (0 / 0)
        auto record = [&](const cmat& shifted, double lval, double scale) {
            if (!(lval > 0) || opnorm(shifted) <= 1e-10 * std::max(scale, 1.0))
                return;
            row.n1_hausdorff_lower = std::max(row.n1_hausdorff_lower, numerical_radius(shifted, opt.radius_tol) / lval);
            double n2 = shifted.rows() >= 2 ? opnorm(shifted) : numerical_radius(shifted, opt.radius_tol);
            row.n2_hausdorff_lower = std::max(row.n2_hausdorff_lower, n2 / lval);
        };
        for (int s = 0; s < opt.hausdorff_samples; ++s) {
            cvec a = s == 0 ? cvec(0.5 * (e.eps_h_witness + g.adjoint(e.eps_h_witness))) : sample_element(g, hr, s);
            cmat ra = g.rho(a);
            const cplx h = (g.haar.transpose() * a)(0);
            for (cplx lam : {h, cplx(t.tau(a).trace() / double(t.m()))}) {
                cmat shifted = ra - lam * identity(ra.rows());
                record(shifted, sum(a, lam * t.unit), opnorm(ra));
            }
            cvec x = sample_system_element(t, hr, s);
            cmat mx = t.to_matrix(x);
            for (cplx lam : {cplx(mx.trace() / double(t.m())), (g.haar.transpose() * cvec(sigma * x))(0)}) {
                cmat shifted = mx - lam * identity(mx.rows());
                record(shifted, sum(lam * g.unit, x), opnorm(mx));
            }
        }
    }
    row.runtime_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return row;
}

/// Lambda_k = {chi_f : min(f, n - f) <= k} for F(Z_n) with the stock characters.
inline std::vector<std::vector<int>> frequency_chain(const FiniteQuantumGroup& g, const PWDecomposition& pw)
{
    if (g.family != Family::function_algebra || !g.group || g.group->table() != cyclic_table(g.dim))
        fail(Error::Kind::config, "the frequency chain needs F(Z_n) with its stock characters");
    const int n = g.dim;
    if (pw.size() != n)
        fail(Error::Kind::config, "the frequency chain needs the n characters of Z_n");
    std::vector<std::vector<int>> chain;
    for (int k = 0; k <= n / 2; ++k) {
        std::vector<int> s;
        for (int f = 0; f < n; ++f)
            if (std::min(f, n - f) <= k)
                s.push_back(f);
        chain.push_back(s);
    }
    return chain;
}

/// Lambda_k = {0, ..., k} in file order.
inline std::vector<std::vector<int>> incremental_chain(const PWDecomposition& pw)
{
    std::vector<std::vector<int>> chain;
    for (int k = 0; k < pw.size(); ++k) {
        std::vector<int> s;
        for (int j = 0; j <= k; ++j)
            s.push_back(j);
        chain.push_back(s);
    }
    return chain;
}

/// Strictly increasing under inclusion; the last entry is complete iff
/// include_full (appended or dropped accordingly).
inline std::vector<std::vector<int>> normalize_chain(std::vector<std::vector<int>> chain, const PWDecomposition& pw,
                                                     bool include_full)
{
    auto complete = [&](const std::vector<int>& s) {
        return static_cast<int>(std::set<int>(s.begin(), s.end()).size()) == pw.size();
    };
    for (const auto& s : chain) {
        for (int k : s)
            if (k < 0 || k >= pw.size())
                fail(Error::Kind::config, "irrep index " + std::to_string(k) + " out of range");
        if (std::set<int>(s.begin(), s.end()).size() != s.size())
            fail(Error::Kind::config, "repeated irrep index in a chain entry");
    }
    for (std::size_t i = 1; i < chain.size(); ++i) {
        std::set<int> a(chain[i - 1].begin(), chain[i - 1].end()), b(chain[i].begin(), chain[i].end());
        if (a.size() >= b.size() || !std::includes(b.begin(), b.end(), a.begin(), a.end()))
            fail(Error::Kind::config, "chain is not increasing at entry " + std::to_string(i));
    }
    if (include_full) {
        if (chain.empty() || !complete(chain.back()))
            chain.push_back(pw.all());
    } else {
        while (!chain.empty() && complete(chain.back()))
            chain.pop_back();
    }
    if (chain.empty())
        fail(Error::Kind::config, "empty chain");
    return chain;
}

inline std::string lambda_id(const std::vector<int>& s)
{
    std::string out;
    for (std::size_t i = 0; i < s.size(); ++i)
        out += (i ? "," : "") + std::to_string(s[i]);
    return out;
}

inline const char* csv_header()
{
    return "lambda_id,dim_sys,bound_B,criterion_r,diam_lower,diam_upper,c1_max_residual,n1_hausdorff_lower,"
           "n2_hausdorff_lower,runtime_ms";
}

inline std::string csv_line(const SweepRow& r)
{
    char buf[512];
    std::snprintf(buf, sizeof buf, "\"%s\",%d,%.15g,%.15g,%.15g,%.15g,%.15g,%.15g,%.15g,%.3f",
                  lambda_id(r.lambda).c_str(), r.dim_sys, r.bound_b, r.criterion_r, r.diam_lower, r.diam_upper,
                  r.c1_max_residual, r.n1_hausdorff_lower, r.n2_hausdorff_lower, r.runtime_ms);
    return buf;
}

} // namespace cqms

#endif
