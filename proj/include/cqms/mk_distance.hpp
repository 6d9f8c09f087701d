#ifndef CQMS_MK_DISTANCE_HPP
#define CQMS_MK_DISTANCE_HPP

// Monge-Kantorovich distances d^L(mu, nu) = sup{|mu(x) - nu(x)| : L(x) <= 1},
// diameter brackets, the truncation bound 2 d^{L_A}(tau* phi, eps), the
// criterion bound r, admissible sum Lip-norms and Hausdorff estimates.
//
// For a *-invariant L and hermitian mu - nu the sup may be taken over
// self-adjoint x modulo R1. When every l_i is real on self-adjoint elements
// the unit ball is a polytope and the sup is a linear program. When the l_i
// are linearly independent the sup has the closed form sum_i |w_i| c_i with
// mu - nu = sum_i w_i l_i.

#include "cqms/lipnorm.hpp"
#include "cqms/simplex.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace cqms {

struct MKResult {
    double value = 0;
    cvec optimizer;        // x with L(x) <= 1 attaining the sup (up to sign)
    double certificate = 0;  // worst of LP primal/dual residuals and gap
    std::string method;
};

class MKSolver {
public:
    MKSolver(const FiniteQuantumGroup& g, PolyhedralSeminorm l, double tol = 1e-9) : l_(std::move(l)), tol_(tol)
    {
        const int n = g.dim;
        // Real basis of A_sa modulo R1: span the real and imaginary parts of
        // the basis, strip the unit, keep n - 1 directions.
        rmat real(2 * n, 2 * n);
        for (int j = 0; j < n; ++j) {
            cvec e = cvec::Unit(n, j);
            cvec re = 0.5 * (e + g.adjoint(e));
            cvec im = cplx(0, -0.5) * (e - g.adjoint(e));
            real.col(2 * j) << re.real(), re.imag();
            real.col(2 * j + 1) << im.real(), im.imag();
        }
        rvec u(2 * n);
        u << g.unit.real(), g.unit.imag();
        u.normalize();
        real -= u * (u.transpose() * real);
        Eigen::BDCSVD<rmat> svd(real, Eigen::ComputeThinU);
        const rvec& sv = svd.singularValues();
        int r = 0;
        for (Eigen::Index i = 0; i < sv.size(); ++i)
            if (sv(i) > rank_rtol * sv(0))
                ++r;
        if (r != n - 1)
            fail(Error::Kind::structural, "self-adjoint part has unexpected dimension");
        basis_.resize(n, r);
        for (int k = 0; k < r; ++k) {
            rvec v = svd.matrixU().col(k);
            basis_.col(k) = v.head(n).cast<cplx>() + cplx(0, 1) * v.tail(n).cast<cplx>();
        }
        cmat vals = l_.matrix().transpose() * basis_;  // l_i(b_k)
        const double scale = std::max(1.0, max_abs(vals));
        real_ = max_abs(cmat(vals.imag().cast<cplx>())) <= 1e-12 * scale;
        if (real_) {
            a_ = vals.real();
            if (rank(a_.cast<cplx>()) < r)
                fail(Error::Kind::kernel, "Lip seminorm vanishes on a non-scalar element");
        } else {
            cmat f = l_.matrix();
            independent_ = rank(f) == f.cols();
            if (!independent_)
                fail(Error::Kind::unsupported, "complex, linearly dependent seminorm families have no exact solver");
            rmat stacked(2 * vals.rows(), r);
            stacked << vals.real(), vals.imag();
            if (rank(cmat(stacked.cast<cplx>())) < r)
                fail(Error::Kind::kernel, "Lip seminorm vanishes on a non-scalar element");
        }
    }

    const PolyhedralSeminorm& seminorm() const { return l_; }

    MKResult solve(const cvec& mu, const cvec& nu) const
    {
        cvec delta = mu - nu;
        MKResult out;
        if (max_abs(delta) == 0.0) {
            out.optimizer = cvec::Zero(mu.size());
            out.method = "trivial";
            return out;
        }
        if (!real_)
            return closed_form(delta);
        const int k = static_cast<int>(basis_.cols()), p = l_.size();
        rvec obj = (basis_.transpose() * delta).real();
        // t = t+ - t-, rows  A t <= c  and  -A t <= c
        rmat a(2 * p, 2 * k);
        a << a_, -a_, -a_, a_;
        rvec b(2 * p), c(2 * k);
        for (int i = 0; i < p; ++i)
            b(i) = b(p + i) = l_.constants[static_cast<std::size_t>(i)];
        c << obj, -obj;
        LPResult lp = solve_lp(a, b, c, tol_);
        if (lp.status == LPStatus::unbounded)
            fail(Error::Kind::kernel, "unbounded transport LP: the seminorm is degenerate");
        if (lp.status != LPStatus::optimal)
            fail(Error::Kind::certification, "transport LP infeasible");
        rvec t = lp.x.head(k) - lp.x.tail(k);
        out.value = lp.value;
        out.optimizer = basis_ * t.cast<cplx>();
        out.certificate = std::max({lp.primal_residual, lp.dual_residual, lp.gap});
        out.method = "simplex";
        if (out.certificate > 1e3 * tol_ * std::max(1.0, std::abs(lp.value)))
            fail(Error::Kind::certification, "LP certificate residual " + std::to_string(out.certificate));
        return out;
    }

    double distance(const cvec& mu, const cvec& nu) const { return solve(mu, nu).value; }

private:
    MKResult closed_form(const cvec& delta) const
    {
        cmat f = l_.matrix();
        Eigen::CompleteOrthogonalDecomposition<cmat> cod(f);
        cvec w = cod.solve(delta);
        MKResult out;
        const double resid = max_abs(cvec(f * w - delta));
        if (resid > 1e-9 * std::max(1.0, max_abs(delta)))
            fail(Error::Kind::kernel, "functional difference not in the span of the seminorm family");
        cvec target(f.cols());
        for (Eigen::Index i = 0; i < f.cols(); ++i) {
            const double ci = l_.constants[static_cast<std::size_t>(i)];
            out.value += std::abs(w(i)) * ci;
            target(i) = std::abs(w(i)) > 0 ? ci * std::conj(w(i)) / std::abs(w(i)) : cplx(0);
        }
        Eigen::CompleteOrthogonalDecomposition<cmat> cod2(cmat(f.transpose()));
        out.optimizer = cod2.solve(target);
        out.certificate = resid;
        out.method = "closed form";
        return out;
    }

    PolyhedralSeminorm l_;
    double tol_;
    cmat basis_;
    rmat a_;
    bool real_ = false;
    bool independent_ = false;
};

inline double mk_distance(const FiniteQuantumGroup& g, const PolyhedralSeminorm& l, const cvec& mu, const cvec& nu)
{
    return MKSolver(g, l).distance(mu, nu);
}

/// B(Lambda, phi) = 2 d^{L_A}(tau* phi, eps).
inline double truncation_bound(const MKSolver& solver, const FiniteQuantumGroup& g, const TruncatedSystem& t,
                               const SystemState& phi)
{
    return 2.0 * solver.distance(pullback(t, phi), g.counit);
}

struct CriterionInputs {
    double diam_x = 0, diam_y = 0;
    double c_phi = 1, c_psi = 1;
    double eps_x = 0, eps_y = 0;
};

inline double criterion_bound(const CriterionInputs& c)
{
    if (c.c_phi == 0.0 || c.c_psi == 0.0)
        fail(Error::Kind::domain, "morphism constants must be nonzero");
    if (c.diam_x < 0 || c.diam_y < 0 || c.c_phi < 0 || c.c_psi < 0 || c.eps_x < 0 || c.eps_y < 0)
        fail(Error::Kind::domain, "criterion inputs must be nonnegative");
    auto branch = [](double diam, double cst, double eps) {
        double drift = std::abs(1.0 - 1.0 / cst);
        return (drift == 0.0 ? 0.0 : diam * drift) + eps / cst;
    };
    return std::max(branch(c.diam_x, c.c_phi, c.eps_x), branch(c.diam_y, c.c_psi, c.eps_y));
}

/// L(x, y) = max{L_X(x), L_Y(y), norm(y - Phi x)/r, norm(x - Psi y)/r} on X (+) Y.
template <class X, class Y>
class AdmissibleSum {
public:
    AdmissibleSum(std::function<double(const X&)> lx, std::function<double(const Y&)> ly,
                  std::function<Y(const X&)> phi, std::function<X(const Y&)> psi,
                  std::function<double(const X&, const X&)> dist_x, std::function<double(const Y&, const Y&)> dist_y,
                  double r)
        : lx_(std::move(lx)), ly_(std::move(ly)), phi_(std::move(phi)), psi_(std::move(psi)),
          dx_(std::move(dist_x)), dy_(std::move(dist_y)), r_(r)
    {
        if (!(r > 0))
            fail(Error::Kind::domain, "admissible sum needs r > 0");
    }

    double operator()(const X& x, const Y& y) const
    {
        return std::max({lx_(x), ly_(y), dy_(y, phi_(x)) / r_, dx_(x, psi_(y)) / r_});
    }

    double lx(const X& x) const { return lx_(x); }
    double ly(const Y& y) const { return ly_(y); }
    double r() const { return r_; }

private:
    std::function<double(const X&)> lx_;
    std::function<double(const Y&)> ly_;
    std::function<Y(const X&)> phi_;
    std::function<X(const Y&)> psi_;
    std::function<double(const X&, const X&)> dx_;
    std::function<double(const Y&, const Y&)> dy_;
    double r_;
};

template <class X, class Y>
AdmissibleSum<X, Y> admissible_sum_lipnorm(std::function<double(const X&)> lx, std::function<double(const Y&)> ly,
                                           std::function<Y(const X&)> phi, std::function<X(const Y&)> psi,
                                           std::function<double(const X&, const X&)> dist_x,
                                           std::function<double(const Y&, const Y&)> dist_y, double r)
{
    return AdmissibleSum<X, Y>(std::move(lx), std::move(ly), std::move(phi), std::move(psi), std::move(dist_x),
                               std::move(dist_y), r);
}

struct HausdorffResult {
    double exact = 0;                  // of the finite samples
    std::optional<double> lemma_bound; // max{sup d(a, f a), sup d(g b, b)}
};

template <class P, class Metric>
HausdorffResult hausdorff_estimate(const std::vector<P>& set_a, const std::vector<P>& set_b, Metric d,
                                   std::function<P(const P&)> f = {}, std::function<P(const P&)> g = {})
{
    if (set_a.empty() || set_b.empty())
        fail(Error::Kind::domain, "Hausdorff distance of an empty set");
    HausdorffResult out;
    auto one_side = [&](const std::vector<P>& from, const std::vector<P>& to, bool forward) {
        double worst = 0;
        for (const P& p : from) {
            double best = std::numeric_limits<double>::infinity();
            for (const P& q : to)
                best = std::min(best, forward ? d(p, q) : d(q, p));
            worst = std::max(worst, best);
        }
        return worst;
    };
    out.exact = std::max(one_side(set_a, set_b, true), one_side(set_b, set_a, false));
    if (f && g) {
        double b = 0;
        for (const P& p : set_a)
            b = std::max(b, d(p, f(p)));
        for (const P& q : set_b)
            b = std::max(b, d(g(q), q));
        out.lemma_bound = b;
    }
    return out;
}

/// Vector state at the k-th basis vector of H0: point masses for F(G).
inline cvec basis_vector_state(const FiniteQuantumGroup& g, int k)
{
    cvec mu(g.dim);
    for (int i = 0; i < g.dim; ++i)
        mu(i) = g.rep[static_cast<std::size_t>(i)](k, k);
    return mu;
}

inline bool has_diagonal_rep(const FiniteQuantumGroup& g)
{
    for (const cmat& r : g.rep) {
        cmat off = r;
        off.diagonal().setZero();
        if (max_abs(off) > 0.0)
            return false;
    }
    return true;
}

struct DiameterBracket {
    double lower = 0;
    double upper = 0;
    cvec witness;  // self-adjoint x with L(x) <= 1 realising the lower end
    std::string method;
};

/// Spread lambda_max - lambda_min of rho(x) for self-adjoint x: twice the
/// distance of x to the real multiples of 1.
inline double spread(const FiniteQuantumGroup& g, const cvec& x)
{
    rvec ev = hermitian_eigenvalues(g.rho(x));
    return ev(ev.size() - 1) - ev(0);
}

inline DiameterBracket diameter_bracket(const FiniteQuantumGroup& g, const MKSolver& solver, int samples,
                                        std::uint64_t seed)
{
    DiameterBracket out;
    auto consider = [&](const cvec& mu, const cvec& nu) {
        MKResult r = solver.solve(mu, nu);
        if (r.value > out.lower) {
            out.lower = r.value;
            out.witness = r.optimizer;
        }
    };
    const int d0 = g.rep_dim();
    for (int a = 0; a < d0; ++a)
        for (int b = a + 1; b < d0; ++b)
            consider(basis_vector_state(g, a), basis_vector_state(g, b));
    Rng rng(seed);
    for (int s = 0; s < samples; ++s)
        consider(random_state_on(g, rng, 1), random_state_on(g, rng, 1));

    // Containment: pick n-1 independent members by increasing c; every x with
    // L(x) <= 1 is a combination of the dual basis with coefficients bounded by c.
    const PolyhedralSeminorm& l = solver.seminorm();
    const int n = g.dim;
    std::vector<int> order(static_cast<std::size_t>(l.size()));
    for (int i = 0; i < l.size(); ++i)
        order[static_cast<std::size_t>(i)] = i;
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        return l.constants[static_cast<std::size_t>(a)] < l.constants[static_cast<std::size_t>(b)];
    });
    std::vector<int> chosen;
    cmat rows(0, n);
    for (int i : order) {
        cmat trial(rows.rows() + 2, n);
        trial << rows, l.functionals[static_cast<std::size_t>(i)].transpose(), g.haar.transpose();
        if (rank(trial) == trial.rows()) {
            cmat next(rows.rows() + 1, n);
            next << rows, l.functionals[static_cast<std::size_t>(i)].transpose();
            rows = next;
            chosen.push_back(i);
        }
        if (static_cast<int>(chosen.size()) == n - 1)
            break;
    }
    double contain = std::numeric_limits<double>::infinity();
    if (static_cast<int>(chosen.size()) == n - 1) {
        // x - h(x)1 = sum_k l_k(x) beta_k with l_j(beta_k) = delta_jk, h(beta_k) = 0
        cmat sys(n, n);
        sys << rows, g.haar.transpose();
        cmat inv = sys.inverse();
        contain = 0;
        for (int k = 0; k < n - 1; ++k) {
            cvec beta = inv.col(k);
            const double ck = l.constants[static_cast<std::size_t>(chosen[static_cast<std::size_t>(k)])];
            cvec sa = 0.5 * (beta + g.adjoint(beta));
            cvec sk = cplx(0, -0.5) * (beta - g.adjoint(beta));
            contain += ck * (spread(g, sa) + spread(g, sk));
        }
    }
    out.upper = contain;
    out.method = "containment";
    if (has_diagonal_rep(g)) {
        // commutative and diagonal: pure states are the basis vector states
        out.upper = std::min(out.upper, out.lower);
        out.method = "pure states";
    }
    out.upper = std::max(out.upper, out.lower);
    return out;
}

/// Sampled lower bound max_x norm(mu_n(x) - nu_n(x)) / L(x) for matrix states
/// given as callables x -> n x n matrix.
template <class Element, class Lip, class MatState>
double matrix_mk_lower_bound(const std::vector<Element>& samples, Lip lip, MatState mu_n, MatState nu_n)
{
    double best = 0;
    for (const Element& x : samples) {
        double lx = lip(x);
        if (!(lx > 0))
            continue;
        best = std::max(best, opnorm(cmat(mu_n(x) - nu_n(x))) / lx);
    }
    return best;
}

/// Multi-start projected gradient on unit vectors xi in H_Lambda minimising
/// d^{L_A}(tau* phi_xi, eps). The canonical vector is one start; the best
/// point found is returned. Not certified optimal.
inline SystemState optimized_state(const MKSolver& solver, const FiniteQuantumGroup& g, const TruncatedSystem& t,
                                   const SystemState& canonical, int starts, int steps, std::uint64_t seed)
{
    const int m = t.m();
    auto objective = [&](const cvec& xi, MKResult& res) {
        res = solver.solve(pullback(t, vector_state(xi)), g.counit);
        return res.value;
    };
    Eigen::SelfAdjointEigenSolver<cmat> es(canonical.density);
    cvec start0 = es.eigenvectors().col(m - 1);
    Rng rng(seed);
    cvec best_xi = start0;
    MKResult tmp;
    double best = objective(start0, tmp);
    for (int s = 0; s <= starts; ++s) {
        cvec xi = s == 0 ? start0 : random_unit_vector(rng, m);
        MKResult res;
        double f = objective(xi, res);
        double step = 0.5;
        for (int it = 0; it < steps && step > 1e-8; ++it) {
            // f = |<tau(x*) xi, xi> - eps(x*)|; gradient in xi is 2 sign tau(x*) xi
            cmat tx = hermitian_part(t.tau(res.optimizer));
            double sign = ((xi.adjoint() * tx * xi)(0) - (g.counit.transpose() * res.optimizer)(0)).real() >= 0 ? 1.0 : -1.0;
            cvec grad = 2.0 * sign * (tx * xi);
            grad -= xi * (xi.adjoint() * grad)(0);  // tangent to the sphere
            if (grad.norm() < 1e-14)
                break;
            cvec cand = xi - step * grad / grad.norm();
            cand.normalize();
            MKResult cres;
            double fc = objective(cand, cres);
            if (fc < f) {
                xi = cand;
                f = fc;
                res = cres;
                step *= 1.2;
            } else {
                step *= 0.5;
            }
        }
        if (f < best) {
            best = f;
            best_xi = xi;
        }
    }
    return vector_state(best_xi);
}

} // namespace cqms

#endif
