#ifndef CQMS_LIPNORM_HPP
#define CQMS_LIPNORM_HPP

// Lip-norms. Polyhedral seminorms L(a) = max_i |l_i(a)| / c_i carry every
// exact computation; commutator seminorms a -> norm([D, pi_K(a)]) only give
// brackets for induced values.
//
// Induced Lip-norms: for a right coaction alpha,
//   L^alpha(x) = sup over states psi of L_A((psi (x) id)alpha(x))
//              = max_i w((id (x) l_i)alpha(x)) / c_i,
// since every state of the operator system extends to the matrix algebra
// containing it and the sup of |psi(y)| over those states is w(y).

#include "cqms/compress.hpp"
#include "cqms/numerical_radius.hpp"

#include <functional>
#include <string>
#include <vector>

namespace cqms {

struct LipValueBracket {
    double lower = 0;
    double upper = 0;
    std::string method;
};

struct PolyhedralSeminorm {
    std::vector<cvec> functionals;
    std::vector<double> constants;

    int size() const { return static_cast<int>(functionals.size()); }

    double operator()(const cvec& a) const
    {
        double m = 0;
        for (int i = 0; i < size(); ++i)
            m = std::max(m, std::abs((functionals[static_cast<std::size_t>(i)].transpose() * a)(0)) /
                                constants[static_cast<std::size_t>(i)]);
        return m;
    }

    /// Functionals as columns.
    cmat matrix() const
    {
        cmat f(functionals.empty() ? 0 : functionals[0].size(), size());
        for (int i = 0; i < size(); ++i)
            f.col(i) = functionals[static_cast<std::size_t>(i)];
        return f;
    }
};

struct SeminormReport {
    double vanishes_on_unit = 0;   // max |l_i(1)|
    int kernel_excess = 0;         // dim ker L - 1
    double star_invariance = 0;    // distance of the family from its adjoint family
};

/// l*(a) := conj(l(a*)) must again be a member up to a phase, with the same c.
inline SeminormReport check_seminorm(const FiniteQuantumGroup& g, const PolyhedralSeminorm& l)
{
    SeminormReport r;
    for (const cvec& f : l.functionals)
        r.vanishes_on_unit = std::max(r.vanishes_on_unit, std::abs((f.transpose() * g.unit)(0)));
    r.kernel_excess = static_cast<int>(g.dim - rank(cmat(l.matrix().transpose()))) - 1;
    for (int i = 0; i < l.size(); ++i) {
        cvec adj = (g.star.transpose() * l.functionals[static_cast<std::size_t>(i)]).conjugate();
        double best = std::numeric_limits<double>::infinity();
        for (int j = 0; j < l.size(); ++j) {
            if (std::abs(l.constants[static_cast<std::size_t>(i)] - l.constants[static_cast<std::size_t>(j)]) > 1e-12)
                continue;
            const cvec& f = l.functionals[static_cast<std::size_t>(j)];
            cplx ip = f.dot(adj);
            double fn = f.squaredNorm();
            if (fn == 0.0)
                continue;
            cplx phase = std::abs(ip) > 0 ? ip / std::abs(ip) : cplx(1.0);
            best = std::min(best, max_abs(cvec(adj - phase * f)));
        }
        r.star_invariance = std::max(r.star_invariance, best);
    }
    return r;
}

/// Lipschitz constant for the stored metric on F(G): pairs g < h with
/// functional ev_g - ev_h and constant d(g, h).
inline PolyhedralSeminorm lip_from_metric(const FiniteQuantumGroup& g, std::optional<rmat> metric = std::nullopt)
{
    if (g.family != Family::function_algebra || !g.group)
        fail(Error::Kind::unsupported, "metric Lip-norms need a function algebra F(G)");
    if (!metric)
        metric = g.metric;
    if (!metric)
        fail(Error::Kind::metric, "no metric supplied");
    validate_bi_invariant_metric(*g.group, *metric);
    PolyhedralSeminorm l;
    const int n = g.dim;
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b) {
            l.functionals.push_back(cvec::Unit(n, a) - cvec::Unit(n, b));
            l.constants.push_back((*metric)(a, b));
        }
    return l;
}

/// On C*(G): L(x) = max_{g != e} length(g) |h(lambda_g^* x)|.
inline PolyhedralSeminorm lip_fourier(const FiniteQuantumGroup& g, std::optional<rvec> length = std::nullopt)
{
    if (g.family != Family::group_algebra || !g.group)
        fail(Error::Kind::unsupported, "Fourier Lip-norms need a group algebra C*(G)");
    if (!length)
        length = g.length;
    if (!length)
        fail(Error::Kind::length, "no length function supplied");
    validate_length(*g.group, *length);
    PolyhedralSeminorm l;
    for (int x = 0; x < g.dim; ++x) {
        if (x == g.group->identity())
            continue;
        l.functionals.push_back(cvec::Unit(g.dim, x));
        l.constants.push_back(1.0 / (*length)(x));
    }
    return l;
}

/// The slices (id (x) l_i)alpha(x) (right) or (l_i (x) id)beta(x) (left) as
/// carrier operators.
inline std::vector<cmat> induced_slices(const PolyhedralSeminorm& l, const Coaction& c, const cvec& x)
{
    cmat img = c.image(x);
    std::vector<cmat> out;
    out.reserve(static_cast<std::size_t>(l.size()));
    for (const cvec& f : l.functionals) {
        cvec s = c.side == Side::right ? cvec(img * f) : cvec(img.transpose() * f);
        out.push_back(c.carrier_op(s));
    }
    return out;
}

/// max_i w(M_i) / c_i with cheap bounds pruning members that cannot win.
inline LipValueBracket max_weighted_radius(const std::vector<cmat>& ms, const std::vector<double>& cs, double tol)
{
    const std::size_t k = ms.size();
    std::vector<double> lo(k), hi(k);
    std::vector<bool> exact(k, false);
    for (std::size_t i = 0; i < k; ++i) {
        const cmat& m = ms[i];
        if (m.size() == 0 || max_abs(m) == 0.0) {
            lo[i] = hi[i] = 0;
            exact[i] = true;
            continue;
        }
        if (max_abs(cmat(m - m.adjoint())) <= 1e-13 * max_abs(m)) {
            rvec ev = hermitian_eigenvalues(m);
            lo[i] = hi[i] = std::max(std::abs(ev(0)), std::abs(ev(ev.size() - 1))) / cs[i];
            exact[i] = true;
            continue;
        }
        // M = H + iK: max(norm H, norm K) <= w(M) <= norm H + norm K
        rvec e1 = hermitian_eigenvalues(m);
        rvec e2 = hermitian_eigenvalues(cmat(cplx(0, -1) * m));
        double hn = std::max(std::abs(e1(0)), std::abs(e1(e1.size() - 1)));
        double kn = std::max(std::abs(e2(0)), std::abs(e2(e2.size() - 1)));
        lo[i] = std::max(hn, kn) / cs[i];
        hi[i] = (hn + kn) / cs[i];
        hi[i] = std::max(hi[i], lo[i]);
    }
    double best_lo = 0;
    for (std::size_t i = 0; i < k; ++i)
        best_lo = std::max(best_lo, lo[i]);
    // likeliest winner first, then the rest only need to be ruled out
    std::vector<std::size_t> order(k);
    for (std::size_t i = 0; i < k; ++i)
        order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return lo[a] > lo[b]; });
    double best_hi = best_lo;
    for (std::size_t i : order) {
        if (hi[i] <= best_lo + tol) {
            best_hi = std::max(best_hi, hi[i]);
            continue;
        }
        if (!exact[i]) {
            RadiusBracket b = numerical_radius_bracket(ms[i], tol * cs[i], 200000, (best_lo + tol) * cs[i]);
            lo[i] = b.lower / cs[i];
            hi[i] = b.upper / cs[i];
        }
        best_lo = std::max(best_lo, lo[i]);
        best_hi = std::max(best_hi, hi[i]);
    }
    return {best_lo, std::max(best_lo, best_hi), "numerical radius"};
}

/// L^alpha(x) (right) or L^beta(x) (left) as a certified bracket.
inline LipValueBracket induced_lip_bracket(const PolyhedralSeminorm& l, const Coaction& c, const cvec& x,
                                           double tol = 1e-6)
{
    return max_weighted_radius(induced_slices(l, c, x), l.constants, tol);
}

inline double induced_lip(const PolyhedralSeminorm& l, const Coaction& c, const cvec& x, double tol = 1e-6)
{
    return induced_lip_bracket(l, c, x, tol).lower;
}

/// The bi-invariant Lip-norm max(L^alpha, L^beta).
inline LipValueBracket bi_induced_lip_bracket(const PolyhedralSeminorm& l, const Coaction& alpha,
                                              const Coaction& beta, const cvec& x, double tol = 1e-6)
{
    LipValueBracket a = induced_lip_bracket(l, alpha, x, tol);
    LipValueBracket b = induced_lip_bracket(l, beta, x, tol);
    return {std::max(a.lower, b.lower), std::max(a.upper, b.upper), "numerical radius"};
}

enum class InvarianceSide { right, left, bi };

/// Li's upgrades: right -> L'(a) = max_i w(rho((l_i (x) id)Delta a)) / c_i,
/// left -> L'' with (id (x) l_i)Delta, bi -> the max of the two.
inline std::function<double(const cvec&)> invariant_upgrade(const PolyhedralSeminorm& l,
                                                            const FiniteQuantumGroup& g, InvarianceSide side,
                                                            double tol = 1e-6)
{
    Coaction left = comultiplication(g, Side::left);
    Coaction right = comultiplication(g, Side::right);
    return [l, left, right, side, tol](const cvec& a) {
        double v = 0;
        if (side != InvarianceSide::left)
            v = std::max(v, induced_lip_bracket(l, left, a, tol).upper);
        if (side != InvarianceSide::right)
            v = std::max(v, induced_lip_bracket(l, right, a, tol).upper);
        return v;
    };
}

/// mu(e_i) = tr(D rho(e_i)) for a random density D on H0: a state of A.
inline cvec random_state_on(const FiniteQuantumGroup& g, Rng& rng, int terms)
{
    cmat d = random_density(rng, g.rep_dim(), terms);
    cvec mu(g.dim);
    for (int i = 0; i < g.dim; ++i)
        mu(i) = (d * g.rep[static_cast<std::size_t>(i)]).trace();
    return mu;
}

/// Positive part of L(slice) - L(a) over sampled states and elements, and of
/// the exact test L' - L through the numerical radius.
inline double check_invariance(const PolyhedralSeminorm& l, const FiniteQuantumGroup& g, InvarianceSide side,
                               int samples, std::uint64_t seed, double tol = 1e-6)
{
    Rng rng(seed);
    auto upgrade = invariant_upgrade(l, g, side, tol);
    double worst = 0;
    const int n = g.dim;
    for (int s = 0; s < samples; ++s) {
        cvec a = random_vector(rng, n);
        cvec mu = random_state_on(g, rng, 1 + s % 3);
        cmat t = unflatten(g.comult * a, n, n);
        double la = l(a);
        if (side != InvarianceSide::left)
            worst = std::max(worst, l(cvec(t * mu)) - la);
        if (side != InvarianceSide::right)
            worst = std::max(worst, l(cvec(t.transpose() * mu)) - la);
        worst = std::max(worst, upgrade(a) - la - tol);
    }
    return std::max(0.0, worst);
}

/// Seminorm a -> norm([D, pi_K(a)]) with its own representation.
struct CommutatorSeminorm {
    std::vector<cmat> pi_basis;  // pi_K(e_i)
    cmat dirac;

    double operator()(const cvec& a) const
    {
        cmat p = cmat::Zero(dirac.rows(), dirac.cols());
        for (std::size_t i = 0; i < pi_basis.size(); ++i)
            if (a(static_cast<Eigen::Index>(i)) != 0.0)
                p += a(static_cast<Eigen::Index>(i)) * pi_basis[i];
        return opnorm(cmat(dirac * p - p * dirac));
    }
};

/// Commutator form of the metric Lipschitz constant on F(G): on the sum over
/// pairs g < h of C^2, pi_K(f) = diag(f(g), f(h)) and D = sigma_x / d(g, h).
inline CommutatorSeminorm commutator_from_metric(const FiniteQuantumGroup& g, const rmat& metric)
{
    if (g.family != Family::function_algebra)
        fail(Error::Kind::unsupported, "commutator metric seminorm needs F(G)");
    const int n = g.dim;
    const int pairs = n * (n - 1) / 2;
    CommutatorSeminorm c;
    c.dirac = cmat::Zero(2 * pairs, 2 * pairs);
    c.pi_basis.assign(static_cast<std::size_t>(n), cmat::Zero(2 * pairs, 2 * pairs));
    int p = 0;
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b, ++p) {
            c.dirac(2 * p, 2 * p + 1) = c.dirac(2 * p + 1, 2 * p) = 1.0 / metric(a, b);
            c.pi_basis[static_cast<std::size_t>(a)](2 * p, 2 * p) = 1.0;
            c.pi_basis[static_cast<std::size_t>(b)](2 * p + 1, 2 * p + 1) = 1.0;
        }
    return c;
}

/// On C*(G): D = multiplication by the length on l^2(G), pi_K the left
/// regular representation.
inline CommutatorSeminorm commutator_from_length(const FiniteQuantumGroup& g, const rvec& length)
{
    if (g.family != Family::group_algebra)
        fail(Error::Kind::unsupported, "commutator length seminorm needs C*(G)");
    CommutatorSeminorm c;
    c.dirac = length.cast<cplx>().asDiagonal();
    c.pi_basis = g.rep;
    return c;
}

/// Bracket for the induced value of a commutator seminorm. The lower end
/// maximises over sampled states of the system; the upper end expands
/// alpha(x) = sum_t B'_t (x) a'_t in an orthonormal basis with B'_0 = P/sqrt(m)
/// and uses |psi(B'_t)| <= norm(B'_t), psi(B'_0) = 1/sqrt(m).
inline LipValueBracket induced_lip_bracket(const CommutatorSeminorm& l, const Coaction& c, const cvec& x,
                                           int samples, std::uint64_t seed)
{
    const int r = c.r;
    const Eigen::Index m = c.carrier[0].rows();
    cmat img = c.image(x);
    // rows (right) or columns (left) of img are the A-legs a_s
    auto leg = [&](const cvec& coeffs) -> cvec {
        return c.side == Side::right ? cvec(img.transpose() * coeffs) : cvec(img * coeffs);
    };
    LipValueBracket out;
    out.method = "sampled states / basis expansion";
    Rng rng(seed);
    for (int s = 0; s < samples; ++s) {
        cmat d = s % 2 == 0 ? cmat([&] { cvec v = random_unit_vector(rng, m); return cmat(v * v.adjoint()); }())
                            : random_density(rng, m, 1 + s % 4);
        cvec f(r);
        for (int t = 0; t < r; ++t)
            f(t) = (d * c.carrier[static_cast<std::size_t>(t)]).trace();
        out.lower = std::max(out.lower, l(leg(f)));
    }
    std::vector<cvec> cols{c.unit};
    for (int t = 0; t < r; ++t)
        cols.push_back(cvec::Unit(r, t));
    cmat v = orthonormalize(cols, r);
    // alpha(x) = sum_s B_s (x) a_s = sum_t B'_t (x) a'_t, B'_t = sum_s V_st B_s, a'_t = sum_s conj(V_st) a_s
    double upper = 0;
    for (Eigen::Index t = 0; t < v.cols(); ++t) {
        cvec at = leg(cvec(v.col(t).conjugate()));
        double la = l(at);
        if (t == 0) {
            upper += la / std::sqrt(double(m));
        } else {
            cmat bt = cmat::Zero(m, m);
            for (int s = 0; s < r; ++s)
                bt += v(s, t) * c.carrier[static_cast<std::size_t>(s)];
            upper += opnorm(bt) * la;
        }
    }
    out.upper = std::max(upper, out.lower);
    return out;
}

/// Group-case seminorms on a truncation of F(G): translations compressed to
/// H_Lambda, norm(U_g x U_g^* - x) / d(g, e) maximised over g != e.
struct GroupCaseValues {
    double lambda = 0;
    double rho = 0;
    double both = 0;
};

struct GroupCaseData {
    std::vector<cmat> left;   // compressed left translations, g != e
    std::vector<cmat> right;  // compressed right translations
    std::vector<double> dist; // d(g, e)
    double commutator_residual = 0;  // max norm([U_g, P]) before compression
};

inline GroupCaseData group_case_data(const FiniteQuantumGroup& g, const GNSSpace& gns, const TruncatedSystem& t)
{
    if (g.family != Family::function_algebra || !g.group || !g.metric)
        fail(Error::Kind::unsupported, "group-case seminorms need F(G) with a metric");
    const FiniteGroup& grp = *g.group;
    const int n = g.dim;
    GroupCaseData out;
    cmat p = t.range * t.range.adjoint();
    for (int x = 0; x < n; ++x) {
        if (x == grp.identity())
            continue;
        // (lambda_x f)(y) = f(x^-1 y): delta_y -> delta_{xy}; (rho_x f)(y) = f(yx): delta_y -> delta_{y x^-1}
        cmat lx = cmat::Zero(n, n), rx = cmat::Zero(n, n);
        for (int y = 0; y < n; ++y) {
            lx(grp.mul(x, y), y) = 1.0;
            rx(grp.mul(y, grp.inv(x)), y) = 1.0;
        }
        cmat lo = gns.onb * lx * gns.onb_inv, ro = gns.onb * rx * gns.onb_inv;
        out.commutator_residual = std::max(
            {out.commutator_residual, max_abs(cmat(lo * p - p * lo)), max_abs(cmat(ro * p - p * ro))});
        out.left.push_back(t.range.adjoint() * lo * t.range);
        out.right.push_back(t.range.adjoint() * ro * t.range);
        out.dist.push_back((*g.metric)(x, grp.identity()));
    }
    return out;
}

inline GroupCaseValues group_case_seminorms(const GroupCaseData& d, const cmat& x)
{
    GroupCaseValues v;
    for (std::size_t i = 0; i < d.dist.size(); ++i) {
        v.lambda = std::max(v.lambda, opnorm(cmat(d.left[i] * x * d.left[i].adjoint() - x)) / d.dist[i]);
        v.rho = std::max(v.rho, opnorm(cmat(d.right[i] * x * d.right[i].adjoint() - x)) / d.dist[i]);
    }
    v.both = std::max(v.lambda, v.rho);
    return v;
}

} // namespace cqms

#endif
