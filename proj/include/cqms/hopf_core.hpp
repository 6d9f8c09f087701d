#ifndef CQMS_HOPF_CORE_HPP
#define CQMS_HOPF_CORE_HPP

// Finite-dimensional Hopf *-algebras stored as structure tensors over a fixed
// basis e_0..e_{n-1}, plus the two stock families F(G) and C*(G).
//
// Storage:
//   mult     n x n^2, column i*n+j holds the coefficients of e_i e_j
//   comult   n^2 x n, column i holds Delta(e_i) in the basis e_j (x) e_k
//   star     a* has coefficients star * conj(a)
//   rep      rho(e_i), all of size d0 x d0
//   counit, haar: functionals, mu(a) = sum_i coeffs_i a_i

#include "cqms/error.hpp"
#include "cqms/groups.hpp"
#include "cqms/linalg.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace cqms {

enum class Family { function_algebra, group_algebra, custom };

struct FiniteQuantumGroup {
    int dim = 0;
    cmat mult;
    cvec unit;
    cmat star;
    cmat comult;
    cvec counit;
    cmat antipode;
    std::vector<cmat> rep;
    cvec haar;

    Family family = Family::custom;
    std::optional<FiniteGroup> group;
    std::optional<rmat> metric;  // F(G)
    std::optional<rvec> length;  // C*(G)

    int rep_dim() const { return rep.empty() ? 0 : static_cast<int>(rep[0].rows()); }

    /// Left multiplication by e_i; column j is e_i e_j.
    auto left_basis(int i) const { return mult.middleCols(static_cast<Eigen::Index>(i) * dim, dim); }

    cmat left_mult(const cvec& a) const
    {
        cmat out = cmat::Zero(dim, dim);
        for (int i = 0; i < dim; ++i)
            if (a(i) != 0.0)
                out += a(i) * left_basis(i);
        return out;
    }

    cvec product(const cvec& a, const cvec& b) const { return left_mult(a) * b; }
    cvec adjoint(const cvec& a) const { return star * a.conjugate(); }
    cvec basis(int i) const { return cvec::Unit(dim, i); }

    cmat rho(const cvec& a) const
    {
        cmat out = cmat::Zero(rep_dim(), rep_dim());
        for (int i = 0; i < dim; ++i)
            if (a(i) != 0.0)
                out += a(i) * rep[i];
        return out;
    }

    double norm(const cvec& a) const { return opnorm(rho(a)); }

    cvec delta(const cvec& a) const { return comult * a; }

    /// Product in A (x) A of coefficient matrices X, Y (n x n): sum_jk X_jk L_j Y L_k^T.
    cmat tensor_product(const cmat& x, const cmat& y) const
    {
        cmat out = cmat::Zero(dim, dim);
        for (int j = 0; j < dim; ++j) {
            if (x.row(j).cwiseAbs().maxCoeff() == 0.0)
                continue;
            cmat m = left_mult(x.row(j).transpose());
            out += left_basis(j) * y * m.transpose();
        }
        return out;
    }

    /// (rho (x) rho)(t) for a coefficient matrix t.
    cmat rho2(const cmat& t) const
    {
        const int d = rep_dim();
        cmat out = cmat::Zero(d * d, d * d);
        for (int j = 0; j < dim; ++j)
            for (int k = 0; k < dim; ++k)
                if (t(j, k) != 0.0)
                    out += t(j, k) * kron(rep[j], rep[k]);
        return out;
    }
};

struct Functional {
    cvec coeffs;

    cplx operator()(const cvec& a) const { return (coeffs.transpose() * a)(0); }
};

/// A functional certified positive and unital. Only certify_state creates one.
class State : public Functional {
public:
    /// Smallest eigenvalue of the matrix mu(e_i* e_j), the positivity witness.
    double min_eigenvalue() const { return min_eigenvalue_; }

    friend State certify_state(const FiniteQuantumGroup& g, const cvec& coeffs, double tol);

private:
    State(cvec c, double m) : Functional{std::move(c)}, min_eigenvalue_(m) {}
    double min_eigenvalue_ = 0;
};

/// Matrix M_ij = mu(e_i* e_j); mu is positive iff M is PSD.
inline cmat positivity_matrix(const FiniteQuantumGroup& g, const cvec& mu)
{
    cmat m(g.dim, g.dim);
    for (int i = 0; i < g.dim; ++i)
        m.row(i) = mu.transpose() * g.left_mult(g.star.col(i));
    return m;
}

inline State certify_state(const FiniteQuantumGroup& g, const cvec& coeffs, double tol = 1e-9)
{
    if (coeffs.size() != g.dim)
        fail(Error::Kind::structural, "functional has length " + std::to_string(coeffs.size()));
    const cplx at_one = (coeffs.transpose() * g.unit)(0);
    if (std::abs(at_one - 1.0) > tol)
        fail(Error::Kind::state_certification, "mu(1) = " + std::to_string(at_one.real()) + "+" +
                                                   std::to_string(at_one.imag()) + "i");
    cmat m = positivity_matrix(g, coeffs);
    if (!is_hermitian(m, tol * std::max(1.0, max_abs(m))))
        fail(Error::Kind::state_certification, "functional is not hermitian");
    Eigen::SelfAdjointEigenSolver<cmat> es(hermitian_part(m));
    const double lo = es.eigenvalues()(0);
    if (lo < -tol) {
        std::ostringstream os;
        os << "mu(a* a) = " << lo << " < 0 at a = " << es.eigenvectors().col(0).transpose();
        fail(Error::Kind::state_certification, os.str());
    }
    return State(coeffs, lo);
}

struct AxiomReport {
    std::vector<std::pair<std::string, double>> residuals;

    double max_residual() const
    {
        double m = 0;
        for (const auto& r : residuals)
            m = std::max(m, r.second);
        return m;
    }

    bool passes(double tol) const { return max_residual() < tol; }

    double operator[](const std::string& name) const
    {
        for (const auto& r : residuals)
            if (r.first == name)
                return r.second;
        fail(Error::Kind::internal_inconsistency, "no residual named " + name);
    }
};

inline void check_shapes(const FiniteQuantumGroup& g)
{
    const Eigen::Index n = g.dim;
    auto need = [](bool ok, const std::string& what) {
        if (!ok)
            fail(Error::Kind::structural, what);
    };
    need(n > 0, "dim must be positive");
    need(g.mult.rows() == n && g.mult.cols() == n * n, "mult must be n x n x n");
    need(g.unit.size() == n, "unit must have length n");
    need(g.star.rows() == n && g.star.cols() == n, "star must be n x n");
    need(g.comult.rows() == n * n && g.comult.cols() == n, "comult must be n x n^2");
    need(g.counit.size() == n, "counit must have length n");
    need(g.antipode.rows() == n && g.antipode.cols() == n, "antipode must be n x n");
    need(static_cast<Eigen::Index>(g.rep.size()) == n, "rep must list n matrices");
    for (const cmat& r : g.rep)
        need(r.rows() == g.rep_dim() && r.cols() == g.rep_dim() && r.rows() > 0,
             "rep matrices must be square of a common size");
}

/// Stacked invariance equations (id (x) h)Delta(e_i) = h(e_i)1 and the
/// mirrored ones; the Haar functional spans their kernel.
inline cmat haar_system(const FiniteQuantumGroup& g)
{
    const int n = g.dim;
    cmat sys(2 * n * n, n);
    for (int i = 0; i < n; ++i) {
        cmat t = unflatten(g.comult.col(i), n, n);
        cmat unit_row = g.unit * cvec::Unit(n, i).transpose();
        sys.block(2 * i * n, 0, n, n) = t - unit_row;
        sys.block((2 * i + 1) * n, 0, n, n) = t.transpose() - unit_row;
    }
    return sys;
}

/// Solves the invariance system; throws unless the solution space is a line.
inline cvec solve_haar(const FiniteQuantumGroup& g)
{
    cmat ker = nullspace(haar_system(g));
    if (ker.cols() != 1)
        fail(Error::Kind::not_a_quantum_group,
             "invariant functionals form a space of dimension " + std::to_string(ker.cols()));
    cvec h = ker.col(0);
    const cplx at_one = (h.transpose() * g.unit)(0);
    if (std::abs(at_one) < 1e-12)
        fail(Error::Kind::not_a_quantum_group, "invariant functional vanishes on the unit");
    return h / at_one;
}

inline AxiomReport check_axioms(const FiniteQuantumGroup& g)
{
    check_shapes(g);
    const int n = g.dim;
    AxiomReport rep;
    auto add = [&](const char* name, double v) { rep.residuals.emplace_back(name, v); };

    double r_unit = 0, r_assoc = 0;
    for (int i = 0; i < n; ++i) {
        r_unit = std::max(r_unit, max_abs(cvec(g.product(g.unit, g.basis(i)) - g.basis(i))));
        r_unit = std::max(r_unit, max_abs(cvec(g.product(g.basis(i), g.unit) - g.basis(i))));
    }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            cmat lhs = g.left_mult(g.mult.col(i * n + j));
            cmat rhs = g.left_basis(i) * g.left_basis(j);
            r_assoc = std::max(r_assoc, max_abs(cmat(lhs - rhs)));
        }
    add("unit", r_unit);
    add("associativity", r_assoc);

    double r_inv = max_abs(cmat(g.star * g.star.conjugate() - identity(n)));
    double r_anti = 0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            cvec lhs = g.adjoint(g.mult.col(i * n + j));
            cvec rhs = g.product(g.star.col(j), g.star.col(i));
            r_anti = std::max(r_anti, max_abs(cvec(lhs - rhs)));
        }
    add("star_involution", r_inv);
    add("star_antimultiplicative", r_anti);

    double r_coassoc = 0, r_counit_l = 0, r_counit_r = 0, r_dmult = 0, r_dstar = 0;
    const cmat star2 = kron(g.star, g.star);
    std::vector<cmat> d(n);
    for (int i = 0; i < n; ++i)
        d[i] = unflatten(g.comult.col(i), n, n);
    for (int i = 0; i < n; ++i) {
        const cmat& t = d[i];
        cvec lhs(n * n * n), rhs(n * n * n);
        for (int k = 0; k < n; ++k) {
            cvec part = g.comult * t.col(k);
            for (int pq = 0; pq < n * n; ++pq)
                lhs(pq * n + k) = part(pq);
        }
        for (int j = 0; j < n; ++j)
            rhs.segment(j * n * n, n * n) = g.comult * t.row(j).transpose();
        r_coassoc = std::max(r_coassoc, max_abs(cvec(lhs - rhs)));
        r_counit_l = std::max(r_counit_l, max_abs(cvec(t.transpose() * g.counit - g.basis(i))));
        r_counit_r = std::max(r_counit_r, max_abs(cvec(t * g.counit - g.basis(i))));
        cvec dstar = g.comult * g.star.col(i);
        r_dstar = std::max(r_dstar, max_abs(cvec(dstar - star2 * g.comult.col(i).conjugate())));
    }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            cmat lhs = unflatten(g.comult * g.mult.col(i * n + j), n, n);
            r_dmult = std::max(r_dmult, max_abs(cmat(lhs - g.tensor_product(d[i], d[j]))));
        }
    add("coassociativity", r_coassoc);
    add("counit_left", r_counit_l);
    add("counit_right", r_counit_r);
    add("comult_unital", max_abs(cvec(g.comult * g.unit - kron(g.unit, g.unit))));
    add("comult_multiplicative", r_dmult);
    add("comult_star", r_dstar);

    double r_char = std::abs((g.counit.transpose() * g.unit)(0) - 1.0);
    for (int i = 0; i < n; ++i) {
        r_char = std::max(r_char, std::abs((g.counit.transpose() * g.star.col(i))(0) - std::conj(g.counit(i))));
        for (int j = 0; j < n; ++j)
            r_char = std::max(r_char, std::abs((g.counit.transpose() * g.mult.col(i * n + j))(0) -
                                               g.counit(i) * g.counit(j)));
    }
    add("counit_character", r_char);

    // m(S (x) id)Delta(a) = eps(a)1 = m(id (x) S)Delta(a)
    double r_sl = 0, r_sr = 0;
    for (int i = 0; i < n; ++i) {
        const cmat& t = d[i];
        cvec left = cvec::Zero(n), right = cvec::Zero(n);
        for (int k = 0; k < n; ++k) {
            left += g.left_mult(g.antipode * t.col(k)).col(k);
            right += g.left_basis(k) * (g.antipode * t.row(k).transpose());
        }
        r_sl = std::max(r_sl, max_abs(cvec(left - g.counit(i) * g.unit)));
        r_sr = std::max(r_sr, max_abs(cvec(right - g.counit(i) * g.unit)));
    }
    add("antipode_left", r_sl);
    add("antipode_right", r_sr);

    // Podles spans (A (x) 1)Delta(A) and (1 (x) A)Delta(A): rank deficit
    cmat span_l(n * n, n * n), span_r(n * n, n * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            span_l.col(i * n + j) = flatten(g.left_basis(i) * d[j]);
            span_r.col(i * n + j) = flatten(d[j] * g.left_basis(i).transpose());
        }
    add("podles_left", double(n * n - rank(span_l)));
    add("podles_right", double(n * n - rank(span_r)));

    double r_runit = max_abs(cmat(g.rho(g.unit) - identity(g.rep_dim())));
    double r_rmult = 0, r_rstar = 0;
    cmat vecs(g.rep_dim() * g.rep_dim(), n);
    for (int i = 0; i < n; ++i) {
        r_rstar = std::max(r_rstar, max_abs(cmat(g.rho(g.star.col(i)) - g.rep[i].adjoint())));
        for (int j = 0; j < n; ++j)
            r_rmult = std::max(r_rmult, max_abs(cmat(g.rho(g.mult.col(i * n + j)) - g.rep[i] * g.rep[j])));
        vecs.col(i) = flatten(g.rep[i]);
    }
    add("rep_unital", r_runit);
    add("rep_multiplicative", r_rmult);
    add("rep_star", r_rstar);
    add("rep_faithful", double(n - rank(vecs)));

    // Haar: unique invariant functional with a positive definite Gram matrix.
    cmat ker = nullspace(haar_system(g));
    add("haar_uniqueness", std::abs(double(ker.cols()) - 1.0));
    double r_faith = 1.0;
    if (ker.cols() == 1) {
        const cplx at_one = (ker.col(0).transpose() * g.unit)(0);
        if (std::abs(at_one) > 1e-12) {
            cmat gram = positivity_matrix(g, ker.col(0) / at_one);
            rvec ev = hermitian_eigenvalues(gram);
            double herm = max_abs(cmat(gram - gram.adjoint()));
            r_faith = herm + (ev(0) > rank_rtol * std::max(1.0, ev(n - 1)) ? 0.0 : 1.0);
        }
    }
    add("haar_faithful", r_faith);
    return rep;
}

/// Returns the certified Haar state; throws not_a_quantum_group when the
/// invariant functional is not unique.
inline State haar_state(const FiniteQuantumGroup& g, double tol = 1e-9)
{
    return certify_state(g, g.haar.size() == g.dim ? g.haar : solve_haar(g), tol);
}

inline State counit_state(const FiniteQuantumGroup& g, double tol = 1e-9)
{
    return certify_state(g, g.counit, tol);
}

/// (mu * nu)(a) = (mu (x) nu)Delta(a).
inline Functional convolve(const Functional& mu, const Functional& nu, const FiniteQuantumGroup& g)
{
    return Functional{g.comult.transpose() * kron(mu.coeffs, nu.coeffs)};
}

enum class Side { left, right };

/// (phi (x) id)t for side left, (id (x) phi)t for side right; t is the
/// coefficient matrix of an element of V (x) W.
inline cvec slice(Side side, const Functional& phi, const cmat& t)
{
    return side == Side::left ? cvec(t.transpose() * phi.coeffs) : cvec(t * phi.coeffs);
}

/// The projection p with a p = eps(a) p, normalised so eps(p) = 1.
inline cvec counit_support_projection(const FiniteQuantumGroup& g, double tol = 1e-9)
{
    const int n = g.dim;
    cmat sys(n * n, n);
    for (int i = 0; i < n; ++i)
        sys.block(i * n, 0, n, n) = g.left_basis(i) - g.counit(i) * identity(n);
    cmat ker = nullspace(sys);
    if (ker.cols() != 1)
        fail(Error::Kind::internal_inconsistency,
             "counit support has dimension " + std::to_string(ker.cols()) + ", expected 1");
    const cplx e = (g.counit.transpose() * ker.col(0))(0);
    if (std::abs(e) < 1e-12)
        fail(Error::Kind::internal_inconsistency, "counit vanishes on its support vector");
    cvec p = ker.col(0) / e;
    if (max_abs(cvec(g.adjoint(p) - p)) > tol || max_abs(cvec(g.product(p, p) - p)) > tol)
        fail(Error::Kind::internal_inconsistency, "counit support vector is not a projection");
    return p;
}

/// Fills in the Haar functional after validating shapes.
inline FiniteQuantumGroup finalize(FiniteQuantumGroup g)
{
    check_shapes(g);
    g.haar = solve_haar(g);
    return g;
}

/// F(G) in the basis of point masses delta_g.
inline FiniteQuantumGroup function_algebra(const CayleyTable& table, std::optional<rmat> metric = std::nullopt)
{
    FiniteGroup grp(table);
    const int n = grp.order();
    if (metric)
        validate_bi_invariant_metric(grp, *metric);
    FiniteQuantumGroup g;
    g.dim = n;
    g.mult = cmat::Zero(n, n * n);
    g.comult = cmat::Zero(n * n, n);
    g.antipode = cmat::Zero(n, n);
    for (int x = 0; x < n; ++x) {
        g.mult(x, x * n + x) = 1.0;
        g.antipode(grp.inv(x), x) = 1.0;
        for (int y = 0; y < n; ++y)
            g.comult(x * n + y, grp.mul(x, y)) = 1.0;
        cmat r = cmat::Zero(n, n);
        r(x, x) = 1.0;
        g.rep.push_back(r);
    }
    g.unit = cvec::Ones(n);
    g.star = identity(n);
    g.counit = cvec::Unit(n, grp.identity());
    g.haar = cvec::Constant(n, 1.0 / n);
    g.family = Family::function_algebra;
    g.group = std::move(grp);
    g.metric = std::move(metric);
    return g;
}

/// C*(G) in the basis lambda_g, represented by the left regular representation.
inline FiniteQuantumGroup group_algebra(const CayleyTable& table, std::optional<rvec> length = std::nullopt)
{
    FiniteGroup grp(table);
    const int n = grp.order();
    if (length)
        validate_length(grp, *length);
    FiniteQuantumGroup g;
    g.dim = n;
    g.mult = cmat::Zero(n, n * n);
    g.comult = cmat::Zero(n * n, n);
    g.star = cmat::Zero(n, n);
    for (int x = 0; x < n; ++x) {
        g.star(grp.inv(x), x) = 1.0;
        g.comult(x * n + x, x) = 1.0;
        for (int y = 0; y < n; ++y)
            g.mult(grp.mul(x, y), x * n + y) = 1.0;
        g.rep.push_back(grp.left_regular(x));
    }
    g.antipode = g.star;
    g.unit = cvec::Unit(n, grp.identity());
    g.counit = cvec::Ones(n);
    g.haar = cvec::Unit(n, grp.identity());
    g.family = Family::group_algebra;
    g.group = std::move(grp);
    g.length = std::move(length);
    return g;
}

} // namespace cqms

#endif
