#ifndef CQMS_COMPRESS_HPP
#define CQMS_COMPRESS_HPP

// Peter-Weyl truncations: the compression tau(a) = P pi(a) P on H_Lambda, the
// operator system A^(Lambda) = tau(A) with a Hilbert-Schmidt orthonormal
// basis, induced coactions, symbol maps, conditional expectations and the
// pullback of states.
//
// Elements of A^(Lambda) are coordinate vectors x (length r) in the system
// basis B_0..B_{r-1}. Coaction matrices use the tensor flattening of
// linalg.hpp: a right coaction lands in X (x) A with index s*n + k, a left one
// in A (x) X with index k*r + s.

#include "cqms/corep_pw.hpp"

#include <string>
#include <vector>

namespace cqms {

struct TruncatedSystem {
    std::vector<int> subset;
    cmat range;                  // Q: n x m, orthonormal basis of H_Lambda in GNS coordinates
    std::vector<cmat> tau_basis; // tau(e_i), m x m
    std::vector<cmat> sys_basis; // B_s, HS-orthonormal, m x m
    cmat tsys;                   // r x n, coordinates of tau(e_i)
    cmat lift;                   // n x r, Moore-Penrose right inverse in GNS geometry
    cvec unit;                   // coordinates of P
    int n = 0;

    int m() const { return static_cast<int>(range.cols()); }
    int dim_sys() const { return static_cast<int>(tsys.rows()); }

    cmat tau(const cvec& a) const
    {
        cmat out = cmat::Zero(m(), m());
        for (int i = 0; i < n; ++i)
            if (a(i) != 0.0)
                out += a(i) * tau_basis[static_cast<std::size_t>(i)];
        return out;
    }

    cvec tau_coords(const cvec& a) const { return tsys * a; }

    cmat to_matrix(const cvec& x) const
    {
        cmat out = cmat::Zero(m(), m());
        for (int s = 0; s < dim_sys(); ++s)
            out += x(s) * sys_basis[static_cast<std::size_t>(s)];
        return out;
    }

    cvec to_coords(const cmat& mtx) const
    {
        cvec x(dim_sys());
        for (int s = 0; s < dim_sys(); ++s)
            x(s) = (sys_basis[static_cast<std::size_t>(s)].adjoint() * mtx).trace();
        return x;
    }

    /// Coordinates of x*: the system is self-adjoint.
    cvec adjoint(const cvec& x) const { return to_coords(to_matrix(x).adjoint()); }
};

inline TruncatedSystem truncate(const FiniteQuantumGroup& g, const GNSSpace& gns, const PWDecomposition& pw,
                                const std::vector<int>& subset)
{
    TruncatedSystem t;
    t.subset = subset;
    t.n = g.dim;
    t.range = pw.range(subset);
    const int n = g.dim, m = t.m();
    cmat big(m * m, n);
    for (int i = 0; i < n; ++i) {
        t.tau_basis.push_back(t.range.adjoint() * gns.basis_ops[static_cast<std::size_t>(i)] * t.range);
        big.col(i) = flatten(t.tau_basis.back());
    }
    cmat tilde = big * gns.onb_inv;
    SvdInfo svd = svd_rank(tilde);
    const Eigen::Index r = svd.rank;
    cmat ur = svd.u.leftCols(r);
    for (Eigen::Index s = 0; s < r; ++s)
        t.sys_basis.push_back(unflatten(ur.col(s), m, m));
    t.tsys = ur.adjoint() * big;
    cmat vr = svd.v.leftCols(r);
    rvec inv_s = svd.singular_values.head(r).cwiseInverse();
    t.lift = gns.onb_inv * vr * inv_s.asDiagonal();
    t.unit = t.tsys * g.unit;
    return t;
}

/// A coaction of A on a finite-dimensional operator system X with carrier
/// operators (for norms) and unit coordinates.
struct Coaction {
    Side side = Side::right;
    int r = 0;
    int n = 0;
    cmat map;
    cvec unit;
    std::vector<cmat> carrier;

    /// Coefficient matrix of alpha(x): r x n for right, n x r for left.
    cmat image(const cvec& x) const
    {
        cvec v = map * x;
        return side == Side::right ? unflatten(v, r, n) : unflatten(v, n, r);
    }

    cmat carrier_op(const cvec& x) const
    {
        cmat out = cmat::Zero(carrier[0].rows(), carrier[0].cols());
        for (int s = 0; s < r; ++s)
            if (x(s) != 0.0)
                out += x(s) * carrier[static_cast<std::size_t>(s)];
        return out;
    }
};

/// Operator of an element of X (x) A (right) or A (x) X (left) acting on the
/// carrier space tensored with H0.
inline cmat tensor_operator(const Coaction& c, const FiniteQuantumGroup& g, const cmat& coeffs)
{
    const Eigen::Index cd = c.carrier[0].rows(), d0 = g.rep_dim();
    cmat out = cmat::Zero(cd * d0, cd * d0);
    for (int s = 0; s < c.r; ++s)
        for (int k = 0; k < c.n; ++k) {
            cplx v = c.side == Side::right ? coeffs(s, k) : coeffs(k, s);
            if (v == 0.0)
                continue;
            out += c.side == Side::right ? cmat(v * kron(c.carrier[static_cast<std::size_t>(s)], g.rep[k]))
                                         : cmat(v * kron(g.rep[k], c.carrier[static_cast<std::size_t>(s)]));
        }
    return out;
}

/// Delta as a right or left coaction of A on itself.
inline Coaction comultiplication(const FiniteQuantumGroup& g, Side side)
{
    return {side, g.dim, g.dim, g.comult, g.unit, g.rep};
}

/// alpha(tau a) = (tau (x) id)Delta(a), beta(tau a) = (id (x) tau)Delta(a).
inline Coaction induced_coaction(const FiniteQuantumGroup& g, const TruncatedSystem& t, Side side)
{
    const int n = g.dim;
    cmat reduce = side == Side::right ? kron(t.tsys, identity(n)) : kron(identity(n), t.tsys);
    return {side, t.dim_sys(), n, reduce * g.comult * t.lift, t.unit, t.sys_basis};
}

struct CoactionReport {
    double well_defined = 0;
    double coaction_property = 0;
    double counit_property = 0;
    int podles_deficit = 0;
    int fixed_point_dim = 0;
};

inline CoactionReport check_coaction(const FiniteQuantumGroup& g, const TruncatedSystem& t, const Coaction& c)
{
    const int n = g.dim, r = c.r;
    CoactionReport rep;
    cmat reduce = c.side == Side::right ? kron(t.tsys, identity(n)) : kron(identity(n), t.tsys);
    cmat kernel_proj = identity(n) - t.lift * t.tsys;
    rep.well_defined = max_abs(cmat(reduce * g.comult * kernel_proj));
    if (c.side == Side::right) {
        rep.coaction_property = max_abs(cmat(kron(c.map, identity(n)) * c.map - kron(identity(r), g.comult) * c.map));
        rep.counit_property = max_abs(cmat(kron(identity(r), cmat(g.counit.transpose())) * c.map - identity(r)));
    } else {
        rep.coaction_property = max_abs(cmat(kron(identity(n), c.map) * c.map - kron(g.comult, identity(r)) * c.map));
        rep.counit_property = max_abs(cmat(kron(cmat(g.counit.transpose()), identity(r)) * c.map - identity(r)));
    }
    // alpha(X)(1 (x) A) resp. (A (x) 1)beta(X) must span the full tensor product.
    cmat span(r * n, r * n);
    for (int i = 0; i < n; ++i) {
        cmat op;
        if (c.side == Side::right) {
            cmat right_i(n, n);
            for (int k = 0; k < n; ++k)
                right_i.col(k) = g.mult.col(k * n + i);
            op = kron(identity(r), right_i) * c.map;
        } else {
            op = kron(cmat(g.left_basis(i)), identity(r)) * c.map;
        }
        span.middleCols(i * r, r) = op;
    }
    rep.podles_deficit = static_cast<int>(r * n - rank(span));
    cmat fixed = c.side == Side::right ? cmat(c.map - kron(identity(r), cmat(g.unit)))
                                       : cmat(c.map - kron(cmat(g.unit), identity(r)));
    rep.fixed_point_dim = static_cast<int>(nullspace(fixed, rank_rtol, opnorm(c.map)).cols());
    return rep;
}

/// (beta (x) id)alpha - (id (x) alpha)beta.
inline double cocommutation_residual(const Coaction& alpha, const Coaction& beta)
{
    const int n = alpha.n;
    return max_abs(cmat(kron(beta.map, identity(n)) * alpha.map - kron(identity(n), alpha.map) * beta.map));
}

/// Largest |norm((tau (x) id)Delta a) - norm(tau a)| over `samples` random a,
/// plus one 2 x 2 amplification, relative to max(1, norm(tau a)).
inline double isometry_witness(const FiniteQuantumGroup& g, const TruncatedSystem& t, const Coaction& alpha,
                               int samples, std::uint64_t seed)
{
    Rng rng(seed);
    double worst = 0;
    for (int s = 0; s < samples; ++s) {
        cvec a = random_vector(rng, g.dim);
        double lhs = opnorm(tensor_operator(alpha, g, alpha.image(t.tau_coords(a))));
        double rhs = opnorm(t.tau(a));
        worst = std::max(worst, std::abs(lhs - rhs) / std::max(1.0, rhs));
    }
    // 2 x 2 matrix over A
    const Eigen::Index m = t.m();
    const Eigen::Index big = alpha.carrier[0].rows() * g.rep_dim();
    cmat lhs(2 * big, 2 * big), rhs(2 * m, 2 * m);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            cvec a = random_vector(rng, g.dim);
            lhs.block(i * big, j * big, big, big) = tensor_operator(alpha, g, alpha.image(t.tau_coords(a)));
            rhs.block(i * m, j * m, m, m) = t.tau(a);
        }
    double nr = opnorm(rhs);
    worst = std::max(worst, std::abs(opnorm(lhs) - nr) / std::max(1.0, nr));
    return worst;
}

/// A state on A^(Lambda), represented by a density matrix on H_Lambda.
struct SystemState {
    cmat density;

    /// phi(B_s) for every basis element.
    cvec on_basis(const TruncatedSystem& t) const
    {
        cvec f(t.dim_sys());
        for (int s = 0; s < t.dim_sys(); ++s)
            f(s) = (density * t.sys_basis[static_cast<std::size_t>(s)]).trace();
        return f;
    }
};

/// Certifies D >= 0 and tr D = 1; throws with the violating vector otherwise.
inline SystemState certify_system_state(const cmat& density, double tol = 1e-9)
{
    if (density.rows() != density.cols() || density.rows() == 0)
        fail(Error::Kind::structural, "density must be a nonempty square matrix");
    if (!is_hermitian(density, tol))
        fail(Error::Kind::state_certification, "density is not hermitian");
    if (std::abs(density.trace() - 1.0) > tol)
        fail(Error::Kind::state_certification, "density has trace " + std::to_string(density.trace().real()));
    Eigen::SelfAdjointEigenSolver<cmat> es(hermitian_part(density));
    if (es.eigenvalues()(0) < -tol) {
        std::ostringstream os;
        os << "<D v, v> = " << es.eigenvalues()(0) << " at v = " << es.eigenvectors().col(0).transpose();
        fail(Error::Kind::state_certification, os.str());
    }
    return {hermitian_part(density)};
}

inline SystemState vector_state(const cvec& xi)
{
    double nrm = xi.norm();
    if (nrm == 0.0)
        fail(Error::Kind::state_certification, "zero vector");
    cvec u = xi / nrm;
    return {u * u.adjoint()};
}

/// Vector state at the normalised compression of Lambda(p_eps).
inline SystemState canonical_state(const FiniteQuantumGroup& g, const GNSSpace& gns, const TruncatedSystem& t)
{
    cvec xi = t.range.adjoint() * gns.lambda(counit_support_projection(g));
    if (xi.norm() < 1e-14)
        fail(Error::Kind::internal_inconsistency, "counit support vector is orthogonal to H_Lambda");
    return vector_state(xi);
}

/// tau* phi as a functional on A: (tau* phi)(e_i) = tr(D tau(e_i)).
inline cvec pullback(const TruncatedSystem& t, const SystemState& phi)
{
    cvec f(t.n);
    for (int i = 0; i < t.n; ++i)
        f(i) = (phi.density * t.tau_basis[static_cast<std::size_t>(i)]).trace();
    return f;
}

/// The symbol map sigma(x) = (phi (x) id)alpha(x) as an n x r matrix.
inline cmat symbol(const TruncatedSystem& t, const Coaction& alpha, const SystemState& phi)
{
    if (alpha.side != Side::right)
        fail(Error::Kind::config, "symbol maps use the right coaction");
    cvec f = phi.on_basis(t);
    return kron(cmat(f.transpose()), identity(alpha.n)) * alpha.map;
}

struct SymbolReport {
    double unital = 0;
    double down_up = 0;  // sigma tau(a) = (tau*phi (x) id)Delta(a)
    double up_down = 0;  // tau sigma(x) = (tau*phi (x) id)(id (x) tau)Delta(lift x)
};

inline SymbolReport check_symbol(const FiniteQuantumGroup& g, const TruncatedSystem& t, const cmat& sigma,
                                 const SystemState& phi)
{
    SymbolReport r;
    cvec mu = pullback(t, phi);
    cmat conv = kron(cmat(mu.transpose()), identity(g.dim)) * g.comult;
    r.unital = max_abs(cvec(sigma * t.unit - g.unit));
    r.down_up = max_abs(cmat(sigma * t.tsys - conv));
    r.up_down = max_abs(cmat(t.tsys * sigma - t.tsys * conv * t.lift));
    return r;
}

struct ConditionalExpectation {
    cmat map;     // r x r
    cvec state;   // h_X as coefficients on coordinates, valid when ergodic
    double ergodic_residual = 0;  // |E - 1 h_X|
};

/// E(x) = (id (x) h)alpha(x) (or (h (x) id)beta(x)) and its invariant state.
inline ConditionalExpectation conditional_expectation(const FiniteQuantumGroup& g, const Coaction& c)
{
    cmat hrow = g.haar.transpose();
    ConditionalExpectation e;
    e.map = c.side == Side::right ? cmat(kron(identity(c.r), hrow) * c.map) : cmat(kron(hrow, identity(c.r)) * c.map);
    cvec u = c.unit;
    e.state = (u.adjoint() * e.map).transpose() / u.squaredNorm();
    e.ergodic_residual = max_abs(cmat(e.map - u * e.state.transpose()));
    return e;
}

/// (h_X (x) mu)alpha = mu(1) h_X over `samples` random functionals mu; zero for
/// an invariant h_X.
inline double invariance_residual(const FiniteQuantumGroup& g, const Coaction& c, const cvec& hx, int samples,
                                  std::uint64_t seed)
{
    Rng rng(seed);
    double worst = 0;
    for (int s = 0; s < samples; ++s) {
        cvec mu = random_vector(rng, g.dim);
        cvec lhs = c.side == Side::right ? cvec((kron(hx, mu).transpose() * c.map).transpose())
                                         : cvec((kron(mu, hx).transpose() * c.map).transpose());
        cplx mu1 = (mu.transpose() * g.unit)(0);
        worst = std::max(worst, max_abs(cvec(lhs - mu1 * hx)) / mu.norm());
    }
    return worst;
}

/// E_gamma(x) = d (id (x) h)((1 (x) chi*) alpha(x)), mirrored for left coactions.
inline cmat isotypical_projection(const FiniteQuantumGroup& g, const Coaction& c, const Corepresentation& gamma)
{
    cmat hrow = g.haar.transpose();
    cmat lchi = g.left_mult(g.adjoint(gamma.character()));
    if (c.side == Side::right)
        return double(gamma.d) * kron(identity(c.r), cmat(hrow * lchi)) * c.map;
    return double(gamma.d) * kron(cmat(hrow * lchi), identity(c.r)) * c.map;
}

/// D -> Q* D Q / tr for a density on the full GNS space.
inline SystemState compress_density(const TruncatedSystem& t, const cmat& full)
{
    cmat d = t.range.adjoint() * full * t.range;
    cplx tr = d.trace();
    if (std::abs(tr) < 1e-14)
        fail(Error::Kind::state_certification, "density vanishes on H_Lambda");
    return {hermitian_part(d / tr)};
}

/// Carries a state on a smaller truncation to a larger one containing it;
/// the pullback to A is unchanged.
inline SystemState embed_state(const TruncatedSystem& from, const TruncatedSystem& to, const SystemState& phi)
{
    cmat j = to.range.adjoint() * from.range;
    return {j * phi.density * j.adjoint()};
}

/// Random vector states and Dirichlet mixtures on H_Lambda.
inline std::vector<SystemState> sample_system_states(const TruncatedSystem& t, int samples, std::uint64_t seed)
{
    Rng rng(seed);
    std::vector<SystemState> out;
    for (int s = 0; s < samples; ++s) {
        if (s % 2 == 0)
            out.push_back(vector_state(random_vector(rng, t.m())));
        else
            out.push_back({random_density(rng, t.m(), 1 + s % 4)});
    }
    return out;
}

/// Pulled-back states tau* phi on A, each certified.
inline std::vector<State> liftable_states(const FiniteQuantumGroup& g, const TruncatedSystem& t, int samples,
                                          std::uint64_t seed, double tol = 1e-9)
{
    std::vector<State> out;
    for (const SystemState& phi : sample_system_states(t, samples, seed))
        out.push_back(certify_state(g, pullback(t, phi), tol));
    return out;
}

} // namespace cqms

#endif
