#ifndef CQMS_COREP_PW_HPP
#define CQMS_COREP_PW_HPP

// GNS space of the Haar state, unitary corepresentations, the Peter-Weyl
// blocks of the GNS space, and the multiplicative unitaries W and V.
//
// GNS coordinates: with Gram matrix G = L L^* (Cholesky) and R = L^*, the
// vector Lambda(a) has orthonormal coordinates R a.

#include "cqms/hopf_core.hpp"

#include <string>
#include <vector>

namespace cqms {

struct GNSSpace {
    cmat gram;
    cmat onb;      // R
    cmat onb_inv;  // R^-1
    std::vector<cmat> basis_ops;  // pi(e_i) in orthonormal coordinates
    cvec cyclic;   // Lambda(1)

    int dim() const { return static_cast<int>(gram.rows()); }

    cmat pi(const cvec& a) const
    {
        cmat out = cmat::Zero(dim(), dim());
        for (int i = 0; i < dim(); ++i)
            if (a(i) != 0.0)
                out += a(i) * basis_ops[i];
        return out;
    }

    cvec lambda(const cvec& a) const { return onb * a; }
    cvec unlambda(const cvec& x) const { return onb_inv * x; }
};

inline GNSSpace gns_build(const FiniteQuantumGroup& g)
{
    const int n = g.dim;
    cvec h = g.haar.size() == n ? g.haar : solve_haar(g);
    GNSSpace s;
    s.gram = hermitian_part(positivity_matrix(g, h));
    Eigen::LLT<cmat> llt(s.gram);
    if (llt.info() != Eigen::Success || hermitian_eigenvalues(s.gram)(0) <= rank_rtol * opnorm(s.gram))
        fail(Error::Kind::not_a_quantum_group, "Haar state is not faithful (Gram matrix not positive definite)");
    s.onb = llt.matrixU();
    s.onb_inv = s.onb.triangularView<Eigen::Upper>().solve(identity(n));
    for (int i = 0; i < n; ++i)
        s.basis_ops.push_back(s.onb * g.left_basis(i) * s.onb_inv);
    s.cyclic = s.onb * g.unit;
    return s;
}

/// U = [u_ij] with entries in A, stored row-major.
struct Corepresentation {
    int d = 1;
    std::vector<cvec> entries;

    const cvec& u(int i, int j) const { return entries[static_cast<std::size_t>(i * d + j)]; }

    /// Character sum_i u_ii.
    cvec character() const
    {
        cvec c = cvec::Zero(entries[0].size());
        for (int i = 0; i < d; ++i)
            c += u(i, i);
        return c;
    }
};

inline Corepresentation trivial_corep(const FiniteQuantumGroup& g) { return {1, {g.unit}}; }

/// Linear system in the entries of T (d1 x d2) expressing T U2 = U1 T.
inline cmat intertwiner_system(const Corepresentation& u1, const Corepresentation& u2)
{
    const int n = static_cast<int>(u1.entries[0].size());
    const int d1 = u1.d, d2 = u2.d;
    cmat sys = cmat::Zero(static_cast<Eigen::Index>(d1) * d2 * n, static_cast<Eigen::Index>(d1) * d2);
    for (int i = 0; i < d1; ++i)
        for (int j = 0; j < d2; ++j) {
            const Eigen::Index row = static_cast<Eigen::Index>(i * d2 + j) * n;
            for (int b = 0; b < d2; ++b)
                sys.block(row, i * d2 + b, n, 1) += u2.u(b, j);
            for (int a = 0; a < d1; ++a)
                sys.block(row, a * d2 + j, n, 1) -= u1.u(i, a);
        }
    return sys;
}

struct CorepReport {
    double unitarity = 0;
    double corep_property = 0;
    int mor_dim = 0;

    bool irreducible() const { return mor_dim == 1; }
    bool passes(double tol) const { return unitarity < tol && corep_property < tol; }
};

inline CorepReport validate_corep(const FiniteQuantumGroup& g, const Corepresentation& u)
{
    const int n = g.dim, d = u.d, d0 = g.rep_dim();
    if (d < 1 || static_cast<int>(u.entries.size()) != d * d)
        fail(Error::Kind::structural, "corepresentation needs d*d entries");
    for (const cvec& e : u.entries)
        if (e.size() != n)
            fail(Error::Kind::structural, "corepresentation entry has wrong length");
    CorepReport r;
    cmat big(d * d0, d * d0);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            big.block(i * d0, j * d0, d0, d0) = g.rho(u.u(i, j));
    r.unitarity = std::max(max_abs(cmat(big.adjoint() * big - identity(d * d0))),
                           max_abs(cmat(big * big.adjoint() - identity(d * d0))));
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            cmat rhs = cmat::Zero(n, n);
            for (int k = 0; k < d; ++k)
                rhs += u.u(i, k) * u.u(k, j).transpose();
            r.corep_property = std::max(r.corep_property, max_abs(cmat(unflatten(g.comult * u.u(i, j), n, n) - rhs)));
        }
    r.mor_dim = static_cast<int>(nullspace(intertwiner_system(u, u), 1e-8).cols());
    return r;
}

/// (omega_{xi_i, xi_j} (x) id)(U) = u_ji, listed with index i*d + j.
inline std::vector<cvec> matrix_coefficients(const Corepresentation& u)
{
    std::vector<cvec> out;
    for (int i = 0; i < u.d; ++i)
        for (int j = 0; j < u.d; ++j)
            out.push_back(u.u(j, i));
    return out;
}

/// Stock irreducible corepresentations: matrix coefficient functions of the
/// group irreps for F(G), the lambda_g for C*(G).
inline std::optional<std::vector<Corepresentation>> builtin_coreps(const FiniteQuantumGroup& g)
{
    if (!g.group)
        return std::nullopt;
    const FiniteGroup& grp = *g.group;
    const int n = grp.order();
    std::vector<Corepresentation> out;
    if (g.family == Family::group_algebra) {
        for (int x = 0; x < n; ++x)
            out.push_back({1, {cvec::Unit(n, x)}});
        return out;
    }
    auto irreps = builtin_irreps(grp);
    if (!irreps)
        return std::nullopt;
    for (const GroupIrrep& ir : *irreps) {
        Corepresentation c;
        c.d = ir.dim;
        for (int i = 0; i < ir.dim; ++i)
            for (int j = 0; j < ir.dim; ++j) {
                cvec f(n);
                for (int x = 0; x < n; ++x)
                    f(x) = ir.matrices[x](i, j);
                c.entries.push_back(f);
            }
        out.push_back(std::move(c));
    }
    return out;
}

struct PWBlock {
    Corepresentation corep;
    cmat basis;  // orthonormal columns spanning the GNS images of its coefficients
};

/// The validated Peter-Weyl decomposition; blocks follow the irrep list order.
struct PWDecomposition {
    std::vector<PWBlock> blocks;
    bool complete = false;
    double max_block_overlap = 0;
    double max_kac_residual = 0;

    int size() const { return static_cast<int>(blocks.size()); }

    /// Orthonormal basis of H_Lambda, blocks stacked in the order given.
    cmat range(const std::vector<int>& subset) const
    {
        Eigen::Index m = 0;
        for (int k : subset) {
            if (k < 0 || k >= size())
                fail(Error::Kind::config, "irrep index " + std::to_string(k) + " out of range");
            m += blocks[static_cast<std::size_t>(k)].basis.cols();
        }
        cmat q(blocks.empty() ? 0 : blocks[0].basis.rows(), m);
        Eigen::Index c = 0;
        for (int k : subset) {
            const cmat& b = blocks[static_cast<std::size_t>(k)].basis;
            q.middleCols(c, b.cols()) = b;
            c += b.cols();
        }
        return q;
    }

    cmat projector(const std::vector<int>& subset) const
    {
        cmat q = range(subset);
        return q * q.adjoint();
    }

    std::vector<int> all() const
    {
        std::vector<int> v(static_cast<std::size_t>(size()));
        for (int k = 0; k < size(); ++k)
            v[static_cast<std::size_t>(k)] = k;
        return v;
    }
};

/// Validates the irreps (unitary, corepresentation, irreducible, pairwise
/// inequivalent, complete) and builds the orthonormal blocks.
inline PWDecomposition peter_weyl(const FiniteQuantumGroup& g, const GNSSpace& gns,
                                  const std::vector<Corepresentation>& irreps, double tol = 1e-8)
{
    PWDecomposition pw;
    int total = 0;
    for (std::size_t k = 0; k < irreps.size(); ++k) {
        CorepReport r = validate_corep(g, irreps[k]);
        if (!r.passes(tol))
            fail(Error::Kind::schur, "irrep " + std::to_string(k) + " is not a unitary corepresentation (residual " +
                                         std::to_string(std::max(r.unitarity, r.corep_property)) + ")");
        if (!r.irreducible())
            fail(Error::Kind::schur, "irrep " + std::to_string(k) + " is reducible (dim Mor = " +
                                         std::to_string(r.mor_dim) + ")");
        total += irreps[k].d * irreps[k].d;
    }
    if (total != g.dim)
        fail(Error::Kind::completeness, "sum of d^2 is " + std::to_string(total) + " but dim A is " +
                                            std::to_string(g.dim));
    for (std::size_t a = 0; a < irreps.size(); ++a)
        for (std::size_t b = 0; b < a; ++b)
            if (nullspace(intertwiner_system(irreps[a], irreps[b]), 1e-8).cols() > 0)
                fail(Error::Kind::schur, "irreps " + std::to_string(b) + " and " + std::to_string(a) +
                                             " are equivalent (nonzero intertwiner)");
    for (const Corepresentation& u : irreps) {
        std::vector<cvec> imgs;
        for (const cvec& c : matrix_coefficients(u))
            imgs.push_back(gns.lambda(c));
        for (int i = 0; i < u.d; ++i)
            for (int j = 0; j < u.d; ++j)
                for (int k = 0; k < u.d; ++k)
                    for (int l = 0; l < u.d; ++l) {
                        cplx ip = gns.lambda(u.u(k, l)).dot(gns.lambda(u.u(i, j)));
                        double want = (i == k && j == l) ? 1.0 / u.d : 0.0;
                        pw.max_kac_residual = std::max(pw.max_kac_residual, std::abs(ip - want));
                    }
        pw.blocks.push_back({u, orthonormalize(imgs, g.dim)});
    }
    for (std::size_t a = 0; a < pw.blocks.size(); ++a)
        for (std::size_t b = 0; b < a; ++b)
            pw.max_block_overlap =
                std::max(pw.max_block_overlap, max_abs(cmat(pw.blocks[a].basis.adjoint() * pw.blocks[b].basis)));
    if (pw.max_block_overlap > tol)
        fail(Error::Kind::schur, "Peter-Weyl blocks are not orthogonal (overlap " +
                                     std::to_string(pw.max_block_overlap) + ")");
    pw.complete = true;
    return pw;
}

/// One-shot projector onto H_Lambda.
inline cmat pw_projector(const FiniteQuantumGroup& g, const std::vector<Corepresentation>& irreps,
                         const std::vector<int>& subset)
{
    GNSSpace gns = gns_build(g);
    return peter_weyl(g, gns, irreps).projector(subset);
}

enum class UnitarySide { W, V };

/// W(Lambda(a) (x) xi) = (pi (x) rho)(Delta a)(Lambda(1) (x) xi) on H (x) H0, and
/// V(xi (x) Lambda(a)) = (rho (x) pi)(Delta a)(xi (x) Lambda(1)) on H0 (x) H.
inline cmat multiplicative_unitary(const FiniteQuantumGroup& g, const GNSSpace& gns, UnitarySide side)
{
    const int n = g.dim, d0 = g.rep_dim();
    cmat raw = cmat::Zero(n * d0, n * d0);
    for (int i = 0; i < n; ++i) {
        cmat t = unflatten(g.comult.col(i), n, n);
        if (side == UnitarySide::W) {
            cmat blk = cmat::Zero(n * d0, d0);
            for (int k = 0; k < n; ++k)
                blk += kron(cmat(gns.onb * t.col(k)), g.rep[k]);
            raw.middleCols(i * d0, d0) = blk;
        } else {
            for (int j = 0; j < n; ++j) {
                cvec rt = gns.onb * t.row(j).transpose();
                for (int s = 0; s < d0; ++s)
                    raw.col(s * n + i) += kron(cvec(g.rep[j].col(s)), rt);
            }
        }
    }
    return side == UnitarySide::W ? cmat(raw * kron(gns.onb_inv, identity(d0)))
                                  : cmat(raw * kron(identity(d0), gns.onb_inv));
}

struct UnitaryReport {
    double unitarity = 0;
    double implements_comult = 0;  // on sampled a
    double commutes_with_blocks = 0;
};

inline UnitaryReport check_multiplicative_unitary(const FiniteQuantumGroup& g, const GNSSpace& gns,
                                                  const PWDecomposition& pw, UnitarySide side, int samples,
                                                  std::uint64_t seed)
{
    const int n = g.dim, d0 = g.rep_dim();
    cmat w = multiplicative_unitary(g, gns, side);
    UnitaryReport r;
    r.unitarity = max_abs(cmat(w.adjoint() * w - identity(n * d0)));
    Rng rng(seed);
    for (int s = 0; s < samples; ++s) {
        cvec a = random_vector(rng, n);
        cmat t = unflatten(g.comult * a, n, n);
        cmat target = cmat::Zero(n * d0, n * d0);
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                if (t(j, k) != 0.0)
                    target += side == UnitarySide::W ? cmat(t(j, k) * kron(gns.basis_ops[j], g.rep[k]))
                                                     : cmat(t(j, k) * kron(g.rep[j], gns.basis_ops[k]));
        cmat lifted = side == UnitarySide::W ? kron(gns.pi(a), identity(d0)) : kron(identity(d0), gns.pi(a));
        r.implements_comult =
            std::max(r.implements_comult, max_abs(cmat(w * lifted * w.adjoint() - target)) / std::max(1.0, a.norm()));
    }
    for (int k = 0; k < pw.size(); ++k) {
        cmat p = pw.projector({k});
        cmat pp = side == UnitarySide::W ? kron(p, identity(d0)) : kron(identity(d0), p);
        r.commutes_with_blocks = std::max(r.commutes_with_blocks, max_abs(cmat(w * pp - pp * w)));
    }
    return r;
}

} // namespace cqms

#endif
