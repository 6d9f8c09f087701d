#ifndef CQMS_LINALG_HPP
#define CQMS_LINALG_HPP

// Dense complex linear algebra shared by every module. All tensors are
// flattened with the first factor varying slowest, so the index of
// e_j (x) e_k in A (x) B is j * dim(B) + k. This matches the Kronecker product
// convention (A (x) B)(i*p + k, j*q + l) = A(i, j) B(k, l).

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <vector>

namespace cqms {

using cplx = std::complex<double>;
using cmat = Eigen::MatrixXcd;
using cvec = Eigen::VectorXcd;
using rmat = Eigen::MatrixXd;
using rvec = Eigen::VectorXd;

inline constexpr double pi = 3.141592653589793238462643383279502884;

/// Singular-value cutoff used for every rank decision, relative to the
/// largest singular value.
inline constexpr double rank_rtol = 1e-10;

inline cmat kron(const cmat& a, const cmat& b)
{
    cmat out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

inline cvec kron(const cvec& a, const cvec& b)
{
    cvec out(a.size() * b.size());
    for (Eigen::Index i = 0; i < a.size(); ++i)
        out.segment(i * b.size(), b.size()) = a(i) * b;
    return out;
}

inline cmat identity(Eigen::Index n) { return cmat::Identity(n, n); }

/// Reads a flat tensor of length p*q as the p x q coefficient matrix T(j, k).
inline cmat unflatten(const cvec& v, Eigen::Index p, Eigen::Index q)
{
    cmat out(p, q);
    for (Eigen::Index j = 0; j < p; ++j)
        for (Eigen::Index k = 0; k < q; ++k)
            out(j, k) = v(j * q + k);
    return out;
}

inline cvec flatten(const cmat& t)
{
    cvec out(t.size());
    for (Eigen::Index j = 0; j < t.rows(); ++j)
        for (Eigen::Index k = 0; k < t.cols(); ++k)
            out(j * t.cols() + k) = t(j, k);
    return out;
}

/// Largest singular value.
inline double opnorm(const cmat& m)
{
    if (m.size() == 0)
        return 0.0;
    if (m.rows() == 1 || m.cols() == 1)
        return m.norm();
    Eigen::JacobiSVD<cmat> svd(m);
    return svd.singularValues()(0);
}

inline cmat hermitian_part(const cmat& m) { return 0.5 * (m + m.adjoint()); }

inline bool is_hermitian(const cmat& m, double tol)
{
    return (m - m.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

/// Eigenvalues (ascending) of the Hermitian part of m.
inline rvec hermitian_eigenvalues(const cmat& m)
{
    Eigen::SelfAdjointEigenSolver<cmat> es(hermitian_part(m), Eigen::EigenvaluesOnly);
    return es.eigenvalues();
}

inline double max_abs(const cmat& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }
inline double max_abs(const cvec& v) { return v.size() == 0 ? 0.0 : v.cwiseAbs().maxCoeff(); }

struct SvdInfo {
    Eigen::Index rank = 0;
    rvec singular_values;
    cmat u;
    cmat v;
};

/// Thin or full SVD with the scale-invariant rank cutoff.
/// Singular values above rtol * max(sigma_max, ref) count; pass ref when m is a
/// difference that may cancel to rounding noise.
inline SvdInfo svd_rank(const cmat& m, bool full_v = false, double rtol = rank_rtol, double ref = 0.0)
{
    SvdInfo out;
    if (m.size() == 0) {
        out.u = cmat(m.rows(), 0);
        out.v = full_v ? identity(m.cols()) : cmat(m.cols(), 0);
        return out;
    }
    unsigned opts = full_v ? (Eigen::ComputeThinU | Eigen::ComputeFullV)
                           : (Eigen::ComputeThinU | Eigen::ComputeThinV);
    Eigen::BDCSVD<cmat> svd(m, opts);
    out.singular_values = svd.singularValues();
    double top = std::max(out.singular_values.size() ? out.singular_values(0) : 0.0, ref);
    for (Eigen::Index i = 0; i < out.singular_values.size(); ++i)
        if (top > 0 && out.singular_values(i) > rtol * top)
            ++out.rank;
    out.u = svd.matrixU();
    out.v = svd.matrixV();
    return out;
}

inline Eigen::Index rank(const cmat& m, double rtol = rank_rtol, double ref = 0.0)
{
    return svd_rank(m, false, rtol, ref).rank;
}

/// Orthonormal basis (columns) of the kernel of m.
inline cmat nullspace(const cmat& m, double rtol = rank_rtol, double ref = 0.0)
{
    if (m.rows() == 0)
        return identity(m.cols());
    SvdInfo s = svd_rank(m, true, rtol, ref);
    return s.v.rightCols(m.cols() - s.rank);
}

/// Modified Gram-Schmidt with one re-orthogonalisation pass whenever a vector
/// loses more than a factor 1e8 of its norm. Vectors falling below rtol of
/// their original norm are dropped.
inline cmat orthonormalize(const std::vector<cvec>& vs, Eigen::Index dim, double rtol = rank_rtol)
{
    std::vector<cvec> basis;
    for (const cvec& v0 : vs) {
        double n0 = v0.norm();
        if (n0 == 0.0)
            continue;
        cvec v = v0;
        for (int pass = 0; pass < 2; ++pass) {
            double before = v.norm();
            for (const cvec& q : basis)
                v -= q.dot(v) * q;
            double after = v.norm();
            if (after == 0.0 || before / after < 1e8)
                break;
        }
        double nv = v.norm();
        if (nv > rtol * n0)
            basis.push_back(v / nv);
    }
    cmat out(dim, static_cast<Eigen::Index>(basis.size()));
    for (std::size_t i = 0; i < basis.size(); ++i)
        out.col(static_cast<Eigen::Index>(i)) = basis[i];
    return out;
}

// Random sampling. Every generator takes the engine explicitly so callers
// control seeding.
using Rng = std::mt19937_64;

inline cplx random_gaussian(Rng& rng)
{
    std::normal_distribution<double> nd(0.0, 1.0);
    double re = nd(rng);
    double im = nd(rng);
    return {re, im};
}

inline cvec random_vector(Rng& rng, Eigen::Index n)
{
    cvec v(n);
    for (Eigen::Index i = 0; i < n; ++i)
        v(i) = random_gaussian(rng);
    return v;
}

inline rvec random_real_vector(Rng& rng, Eigen::Index n)
{
    std::normal_distribution<double> nd(0.0, 1.0);
    rvec v(n);
    for (Eigen::Index i = 0; i < n; ++i)
        v(i) = nd(rng);
    return v;
}

/// Haar-distributed unit vector.
inline cvec random_unit_vector(Rng& rng, Eigen::Index n)
{
    cvec v = random_vector(rng, n);
    return v / v.norm();
}

inline cmat random_matrix(Rng& rng, Eigen::Index r, Eigen::Index c)
{
    cmat m(r, c);
    for (Eigen::Index i = 0; i < r; ++i)
        for (Eigen::Index j = 0; j < c; ++j)
            m(i, j) = random_gaussian(rng);
    return m;
}

/// Flat Dirichlet weights.
inline rvec dirichlet(Rng& rng, Eigen::Index k)
{
    std::exponential_distribution<double> ed(1.0);
    rvec w(k);
    for (Eigen::Index i = 0; i < k; ++i)
        w(i) = ed(rng);
    return w / w.sum();
}

/// Random density matrix: a Dirichlet-weighted mixture of `terms` Haar
/// random pure states.
inline cmat random_density(Rng& rng, Eigen::Index n, int terms)
{
    rvec w = dirichlet(rng, terms);
    cmat d = cmat::Zero(n, n);
    for (int t = 0; t < terms; ++t) {
        cvec v = random_unit_vector(rng, n);
        d += w(t) * v * v.adjoint();
    }
    return d;
}

} // namespace cqms

#endif
