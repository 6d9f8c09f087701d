#ifndef CQMS_NUMERICAL_RADIUS_HPP
#define CQMS_NUMERICAL_RADIUS_HPP

// Numerical radius w(M) = max over theta of lambda_max(Re(e^{i theta} M)),
// Re(X) = (X + X^*)/2, by branch and bound on theta in [0, 2 pi).
//
// On an interval c +- delta write Re(e^{i(c+t)} M) = cos t H + sin t K with
// H = Re(e^{ic} M), K = Re(i e^{ic} M). In the eigenbasis of H split the
// spectrum into a top cluster and the rest; the 2 x 2 majorant built from the
// block bounds gives a rigorous upper bound that is second order in delta
// when the cluster is separated. The global cap
// w(M) <= (norm M + norm(M^2)^{1/2}) / 2 (Kittaneh) closes flat cases such as
// nilpotent 2 x 2 blocks, where the majorant alone needs ~1/sqrt(tol) nodes.

#include "cqms/linalg.hpp"

#include <limits>
#include <queue>
#include <vector>

namespace cqms {

struct RadiusBracket {
    double lower = 0;
    double upper = 0;
    int nodes = 0;
};

namespace detail {

inline cmat rotated_real_part(const cmat& m, double theta)
{
    cmat x = std::polar(1.0, theta) * m;
    return 0.5 * (x + x.adjoint());
}

/// max over t in [0, delta] of l cos t + k sin t.
inline double max_cos_sin(double l, double k, double delta)
{
    double phi = std::atan2(k, l);
    if (phi >= 0 && phi <= delta)
        return std::hypot(l, k);
    return std::max(l, l * std::cos(delta) + k * std::sin(delta));
}

struct Node {
    double center;
    double half;
    double upper;
    bool operator<(const Node& o) const { return upper < o.upper; }
};

/// Evaluates lambda_max at the centre and the interval upper bound.
inline Node bound_interval(const cmat& m, double center, double half, double& value)
{
    Eigen::SelfAdjointEigenSolver<cmat> es(rotated_real_part(m, center));
    const Eigen::Index n = m.rows();
    rvec lam = es.eigenvalues().reverse();
    cmat vecs = es.eigenvectors().rowwise().reverse();
    value = lam(0);
    cmat k = vecs.adjoint() * rotated_real_part(m, center + 0.5 * pi) * vecs;
    k = hermitian_part(k);
    const double s = std::sin(half), c = std::cos(half);

    std::vector<Eigen::Index> splits{1, n};
    Eigen::Index best_gap = 1;
    for (Eigen::Index j = 1; j < std::min<Eigen::Index>(n, 6); ++j)
        if (lam(j - 1) - lam(j) > lam(best_gap - 1) - lam(best_gap))
            best_gap = j;
    splits.push_back(best_gap);

    double best = std::numeric_limits<double>::infinity();
    for (Eigen::Index top : splits) {
        rvec kev = hermitian_eigenvalues(k.topLeftCorner(top, top));
        double a = std::max(max_cos_sin(lam(0), kev(top - 1), half), max_cos_sin(lam(0), -kev(0), half));
        double u = a;
        if (top < n) {
            const Eigen::Index rest = n - top;
            rvec k22 = hermitian_eigenvalues(k.bottomRightCorner(rest, rest));
            double k22n = std::max(std::abs(k22(0)), std::abs(k22(rest - 1)));
            double l2 = lam(top);
            double d = (l2 >= 0 ? l2 : l2 * c) + s * k22n;
            double beta = s * opnorm(k.bottomLeftCorner(rest, top));
            u = 0.5 * (a + d) + std::sqrt(0.25 * (a - d) * (a - d) + beta * beta);
        }
        best = std::min(best, u);
    }
    return {center, half, best};
}

} // namespace detail

/// Certified bracket with upper - lower <= tol (unless max_nodes is hit).
/// The search also stops once the upper bound drops to `cutoff`, for callers
/// that only need to know w(M) <= cutoff.
inline RadiusBracket numerical_radius_bracket(const cmat& m, double tol = 1e-6, int max_nodes = 200000,
                                              double cutoff = -std::numeric_limits<double>::infinity())
{
    RadiusBracket out;
    if (m.size() == 0)
        return out;
    const double scale = max_abs(m);
    if (scale == 0.0)
        return out;
    if (max_abs(cmat(m - m.adjoint())) <= 1e-13 * scale) {
        rvec ev = hermitian_eigenvalues(m);
        out.lower = out.upper = std::max(std::abs(ev(0)), std::abs(ev(ev.size() - 1)));
        return out;
    }
    if (m.rows() == 1) {
        out.lower = out.upper = std::abs(m(0, 0));
        return out;
    }
    const double cap = 0.5 * (opnorm(m) + std::sqrt(opnorm(cmat(m * m))));
    std::priority_queue<detail::Node> queue;
    double best = -std::numeric_limits<double>::infinity();
    double pruned = best;
    const int initial = 8;
    const double half0 = pi / initial;
    for (int j = 0; j < initial; ++j) {
        double v;
        queue.push(detail::bound_interval(m, (2 * j + 1) * half0, half0, v));
        best = std::max(best, v);
        ++out.nodes;
    }
    while (!queue.empty()) {
        detail::Node top = queue.top();
        if (top.upper <= best + tol || top.upper <= cutoff || cap <= best + tol || out.nodes >= max_nodes)
            break;
        queue.pop();
        const double h = 0.5 * top.half;
        for (double c : {top.center - h, top.center + h}) {
            double v;
            detail::Node child = detail::bound_interval(m, c, h, v);
            best = std::max(best, v);
            ++out.nodes;
            if (child.upper > best + tol && child.upper > cutoff)
                queue.push(child);
            else
                pruned = std::max(pruned, child.upper);
        }
    }
    out.lower = std::max(best, 0.0);
    out.upper = std::max(out.lower, pruned);
    if (!queue.empty())
        out.upper = std::max(out.upper, queue.top().upper);
    out.upper = std::max(out.lower, std::min(out.upper, cap));
    return out;
}

/// A value within tol of w(M) from below.
inline double numerical_radius(const cmat& m, double tol = 1e-6)
{
    return numerical_radius_bracket(m, tol).lower;
}

} // namespace cqms

#endif
