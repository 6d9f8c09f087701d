#ifndef CQMS_SIMPLEX_HPP
#define CQMS_SIMPLEX_HPP

// Dense tableau simplex for   max c'x  s.t.  Ax <= b, x >= 0.
// Two phases (an artificial column handles negative b), Bland's rule for
// entering and leaving variables, and a post-solve certificate built from
// the dual values read off the final tableau.

#include "cqms/linalg.hpp"

#include <limits>
#include <vector>

namespace cqms {

enum class LPStatus { optimal, infeasible, unbounded };

struct LPResult {
    LPStatus status = LPStatus::infeasible;
    double value = 0;
    rvec x;      // primal
    rvec y;      // dual, y >= 0, A'y >= c
    double primal_residual = 0;  // max (Ax - b)_+ and max (-x)_+
    double dual_residual = 0;    // max (c - A'y)_+ and max (-y)_+
    double gap = 0;              // |c'x - b'y|
    int pivots = 0;
};

class SimplexLP {
public:
    SimplexLP(const rmat& a, const rvec& b, const rvec& c, double eps = 1e-9)
        : m_(static_cast<int>(a.rows())), n_(static_cast<int>(a.cols())), eps_(eps), a_(a), b_(b), c_(c),
          basic_(m_), nonbasic_(n_ + 1), d_(m_ + 2, n_ + 2)
    {
        d_.setZero();
        d_.topLeftCorner(m_, n_) = a;
        for (int i = 0; i < m_; ++i) {
            basic_[i] = n_ + i;
            d_(i, n_) = -1;
            d_(i, n_ + 1) = b(i);
        }
        for (int j = 0; j < n_; ++j) {
            nonbasic_[j] = j;
            d_(m_, j) = -c(j);
        }
        nonbasic_[n_] = -1;
        d_(m_ + 1, n_) = 1;
    }

    LPResult solve()
    {
        LPResult res;
        int r = 0;
        for (int i = 1; i < m_; ++i)
            if (d_(i, n_ + 1) < d_(r, n_ + 1))
                r = i;
        if (m_ > 0 && d_(r, n_ + 1) < -eps_) {
            pivot(r, n_);
            ++res.pivots;
            if (!simplex(2, res.pivots) || d_(m_ + 1, n_ + 1) < -eps_) {
                res.status = LPStatus::infeasible;
                return res;
            }
            for (int i = 0; i < m_; ++i)
                if (basic_[i] == -1) {
                    int s = 0;
                    for (int j = 1; j <= n_; ++j)
                        if (s == -1 || std::make_pair(d_(i, j), nonbasic_[j]) < std::make_pair(d_(i, s), nonbasic_[s]))
                            s = j;
                    pivot(i, s);
                    ++res.pivots;
                }
        }
        if (!simplex(1, res.pivots)) {
            res.status = LPStatus::unbounded;
            res.value = std::numeric_limits<double>::infinity();
            return res;
        }
        res.status = LPStatus::optimal;
        res.x = rvec::Zero(n_);
        res.y = rvec::Zero(m_);
        for (int i = 0; i < m_; ++i)
            if (basic_[i] >= 0 && basic_[i] < n_)
                res.x(basic_[i]) = d_(i, n_ + 1);
        for (int j = 0; j <= n_; ++j)
            if (nonbasic_[j] >= n_)
                res.y(nonbasic_[j] - n_) = d_(m_, j);
        res.value = c_.dot(res.x);
        certify(res);
        return res;
    }

private:
    void certify(LPResult& res) const
    {
        rvec slack = a_ * res.x - b_;
        res.primal_residual = std::max({0.0, slack.size() ? slack.maxCoeff() : 0.0,
                                        res.x.size() ? -res.x.minCoeff() : 0.0});
        rvec red = c_ - a_.transpose() * res.y;
        res.dual_residual = std::max({0.0, red.size() ? red.maxCoeff() : 0.0,
                                      res.y.size() ? -res.y.minCoeff() : 0.0});
        res.gap = std::abs(res.value - b_.dot(res.y));
    }

    void pivot(int r, int s)
    {
        const double inv = 1.0 / d_(r, s);
        for (int i = 0; i < m_ + 2; ++i)
            if (i != r && std::abs(d_(i, s)) > 0.0) {
                const double f = d_(i, s) * inv;
                d_.row(i) -= f * d_.row(r);
                d_(i, s) = -f;
            }
        for (int j = 0; j < n_ + 2; ++j)
            if (j != s)
                d_(r, j) *= inv;
        d_(r, s) = inv;
        std::swap(basic_[r], nonbasic_[s]);
    }

    /// Bland: entering = smallest variable index with negative reduced cost,
    /// leaving = minimum ratio with ties broken by smallest basic index.
    bool simplex(int phase, int& pivots)
    {
        const int obj = m_ + phase - 1;
        for (;;) {
            int s = -1;
            for (int j = 0; j <= n_; ++j) {
                if (nonbasic_[j] == -phase)
                    continue;
                if (d_(obj, j) < -eps_ && (s == -1 || nonbasic_[j] < nonbasic_[s]))
                    s = j;
            }
            if (s == -1)
                return true;
            int r = -1;
            for (int i = 0; i < m_; ++i) {
                if (d_(i, s) <= eps_)
                    continue;
                if (r == -1)
                    r = i;
                else {
                    const double lhs = d_(i, n_ + 1) / d_(i, s), rhs = d_(r, n_ + 1) / d_(r, s);
                    if (lhs < rhs - eps_ || (lhs <= rhs + eps_ && basic_[i] < basic_[r]))
                        r = i;
                }
            }
            if (r == -1)
                return false;
            pivot(r, s);
            ++pivots;
        }
    }

    int m_, n_;
    double eps_;
    rmat a_;
    rvec b_, c_;
    std::vector<int> basic_, nonbasic_;
    rmat d_;
};

inline LPResult solve_lp(const rmat& a, const rvec& b, const rvec& c, double eps = 1e-9)
{
    return SimplexLP(a, b, c, eps).solve();
}

} // namespace cqms

#endif
