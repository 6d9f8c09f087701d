#ifndef CQMS_GROUPS_HPP
#define CQMS_GROUPS_HPP

// Finite groups given by Cayley tables, the stock examples (cyclic, S3, D4,
// Q8) with their unitary irreducible representations, and the invariant
// metrics and length functions used to build Lip-norms on them.

#include "cqms/error.hpp"
#include "cqms/linalg.hpp"

#include <array>
#include <deque>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace cqms {

using CayleyTable = std::vector<std::vector<int>>;

/// A unitary irreducible representation given by its matrices at every group
/// element, in table order.
struct GroupIrrep {
    int dim = 1;
    std::vector<cmat> matrices;
};

class FiniteGroup {
public:
    /// Validates the table: closure, identity, inverses, associativity.
    explicit FiniteGroup(CayleyTable table) : table_(std::move(table))
    {
        const int n = static_cast<int>(table_.size());
        if (n == 0)
            fail(Error::Kind::table, "empty Cayley table");
        for (int g = 0; g < n; ++g) {
            if (static_cast<int>(table_[g].size()) != n)
                fail(Error::Kind::table, "row " + std::to_string(g) + " has wrong length");
            for (int h = 0; h < n; ++h)
                if (table_[g][h] < 0 || table_[g][h] >= n)
                    fail(Error::Kind::table, "entry (" + std::to_string(g) + "," + std::to_string(h) + ") out of range");
        }
        identity_ = -1;
        for (int e = 0; e < n && identity_ < 0; ++e) {
            bool ok = true;
            for (int g = 0; g < n && ok; ++g)
                ok = table_[e][g] == g && table_[g][e] == g;
            if (ok)
                identity_ = e;
        }
        if (identity_ < 0)
            fail(Error::Kind::table, "no identity element");
        inverse_.assign(n, -1);
        for (int g = 0; g < n; ++g) {
            for (int h = 0; h < n; ++h)
                if (table_[g][h] == identity_ && table_[h][g] == identity_)
                    inverse_[g] = h;
            if (inverse_[g] < 0)
                fail(Error::Kind::table, "element " + std::to_string(g) + " has no inverse");
        }
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                for (int c = 0; c < n; ++c)
                    if (table_[table_[a][b]][c] != table_[a][table_[b][c]])
                        fail(Error::Kind::table, "associativity fails at (" + std::to_string(a) + "," +
                                                     std::to_string(b) + "," + std::to_string(c) + ")");
    }

    int order() const { return static_cast<int>(table_.size()); }
    int identity() const { return identity_; }
    int mul(int g, int h) const { return table_[g][h]; }
    int inv(int g) const { return inverse_[g]; }
    const CayleyTable& table() const { return table_; }

    bool is_abelian() const
    {
        for (int g = 0; g < order(); ++g)
            for (int h = 0; h < g; ++h)
                if (mul(g, h) != mul(h, g))
                    return false;
        return true;
    }

    /// Left regular permutation: e_h -> e_{gh}.
    cmat left_regular(int g) const
    {
        cmat m = cmat::Zero(order(), order());
        for (int h = 0; h < order(); ++h)
            m(mul(g, h), h) = 1.0;
        return m;
    }

private:
    CayleyTable table_;
    int identity_ = 0;
    std::vector<int> inverse_;
};

inline CayleyTable cyclic_table(int n)
{
    CayleyTable t(n, std::vector<int>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            t[i][j] = (i + j) % n;
    return t;
}

/// Table of a group presented by faithful matrices; products are matched
/// against the list entrywise.
inline CayleyTable table_from_matrices(const std::vector<cmat>& elems)
{
    const int n = static_cast<int>(elems.size());
    CayleyTable t(n, std::vector<int>(n, -1));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            cmat p = elems[i] * elems[j];
            for (int k = 0; k < n; ++k)
                if ((p - elems[k]).cwiseAbs().maxCoeff() < 1e-12) {
                    t[i][j] = k;
                    break;
                }
            if (t[i][j] < 0)
                fail(Error::Kind::table, "matrix list not closed under multiplication");
        }
    return t;
}

/// A stock group: table plus a complete list of irreducible representations.
struct StockGroup {
    std::string name;
    CayleyTable table;
    std::vector<GroupIrrep> irreps;
    std::vector<std::string> labels;
};

inline GroupIrrep one_dim_irrep(const std::vector<cplx>& values)
{
    GroupIrrep r;
    r.dim = 1;
    for (cplx v : values) {
        cmat m(1, 1);
        m(0, 0) = v;
        r.matrices.push_back(m);
    }
    return r;
}

/// Characters of Z_n, k = 0..n-1, chi_k(j) = exp(2 pi i j k / n).
inline std::vector<GroupIrrep> cyclic_irreps(int n)
{
    std::vector<GroupIrrep> out;
    for (int k = 0; k < n; ++k) {
        std::vector<cplx> vals;
        for (int j = 0; j < n; ++j)
            vals.push_back(std::polar(1.0, 2.0 * pi * double(j) * double(k) / double(n)));
        out.push_back(one_dim_irrep(vals));
    }
    return out;
}

inline StockGroup cyclic_group(int n)
{
    StockGroup g{"Z" + std::to_string(n), cyclic_table(n), cyclic_irreps(n), {}};
    for (int j = 0; j < n; ++j)
        g.labels.push_back(std::to_string(j));
    return g;
}

/// S3 as permutations of {0,1,2} in lexicographic order; g*h = g o h.
inline StockGroup symmetric_group_3()
{
    const std::vector<std::array<int, 3>> perms = {
        {0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
    std::vector<cmat> pm;
    for (const auto& p : perms) {
        cmat m = cmat::Zero(3, 3);
        for (int i = 0; i < 3; ++i)
            m(p[i], i) = 1.0;
        pm.push_back(m);
    }
    StockGroup g;
    g.name = "S3";
    g.table = table_from_matrices(pm);
    cmat basis(3, 2);
    basis << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(6.0),
             -1.0 / std::sqrt(2.0), 1.0 / std::sqrt(6.0),
             0.0, -2.0 / std::sqrt(6.0);
    std::vector<cplx> triv, sign;
    GroupIrrep standard;
    standard.dim = 2;
    for (const cmat& m : pm) {
        triv.push_back(1.0);
        sign.push_back(m.determinant());
        standard.matrices.push_back(basis.adjoint() * m * basis);
    }
    g.irreps = {one_dim_irrep(triv), one_dim_irrep(sign), standard};
    g.labels = {"e", "(12)", "(01)", "(012)", "(021)", "(02)"};
    return g;
}

/// D4 = <r, s | r^4, s^2, srs = r^-1>, elements r^k s^j listed as k + 4j.
inline StockGroup dihedral_group_4()
{
    cmat r(2, 2), s(2, 2);
    r << 0.0, -1.0, 1.0, 0.0;
    s << 1.0, 0.0, 0.0, -1.0;
    std::vector<cmat> elems;
    for (int j = 0; j < 2; ++j)
        for (int k = 0; k < 4; ++k) {
            cmat m = identity(2);
            for (int t = 0; t < k; ++t)
                m = m * r;
            if (j)
                m = m * s;
            elems.push_back(m);
        }
    StockGroup g;
    g.name = "D4";
    g.table = table_from_matrices(elems);
    for (int a : {1, -1})
        for (int b : {1, -1}) {
            std::vector<cplx> vals;
            for (int j = 0; j < 2; ++j)
                for (int k = 0; k < 4; ++k)
                    vals.push_back(std::pow(double(a), k) * std::pow(double(b), j));
            g.irreps.push_back(one_dim_irrep(vals));
        }
    GroupIrrep def;
    def.dim = 2;
    def.matrices = elems;
    g.irreps.push_back(def);
    for (int j = 0; j < 2; ++j)
        for (int k = 0; k < 4; ++k)
            g.labels.push_back("r" + std::to_string(k) + (j ? "s" : ""));
    return g;
}

/// Quaternion group {1, -1, i, -i, j, -j, k, -k} in its SU(2) realisation.
inline StockGroup quaternion_group()
{
    const cplx I(0.0, 1.0);
    cmat one = identity(2), qi(2, 2), qj(2, 2), qk(2, 2);
    qi << I, 0.0, 0.0, -I;
    qj << 0.0, 1.0, -1.0, 0.0;
    qk << 0.0, I, I, 0.0;
    std::vector<cmat> elems = {one, -one, qi, -qi, qj, -qj, qk, -qk};
    StockGroup g;
    g.name = "Q8";
    g.table = table_from_matrices(elems);
    for (int a : {1, -1})
        for (int b : {1, -1}) {
            const double ab = double(a * b);
            g.irreps.push_back(one_dim_irrep({1.0, 1.0, double(a), double(a), double(b), double(b), ab, ab}));
        }
    GroupIrrep def;
    def.dim = 2;
    def.matrices = elems;
    g.irreps.push_back(def);
    g.labels = {"1", "-1", "i", "-i", "j", "-j", "k", "-k"};
    return g;
}

/// Characters of an abelian group read off from joint eigenvectors of the
/// left regular representation. The trivial character comes first.
inline std::vector<GroupIrrep> abelian_characters(const FiniteGroup& g)
{
    if (!g.is_abelian())
        fail(Error::Kind::unsupported, "characters can only be generated for abelian groups");
    const int n = g.order();
    Rng rng(12345);
    cmat generic = cmat::Zero(n, n);
    for (int k = 0; k < n; ++k)
        generic += random_gaussian(rng) * g.left_regular(k);
    Eigen::ComplexEigenSolver<cmat> es(generic);
    std::vector<GroupIrrep> out;
    for (int c = 0; c < n; ++c) {
        cvec v = es.eigenvectors().col(c);
        const cplx ve = v(g.identity());
        if (std::abs(ve) < 1e-12)
            fail(Error::Kind::internal_inconsistency, "degenerate character computation");
        std::vector<cplx> vals;
        for (int h = 0; h < n; ++h) {
            cplx x = std::conj(v(h) / ve);
            vals.push_back(x / std::abs(x));
        }
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                if (std::abs(vals[g.mul(a, b)] - vals[a] * vals[b]) > 1e-8)
                    fail(Error::Kind::internal_inconsistency, "generated character is not multiplicative");
        out.push_back(one_dim_irrep(vals));
    }
    std::stable_sort(out.begin(), out.end(), [](const GroupIrrep& a, const GroupIrrep& b) {
        auto trivial = [](const GroupIrrep& r) {
            for (const cmat& m : r.matrices)
                if (std::abs(m(0, 0) - 1.0) > 1e-9)
                    return false;
            return true;
        };
        return trivial(a) && !trivial(b);
    });
    return out;
}

/// Stock irreps for tables equal to one of the stored groups, characters for
/// other abelian groups, nothing otherwise.
inline std::optional<std::vector<GroupIrrep>> builtin_irreps(const FiniteGroup& g)
{
    const int n = g.order();
    if (g.table() == cyclic_table(n))
        return cyclic_irreps(n);
    for (const StockGroup& s : {symmetric_group_3(), dihedral_group_4(), quaternion_group()})
        if (g.table() == s.table)
            return s.irreps;
    if (g.is_abelian())
        return abelian_characters(g);
    return std::nullopt;
}

/// Arc-length metric on Z_n viewed as the n-th roots of unity.
inline rmat arc_metric(int n)
{
    rmat d(n, n);
    for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) {
            int diff = std::abs(j - k);
            d(j, k) = 2.0 * pi / double(n) * double(std::min(diff, n - diff));
        }
    return d;
}

/// Word length with respect to a generating set (closed under inverses by
/// construction: inverses are added).
inline rvec word_length(const FiniteGroup& g, const std::vector<int>& generators)
{
    const int n = g.order();
    std::vector<int> gens = generators;
    for (int s : generators)
        gens.push_back(g.inv(s));
    rvec len = rvec::Constant(n, -1.0);
    std::deque<int> queue{g.identity()};
    len(g.identity()) = 0.0;
    while (!queue.empty()) {
        int x = queue.front();
        queue.pop_front();
        for (int s : gens) {
            int y = g.mul(x, s);
            if (len(y) < 0) {
                len(y) = len(x) + 1.0;
                queue.push_back(y);
            }
        }
    }
    if ((len.array() < 0).any())
        fail(Error::Kind::length, "generators do not generate the group");
    return len;
}

/// d(g, h) = length(g^-1 h).
inline rmat metric_from_length(const FiniteGroup& g, const rvec& len)
{
    const int n = g.order();
    rmat d(n, n);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            d(a, b) = len(g.mul(g.inv(a), b));
    return d;
}

/// Checks metric axioms and bi-invariance; throws with the violating triple.
inline void validate_bi_invariant_metric(const FiniteGroup& g, const rmat& d, double tol = 1e-12)
{
    const int n = g.order();
    if (d.rows() != n || d.cols() != n)
        fail(Error::Kind::metric, "metric has shape " + std::to_string(d.rows()) + "x" + std::to_string(d.cols()));
    auto triple = [](int a, int b, int c) {
        std::ostringstream os;
        os << "(" << a << "," << b << "," << c << ")";
        return os.str();
    };
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            if (std::abs(d(a, b) - d(b, a)) > tol)
                fail(Error::Kind::metric, "not symmetric at " + triple(a, b, b));
            if (a == b && std::abs(d(a, b)) > tol)
                fail(Error::Kind::metric, "nonzero diagonal at " + triple(a, a, a));
            if (a != b && !(d(a, b) > 0))
                fail(Error::Kind::metric, "distinct points at distance zero " + triple(a, b, b));
        }
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c) {
                if (d(a, c) > d(a, b) + d(b, c) + tol)
                    fail(Error::Kind::metric, "triangle inequality violated at " + triple(a, b, c));
                if (std::abs(d(g.mul(a, c), g.mul(b, c)) - d(a, b)) > tol)
                    fail(Error::Kind::metric, "not right invariant at " + triple(a, b, c));
                if (std::abs(d(g.mul(c, a), g.mul(c, b)) - d(a, b)) > tol)
                    fail(Error::Kind::metric, "not left invariant at " + triple(a, b, c));
            }
}

/// Length functions for group algebras: l(e) = 0, l > 0 elsewhere, symmetric.
inline void validate_length(const FiniteGroup& g, const rvec& len, double tol = 1e-12)
{
    if (len.size() != g.order())
        fail(Error::Kind::length, "length has " + std::to_string(len.size()) + " entries, expected " +
                                      std::to_string(g.order()));
    if (std::abs(len(g.identity())) > tol)
        fail(Error::Kind::length, "length of the identity is nonzero");
    for (int x = 0; x < g.order(); ++x) {
        if (x != g.identity() && !(len(x) > tol))
            fail(Error::Kind::length, "length vanishes at element " + std::to_string(x));
        if (std::abs(len(x) - len(g.inv(x))) > tol)
            fail(Error::Kind::length, "length is not symmetric at element " + std::to_string(x));
    }
}

} // namespace cqms

#endif
