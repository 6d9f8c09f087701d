#ifndef CQMS_TEST_ORACLES_HPP
#define CQMS_TEST_ORACLES_HPP

// Test-side reference computations that share no code with the library.

#include <Eigen/Dense>

#include <algorithm>
#include <complex>
#include <limits>
#include <set>
#include <vector>

namespace oracle {

/// Earth mover's distance between probability vectors p, q under cost d by
/// successive shortest paths (Bellman-Ford) on the bipartite transport network.
inline double transport_cost(const std::vector<double>& p, const std::vector<double>& q,
                             const std::vector<std::vector<double>>& d)
{
    const int n = static_cast<int>(p.size());
    const int source = 2 * n, sink = 2 * n + 1, nodes = 2 * n + 2;
    struct Edge {
        int to;
        double cap, cost;
        int rev;
    };
    std::vector<std::vector<Edge>> g(static_cast<std::size_t>(nodes));
    auto add = [&](int a, int b, double cap, double cost) {
        g[a].push_back({b, cap, cost, static_cast<int>(g[b].size())});
        g[b].push_back({a, 0.0, -cost, static_cast<int>(g[a].size()) - 1});
    };
    const double inf = std::numeric_limits<double>::infinity();
    for (int i = 0; i < n; ++i) {
        add(source, i, p[i], 0.0);
        add(n + i, sink, q[i], 0.0);
        for (int j = 0; j < n; ++j)
            add(i, n + j, inf, d[i][j]);
    }
    double total = 0, pushed = 0;
    for (int iter = 0; iter < 10 * nodes * nodes; ++iter) {
        std::vector<double> dist(nodes, inf);
        std::vector<int> prev_node(nodes, -1), prev_edge(nodes, -1);
        dist[source] = 0;
        for (int round = 0; round < nodes; ++round) {
            bool changed = false;
            for (int u = 0; u < nodes; ++u) {
                if (dist[u] == inf)
                    continue;
                for (int e = 0; e < static_cast<int>(g[u].size()); ++e) {
                    const Edge& ed = g[u][e];
                    if (ed.cap > 1e-15 && dist[u] + ed.cost < dist[ed.to] - 1e-15) {
                        dist[ed.to] = dist[u] + ed.cost;
                        prev_node[ed.to] = u;
                        prev_edge[ed.to] = e;
                        changed = true;
                    }
                }
            }
            if (!changed)
                break;
        }
        if (dist[sink] == inf)
            break;
        double f = inf;
        for (int v = sink; v != source; v = prev_node[v])
            f = std::min(f, g[prev_node[v]][prev_edge[v]].cap);
        for (int v = sink; v != source; v = prev_node[v]) {
            Edge& ed = g[prev_node[v]][prev_edge[v]];
            ed.cap -= f;
            g[v][ed.rev].cap += f;
        }
        total += f * dist[sink];
        pushed += f;
    }
    return total;
}

/// max |<M xi, xi>| over a grid of unit vectors (cos t, e^{i phi} sin t) in C^2.
inline double numerical_radius_2x2_grid(const Eigen::MatrixXcd& m, int steps)
{
    double best = 0;
    for (int a = 0; a <= steps; ++a)
        for (int b = 0; b < 2 * steps; ++b) {
            double t = 0.5 * M_PI * a / steps, ph = M_PI * b / steps;
            Eigen::Vector2cd xi(std::cos(t), std::polar(std::sin(t), ph));
            best = std::max(best, std::abs(xi.dot(m * xi)));
        }
    return best;
}

/// |S - S| in Z_n: the dimension of the Toeplitz-type system spanned by the
/// compressions of F(Z_n) to the characters in S.
inline int difference_set_size(const std::vector<int>& s, int n)
{
    std::set<int> d;
    for (int a : s)
        for (int b : s)
            d.insert(((a - b) % n + n) % n);
    return static_cast<int>(d.size());
}

/// max over vertices of { x in R^2, x >= 0, A x <= b } of c'x, by pairwise
/// intersection of the boundary lines.
inline double lp2_by_vertices(const Eigen::MatrixXd& a, const Eigen::VectorXd& b, const Eigen::Vector2d& c,
                              bool& feasible)
{
    std::vector<Eigen::Vector3d> lines;  // (a1, a2, rhs)
    for (int i = 0; i < a.rows(); ++i)
        lines.emplace_back(a(i, 0), a(i, 1), b(i));
    lines.emplace_back(-1, 0, 0);
    lines.emplace_back(0, -1, 0);
    double best = -std::numeric_limits<double>::infinity();
    feasible = false;
    for (std::size_t i = 0; i < lines.size(); ++i)
        for (std::size_t j = i + 1; j < lines.size(); ++j) {
            Eigen::Matrix2d k;
            k << lines[i](0), lines[i](1), lines[j](0), lines[j](1);
            if (std::abs(k.determinant()) < 1e-12)
                continue;
            Eigen::Vector2d x = k.inverse() * Eigen::Vector2d(lines[i](2), lines[j](2));
            bool ok = x(0) >= -1e-9 && x(1) >= -1e-9;
            for (int r = 0; r < a.rows() && ok; ++r)
                ok = a.row(r).dot(x) <= b(r) + 1e-9;
            if (ok) {
                feasible = true;
                best = std::max(best, c.dot(x));
            }
        }
    return best;
}

} // namespace oracle

#endif
