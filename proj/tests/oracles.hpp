#pragma once

// Brute-force reference implementations used only by the tests. Each one is
// written independently of the library algorithm it checks.

#include "gonality/chipfire.hpp"
#include "gonality/graph.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <functional>
#include <limits>
#include <map>
#include <numeric>
#include <set>
#include <vector>

namespace oracle {

using gonality::MultiGraph;

// Minimum cut over all vertex subsets.
inline int edge_connectivity(const MultiGraph& g) {
    const auto n = g.num_vertices();
    if (n < 2) return 0;
    int best = std::numeric_limits<int>::max();
    for (std::uint32_t mask = 1; mask + 1 < (1u << n); ++mask) {
        if (!(mask & 1)) continue;  // fix vertex 0 inside S
        int cut = 0;
        for (const auto& e : g.edges())
            if (((mask >> e.u) & 1) != ((mask >> e.v) & 1)) ++cut;
        best = std::min(best, cut);
    }
    return best;
}

// Treewidth of a simple graph by the subset recurrence
// TW(S) = min_v max(TW(S - v), |Q(S - v, v)|).
inline int simple_treewidth(int n, const std::vector<std::vector<char>>& adj) {
    if (n <= 1) return 0;
    const std::uint32_t full = (1u << n) - 1;
    auto q = [&](std::uint32_t s, int v) {
        // Vertices outside s + v reachable from v through s.
        std::uint32_t seen = 1u << v, out = 0;
        std::vector<int> stack{v};
        while (!stack.empty()) {
            int x = stack.back();
            stack.pop_back();
            for (int y = 0; y < n; ++y) {
                if (!adj[x][y] || (seen >> y & 1)) continue;
                seen |= 1u << y;
                if (s >> y & 1) stack.push_back(y);
                else out |= 1u << y;
            }
        }
        return __builtin_popcount(out);
    };
    std::vector<int> tw(full + 1, std::numeric_limits<int>::max());
    tw[0] = std::numeric_limits<int>::min();
    for (std::uint32_t s = 1; s <= full; ++s)
        for (int v = 0; v < n; ++v)
            if (s >> v & 1) tw[s] = std::min(tw[s], std::max(tw[s & ~(1u << v)], q(s & ~(1u << v), v)));
    return tw[full];
}

// Treewidth after subdividing every parallel copy; loops do not matter.
inline int treewidth(const MultiGraph& g) {
    int n = static_cast<int>(g.num_vertices());
    std::vector<std::pair<int, int>> simple;
    std::set<std::pair<int, int>> seen;
    for (const auto& e : g.edges()) {
        int u = static_cast<int>(std::min(e.u, e.v)), v = static_cast<int>(std::max(e.u, e.v));
        if (u != v && seen.insert({u, v}).second) {
            simple.emplace_back(u, v);
        } else if (u != v) {
            int m = n++;
            simple.insert(simple.end(), {{u, m}, {m, v}});
        }
    }
    std::vector<std::vector<char>> adj(static_cast<std::size_t>(n), std::vector<char>(static_cast<std::size_t>(n), 0));
    for (auto [u, v] : simple) adj[u][v] = adj[v][u] = 1;
    return oracle::simple_treewidth(n, adj);
}

inline Eigen::MatrixXd laplacian(const MultiGraph& g) {
    const auto n = static_cast<Eigen::Index>(g.num_vertices());
    Eigen::MatrixXd L = Eigen::MatrixXd::Zero(n, n);
    for (const auto& e : g.edges()) {
        if (e.is_loop()) continue;
        auto u = static_cast<Eigen::Index>(e.u), v = static_cast<Eigen::Index>(e.v);
        L(u, u) += 1;
        L(v, v) += 1;
        L(u, v) -= 1;
        L(v, u) -= 1;
    }
    return L;
}

// Second smallest eigenvalue of L, or of D^{-1/2} L D^{-1/2}.
inline double lambda1(const MultiGraph& g, bool normalized) {
    Eigen::MatrixXd L = oracle::laplacian(g);
    if (normalized) {
        for (Eigen::Index i = 0; i < L.rows(); ++i)
            for (Eigen::Index j = 0; j < L.cols(); ++j)
                L(i, j) /= std::sqrt(static_cast<double>(g.degree(static_cast<std::size_t>(i))) *
                                     g.degree(static_cast<std::size_t>(j)));
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(L);
    return es.eigenvalues()(1);
}

// ---- divisor equivalence through the lattice of the reduced Laplacian ----

using IntMat = std::vector<std::vector<long long>>;

inline long long det(const IntMat& m) {
    const auto n = m.size();
    if (n == 0) return 1;
    if (n == 1) return m[0][0];
    long long out = 0;
    for (std::size_t j = 0; j < n; ++j) {
        IntMat minor;
        for (std::size_t i = 1; i < n; ++i) {
            std::vector<long long> row;
            for (std::size_t k = 0; k < n; ++k)
                if (k != j) row.push_back(m[i][k]);
            minor.push_back(row);
        }
        out += (j % 2 ? -1 : 1) * m[0][j] * det(minor);
    }
    return out;
}

struct Lattice {
    IntMat adjugate;
    long long determinant = 1;
};

// Reduced Laplacian with the last vertex removed.
inline Lattice lattice(const MultiGraph& g) {
    const auto n = g.num_vertices() - 1;
    IntMat L0(n, std::vector<long long>(n, 0));
    for (const auto& e : g.edges()) {
        if (e.is_loop()) continue;
        if (e.u < n) L0[e.u][e.u] += 1;
        if (e.v < n) L0[e.v][e.v] += 1;
        if (e.u < n && e.v < n) {
            L0[e.u][e.v] -= 1;
            L0[e.v][e.u] -= 1;
        }
    }
    Lattice lat;
    lat.determinant = det(L0);
    lat.adjugate.assign(n, std::vector<long long>(n, 0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            IntMat minor;
            for (std::size_t r = 0; r < n; ++r) {
                if (r == j) continue;
                std::vector<long long> row;
                for (std::size_t c = 0; c < n; ++c)
                    if (c != i) row.push_back(L0[r][c]);
                minor.push_back(row);
            }
            lat.adjugate[i][j] = ((i + j) % 2 ? -1 : 1) * det(minor);
        }
    return lat;
}

// D ~ E iff D - E = L x for an integer x.
inline bool equivalent(const Lattice& lat, const std::vector<long long>& d, const std::vector<long long>& e) {
    long long total = 0;
    for (std::size_t i = 0; i < d.size(); ++i) total += d[i] - e[i];
    if (total != 0) return false;
    const auto n = lat.adjugate.size();
    for (std::size_t i = 0; i < n; ++i) {
        long long s = 0;
        for (std::size_t j = 0; j < n; ++j) s += lat.adjugate[i][j] * (d[j] - e[j]);
        if (s % lat.determinant != 0) return false;
    }
    return true;
}

inline void for_each_effective(std::size_t n, long long degree, const std::function<void(const std::vector<long long>&)>& f) {
    std::vector<long long> d(n, 0);
    std::function<void(std::size_t, long long)> rec = [&](std::size_t i, long long left) {
        if (i + 1 == n) {
            d[i] = left;
            f(d);
            return;
        }
        for (long long k = 0; k <= left; ++k) {
            d[i] = k;
            rec(i + 1, left - k);
        }
    };
    if (n > 0) rec(0, degree);
}

// For every q, D - q is equivalent to an effective divisor; found by
// scanning all effective divisors of degree deg(D) - 1.
inline bool has_positive_rank(const MultiGraph& g, const std::vector<long long>& d) {
    long long deg = std::accumulate(d.begin(), d.end(), 0LL);
    if (deg < 1) return false;
    auto lat = lattice(g);
    for (std::size_t q = 0; q < g.num_vertices(); ++q) {
        auto dq = d;
        dq[q] -= 1;
        bool found = false;
        for_each_effective(g.num_vertices(), deg - 1, [&](const std::vector<long long>& e) {
            if (!found && equivalent(lat, dq, e)) found = true;
        });
        if (!found) return false;
    }
    return true;
}

inline int dgon(const MultiGraph& g) {
    for (long long k = 1;; ++k) {
        bool found = false;
        for_each_effective(g.num_vertices(), k, [&](const std::vector<long long>& d) {
            if (!found && oracle::has_positive_rank(g, d)) found = true;
        });
        if (found) return static_cast<int>(k);
    }
}

// ---- gonality by enumerating fibers and indices ----

// Least degree of a non-degenerate harmonic morphism from g (loopless,
// connected, at least two vertices) to a tree with at least one edge.
inline long long gon(const MultiGraph& g, long long max_degree) {
    const int n = static_cast<int>(g.num_vertices());
    long long best = std::numeric_limits<long long>::max();
    std::vector<int> cell(static_cast<std::size_t>(n), 0);
    std::function<void(int, int)> partitions = [&](int i, int k) {
        if (i == n) {
            if (k < 2) return;
            // Quotient must be a simple tree.
            std::set<std::pair<int, int>> qedges;
            std::vector<std::size_t> crossing;
            for (std::size_t e = 0; e < g.num_edges(); ++e) {
                int a = cell[g.edge(e).u], b = cell[g.edge(e).v];
                if (a == b) continue;
                qedges.insert({std::min(a, b), std::max(a, b)});
                crossing.push_back(e);
            }
            if (static_cast<int>(qedges.size()) != k - 1) return;
            std::vector<int> uf(static_cast<std::size_t>(k));
            std::iota(uf.begin(), uf.end(), 0);
            std::function<int(int)> find = [&](int x) { return uf[x] == x ? x : uf[x] = find(uf[x]); };
            for (auto [a, b] : qedges) uf[find(a)] = find(b);
            for (int c = 0; c < k; ++c)
                if (find(c) != find(0)) return;
            std::vector<std::vector<int>> tnb(static_cast<std::size_t>(k));
            for (auto [a, b] : qedges) {
                tnb[a].push_back(b);
                tnb[b].push_back(a);
            }
            // Indices on crossing edges, one T-edge sum fixed to d.
            for (long long d = 1; d <= std::min(max_degree, best - 1); ++d) {
                std::vector<long long> r(crossing.size(), 0);
                bool ok = false;
                std::function<void(std::size_t)> assign = [&](std::size_t j) {
                    if (ok) return;
                    if (j == crossing.size()) {
                        std::map<std::pair<int, int>, long long> tsum;
                        for (std::size_t t = 0; t < crossing.size(); ++t) {
                            int a = cell[g.edge(crossing[t]).u], b = cell[g.edge(crossing[t]).v];
                            tsum[{std::min(a, b), std::max(a, b)}] += r[t];
                        }
                        for (const auto& [key, s] : tsum)
                            if (s != d) return;
                        for (int v = 0; v < n; ++v) {
                            std::map<int, long long> towards;
                            for (int c : tnb[cell[v]]) towards[c] = 0;
                            for (std::size_t t = 0; t < crossing.size(); ++t) {
                                const auto& e = g.edge(crossing[t]);
                                if (static_cast<int>(e.u) == v) towards[cell[e.v]] += r[t];
                                if (static_cast<int>(e.v) == v) towards[cell[e.u]] += r[t];
                            }
                            long long m = towards.begin()->second;
                            if (m < 1) return;
                            for (const auto& [c, s] : towards)
                                if (s != m) return;
                        }
                        ok = true;
                        return;
                    }
                    for (long long x = 1; x <= d; ++x) {
                        r[j] = x;
                        assign(j + 1);
                    }
                };
                assign(0);
                if (ok) {
                    best = d;
                    break;
                }
            }
            return;
        }
        for (int c = 0; c <= k; ++c) {
            cell[i] = c;
            partitions(i + 1, std::max(k, c + 1));
        }
    };
    partitions(0, 0);
    return best;
}

}  // namespace oracle
