#include "gonality/graph.hpp"

#include "gonality/errors.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <limits>
#include <unordered_map>

namespace gonality {

int edge_connectivity(const MultiGraph& g) {
    const auto n = g.num_vertices();
    if (n < 2) throw PreconditionError("edge connectivity needs at least two vertices");
    if (!g.is_connected()) throw PreconditionError("edge connectivity needs a connected graph");
    std::vector<std::vector<long long>> w(n, std::vector<long long>(n, 0));
    for (const auto& e : g.edges()) {
        if (e.is_loop()) continue;
        ++w[e.u][e.v];
        ++w[e.v][e.u];
    }
    std::vector<std::size_t> active(n);
    for (std::size_t i = 0; i < n; ++i) active[i] = i;
    long long best = std::numeric_limits<long long>::max();
    while (active.size() > 1) {
        std::vector<long long> attach(n, 0);
        std::vector<char> added(n, 0);
        std::size_t prev = active[0], last = active[0];
        for (std::size_t step = 0; step < active.size(); ++step) {
            std::size_t pick = n;
            for (auto v : active)
                if (!added[v] && (pick == n || attach[v] > attach[pick])) pick = v;
            added[pick] = 1;
            prev = last;
            last = pick;
            if (step + 1 == active.size()) best = std::min(best, attach[pick]);
            for (auto v : active)
                if (!added[v]) attach[v] += w[pick][v];
        }
        for (auto v : active) {
            if (v == prev || v == last) continue;
            w[prev][v] += w[last][v];
            w[v][prev] = w[prev][v];
        }
        active.erase(std::find(active.begin(), active.end(), last));
    }
    return static_cast<int>(best);
}

namespace {

using Mask = std::uint32_t;

int popcount(Mask m) { return std::popcount(m); }

// Maximum minimum degree over the subgraphs met while peeling off
// minimum-degree vertices; a lower bound on treewidth.
int mmd_bound(const std::vector<Mask>& adj, Mask rem) {
    int best = 0;
    while (rem) {
        int low = 1 << 30;
        int who = -1;
        for (Mask m = rem; m; m &= m - 1) {
            int v = std::countr_zero(m);
            int d = popcount(adj[v] & rem);
            if (d < low) {
                low = d;
                who = v;
            }
        }
        best = std::max(best, low);
        rem &= ~(Mask(1) << who);
    }
    return best;
}

void eliminate(std::vector<Mask>& adj, Mask rem, int v) {
    Mask nb = adj[v] & rem;
    for (Mask m = nb; m; m &= m - 1) {
        int w = std::countr_zero(m);
        adj[w] |= nb & ~(Mask(1) << w);
    }
}

int min_fill_width(std::vector<Mask> adj, Mask rem) {
    int width = 0;
    while (rem) {
        int who = -1;
        long best_fill = -1;
        for (Mask m = rem; m; m &= m - 1) {
            int v = std::countr_zero(m);
            Mask nb = adj[v] & rem;
            long fill = 0;
            for (Mask a = nb; a; a &= a - 1) {
                int x = std::countr_zero(a);
                fill += popcount(nb & ~adj[x] & ~(Mask(1) << x));
            }
            if (who < 0 || fill < best_fill) {
                who = v;
                best_fill = fill;
            }
        }
        width = std::max(width, popcount(adj[who] & rem));
        eliminate(adj, rem, who);
        rem &= ~(Mask(1) << who);
    }
    return width;
}

struct TreewidthSearch {
    int best;
    std::unordered_map<Mask, int> seen;

    void run(const std::vector<Mask>& adj, Mask rem, int width) {
        int left = popcount(rem);
        if (left <= width + 1) {
            best = std::min(best, std::max(width, left - 1));
            return;
        }
        if (std::max(width, mmd_bound(adj, rem)) >= best) return;
        auto it = seen.find(rem);
        if (it != seen.end() && it->second <= width) return;
        seen[rem] = width;
        for (Mask m = rem; m; m &= m - 1) {
            int v = std::countr_zero(m);
            Mask nb = adj[v] & rem;
            bool clique = true;
            for (Mask a = nb; a && clique; a &= a - 1) {
                int x = std::countr_zero(a);
                if ((nb & ~adj[x] & ~(Mask(1) << x)) != 0) clique = false;
            }
            if (clique) {
                // Eliminating a simplicial vertex first is always optimal.
                run(adj, rem & ~(Mask(1) << v), std::max(width, popcount(nb)));
                return;
            }
        }
        for (Mask m = rem; m; m &= m - 1) {
            int v = std::countr_zero(m);
            int w = std::max(width, popcount(adj[v] & rem));
            if (w >= best) continue;
            auto next = adj;
            eliminate(next, rem, v);
            run(next, rem & ~(Mask(1) << v), w);
        }
    }
};

}  // namespace

int simple_treewidth(const MultiGraph& g, std::size_t cap) {
    const auto n = g.num_vertices();
    if (n > cap || n > 32) throw PreconditionError("treewidth: graph exceeds the size cap of " + std::to_string(cap));
    if (n <= 1) return 0;
    std::vector<Mask> adj(n, 0);
    for (const auto& e : g.edges()) {
        if (e.is_loop()) continue;
        adj[e.u] |= Mask(1) << e.v;
        adj[e.v] |= Mask(1) << e.u;
    }
    Mask all = n == 32 ? ~Mask(0) : ((Mask(1) << n) - 1);
    TreewidthSearch search{min_fill_width(adj, all), {}};
    search.run(adj, all, 0);
    return search.best;
}

int treewidth(const MultiGraph& g, std::size_t cap) {
    int tw = simple_treewidth(g, cap);
    if (g.has_parallel_edges()) tw = std::max(tw, 2);
    return tw;
}

namespace {

struct CanonicalSearch {
    std::size_t n;
    std::vector<std::vector<int>> mult;
    std::vector<std::pair<int, int>> invariant;  // (degree, loops)
    std::vector<std::pair<int, int>> slot_invariant;
    std::vector<int> best;
    std::vector<int> current;
    std::vector<std::size_t> placed;
    std::vector<char> used;

    void run(std::size_t k, bool smaller) {
        if (k == n) {
            if (best.empty() || smaller) best = current;
            return;
        }
        for (std::size_t v = 0; v < n; ++v) {
            if (used[v] || invariant[v] != slot_invariant[k]) continue;
            std::size_t offset = current.size();
            for (std::size_t i = 0; i < k; ++i) current.push_back(mult[v][placed[i]]);
            current.push_back(mult[v][v]);
            bool now_smaller = smaller;
            bool prune = false;
            if (!best.empty() && !smaller) {
                for (std::size_t i = offset; i < current.size(); ++i) {
                    if (current[i] < best[i]) {
                        now_smaller = true;
                        break;
                    }
                    if (current[i] > best[i]) {
                        prune = true;
                        break;
                    }
                }
            }
            if (!prune) {
                used[v] = 1;
                placed.push_back(v);
                run(k + 1, now_smaller);
                placed.pop_back();
                used[v] = 0;
            }
            current.resize(offset);
        }
    }
};

}  // namespace

std::vector<int> canonical_form(const MultiGraph& g) {
    CanonicalSearch s;
    s.n = g.num_vertices();
    s.mult.assign(s.n, std::vector<int>(s.n, 0));
    for (std::size_t u = 0; u < s.n; ++u)
        for (std::size_t v = 0; v < s.n; ++v) s.mult[u][v] = g.multiplicity(u, v);
    for (std::size_t v = 0; v < s.n; ++v) s.invariant.emplace_back(g.degree(v), s.mult[v][v]);
    s.slot_invariant = s.invariant;
    std::sort(s.slot_invariant.begin(), s.slot_invariant.end());
    s.used.assign(s.n, 0);
    s.run(0, false);
    std::vector<int> out{static_cast<int>(s.n)};
    for (const auto& [d, l] : s.slot_invariant) {
        out.push_back(d);
        out.push_back(l);
    }
    out.insert(out.end(), s.best.begin(), s.best.end());
    return out;
}

bool isomorphic(const MultiGraph& a, const MultiGraph& b) {
    if (a.num_vertices() != b.num_vertices() || a.num_edges() != b.num_edges()) return false;
    return canonical_form(a) == canonical_form(b);
}

}  // namespace gonality
