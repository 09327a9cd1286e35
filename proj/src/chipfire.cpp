#include "gonality/chipfire.hpp"

#include "gonality/errors.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <queue>
#include <set>

namespace gonality {

long long Divisor::degree() const { return std::accumulate(chips.begin(), chips.end(), 0LL); }

bool Divisor::is_effective() const {
    return std::all_of(chips.begin(), chips.end(), [](long long c) { return c >= 0; });
}

Divisor make_divisor(const MultiGraph& g, const std::vector<VertexId>& multiset) {
    Divisor d{std::vector<long long>(g.num_vertices(), 0)};
    for (const auto& v : multiset) ++d.chips[g.vertex_index(v)];
    return d;
}

Divisor fire(const MultiGraph& g, const Divisor& d, const std::vector<std::size_t>& set) {
    if (d.chips.size() != g.num_vertices()) throw PreconditionError("divisor does not match the graph");
    std::vector<char> in(g.num_vertices(), 0);
    for (auto v : set) in.at(v) = 1;
    Divisor out = d;
    for (const auto& e : g.edges()) {
        if (in[e.u] == in[e.v]) continue;
        auto from = in[e.u] ? e.u : e.v;
        --out.chips[from];
        ++out.chips[e.other(from)];
    }
    return out;
}

namespace {

std::vector<int> bfs_layers(const MultiGraph& g, std::size_t q) {
    std::vector<int> dist(g.num_vertices(), -1);
    std::queue<std::size_t> queue;
    dist[q] = 0;
    queue.push(q);
    while (!queue.empty()) {
        auto v = queue.front();
        queue.pop();
        for (auto w : g.neighbours(v))
            if (dist[w] < 0) {
                dist[w] = dist[v] + 1;
                queue.push(w);
            }
    }
    return dist;
}

// Vertices that do not burn when fire spreads from q; empty means reduced.
std::vector<std::size_t> unburnt(const MultiGraph& g, const Divisor& d, std::size_t q) {
    const auto n = g.num_vertices();
    std::vector<char> burnt(n, 0);
    std::vector<long long> pressure(n, 0);
    std::queue<std::size_t> queue;
    burnt[q] = 1;
    queue.push(q);
    while (!queue.empty()) {
        auto v = queue.front();
        queue.pop();
        for (auto e : g.incident(v)) {
            auto w = g.edge(e).other(v);
            if (burnt[w]) continue;
            if (++pressure[w] > d.chips[w]) {
                burnt[w] = 1;
                queue.push(w);
            }
        }
    }
    std::vector<std::size_t> rest;
    for (std::size_t v = 0; v < n; ++v)
        if (!burnt[v]) rest.push_back(v);
    return rest;
}

}  // namespace

Divisor q_reduce(const MultiGraph& g, const Divisor& d, std::size_t q) {
    if (!g.is_connected()) throw PreconditionError("chip-firing needs a connected graph");
    if (d.chips.size() != g.num_vertices()) throw PreconditionError("divisor does not match the graph");
    Divisor cur = d;
    // Clear debt off q, farthest layer first: firing everything closer to q
    // pays each vertex of the layer without touching layers beyond it.
    auto dist = bfs_layers(g, q);
    int far = *std::max_element(dist.begin(), dist.end());
    for (int k = far; k >= 1; --k) {
        std::vector<std::size_t> closer;
        for (std::size_t v = 0; v < g.num_vertices(); ++v)
            if (dist[v] < k) closer.push_back(v);
        auto in_debt = [&] {
            for (std::size_t v = 0; v < g.num_vertices(); ++v)
                if (dist[v] == k && cur.chips[v] < 0) return true;
            return false;
        };
        while (in_debt()) cur = fire(g, cur, closer);
    }
    while (true) {
        auto rest = unburnt(g, cur, q);
        if (rest.empty()) return cur;
        cur = fire(g, cur, rest);
    }
}

bool is_q_reduced(const MultiGraph& g, const Divisor& d, std::size_t q) {
    for (std::size_t v = 0; v < g.num_vertices(); ++v)
        if (v != q && d.chips[v] < 0) return false;
    return unburnt(g, d, q).empty();
}

bool has_positive_rank(const MultiGraph& g, const Divisor& d) {
    for (std::size_t q = 0; q < g.num_vertices(); ++q) {
        if (d.chips[q] >= 1 && d.is_effective()) continue;
        if (q_reduce(g, d, q).chips[q] < 1) return false;
    }
    return true;
}

DgonResult divisorial_gonality(const MultiGraph& g, std::optional<int> max_d) {
    if (!g.is_connected()) throw PreconditionError("divisorial gonality needs a connected graph");
    const auto n = g.num_vertices();
    DgonResult out;
    out.max_d = max_d.value_or(static_cast<int>(n));
    for (int deg = 1; deg <= out.max_d; ++deg) {
        std::set<std::vector<long long>> seen;
        Divisor d{std::vector<long long>(n, 0)};
        std::optional<Divisor> found;
        // Stars and bars over vertices in index order.
        std::function<void(std::size_t, int)> rec = [&](std::size_t v, int left) {
            if (found) return;
            if (v + 1 == n) {
                d.chips[v] = left;
                if (seen.insert(q_reduce(g, d, 0).chips).second && has_positive_rank(g, d)) found = d;
                return;
            }
            for (int c = left; c >= 0 && !found; --c) {
                d.chips[v] = c;
                rec(v + 1, left - c);
            }
            d.chips[v] = 0;
        };
        rec(0, deg);
        if (found) {
            out.value = deg;
            out.witness = std::move(found);
            return out;
        }
    }
    return out;
}

}  // namespace gonality
