#include "gonality/graph.hpp"

#include "gonality/errors.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <queue>

namespace gonality {

std::optional<std::size_t> MultiGraph::find_vertex(const VertexId& id) const {
    auto it = vertex_lookup_.find(id);
    if (it == vertex_lookup_.end()) return std::nullopt;
    return it->second;
}

std::optional<std::size_t> MultiGraph::find_edge(const EdgeId& id) const {
    auto it = edge_lookup_.find(id);
    if (it == edge_lookup_.end()) return std::nullopt;
    return it->second;
}

std::size_t MultiGraph::vertex_index(const VertexId& id) const {
    auto v = find_vertex(id);
    if (!v) throw std::invalid_argument("unknown vertex id '" + id + "'");
    return *v;
}

std::size_t MultiGraph::edge_index(const EdgeId& id) const {
    auto e = find_edge(id);
    if (!e) throw std::invalid_argument("unknown edge id '" + id + "'");
    return *e;
}

std::vector<std::size_t> MultiGraph::neighbours(std::size_t v) const {
    std::vector<std::size_t> out;
    for (auto e : incidence_.at(v)) {
        auto w = edges_[e].other(v);
        if (w != v) out.push_back(w);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

int MultiGraph::multiplicity(std::size_t u, std::size_t v) const {
    int count = 0;
    for (auto e : incidence_.at(u))
        if (edges_[e].other(u) == v) ++count;
    return u == v ? count / 2 : count;
}

int MultiGraph::min_degree() const {
    int best = 0;
    for (std::size_t v = 0; v < num_vertices(); ++v)
        best = v == 0 ? degree(v) : std::min(best, degree(v));
    return best;
}

int MultiGraph::max_degree() const {
    int best = 0;
    for (std::size_t v = 0; v < num_vertices(); ++v) best = std::max(best, degree(v));
    return best;
}

long long MultiGraph::genus() const {
    return static_cast<long long>(num_edges()) - static_cast<long long>(num_vertices()) + 1;
}

bool MultiGraph::is_connected() const {
    if (num_vertices() == 0) return false;
    std::vector<char> seen(num_vertices(), 0);
    std::vector<std::size_t> stack{0};
    seen[0] = 1;
    std::size_t count = 1;
    while (!stack.empty()) {
        auto v = stack.back();
        stack.pop_back();
        for (auto e : incidence_[v]) {
            auto w = edges_[e].other(v);
            if (!seen[w]) {
                seen[w] = 1;
                ++count;
                stack.push_back(w);
            }
        }
    }
    return count == num_vertices();
}

bool MultiGraph::has_loops() const {
    return std::any_of(edges_.begin(), edges_.end(), [](const Edge& e) { return e.is_loop(); });
}

bool MultiGraph::has_parallel_edges() const {
    std::map<std::pair<std::size_t, std::size_t>, int> seen;
    for (const auto& e : edges_) {
        if (e.is_loop()) continue;
        if (++seen[{std::min(e.u, e.v), std::max(e.u, e.v)}] > 1) return true;
    }
    return false;
}

bool MultiGraph::is_complete() const {
    if (!is_simple()) return false;
    auto n = num_vertices();
    return num_edges() == n * (n - 1) / 2;
}

bool operator==(const MultiGraph& a, const MultiGraph& b) {
    if (a.vertex_ids_ != b.vertex_ids_ || a.edges_.size() != b.edges_.size()) return false;
    for (std::size_t i = 0; i < a.edges_.size(); ++i) {
        const auto& x = a.edges_[i];
        const auto& y = b.edges_[i];
        if (x.id != y.id) return false;
        if (!((x.u == y.u && x.v == y.v) || (x.u == y.v && x.v == y.u))) return false;
    }
    return true;
}

GraphBuilder::GraphBuilder(const MultiGraph& start) : g_(start) {}

std::size_t GraphBuilder::add_vertex(const VertexId& id) {
    if (id.empty()) throw std::invalid_argument("empty vertex id");
    if (has_vertex(id)) throw std::invalid_argument("duplicate vertex id '" + id + "'");
    std::size_t index = g_.vertex_ids_.size();
    g_.vertex_ids_.push_back(id);
    g_.incidence_.emplace_back();
    g_.vertex_lookup_.emplace(id, index);
    return index;
}

std::size_t GraphBuilder::ensure_vertex(const VertexId& id) {
    auto it = g_.vertex_lookup_.find(id);
    if (it != g_.vertex_lookup_.end()) return it->second;
    return add_vertex(id);
}

std::size_t GraphBuilder::add_edge(std::size_t u, std::size_t v, const EdgeId& id) {
    if (u >= num_vertices() || v >= num_vertices()) throw std::invalid_argument("edge endpoint out of range");
    EdgeId name = id.empty() ? fresh_edge_id("e" + std::to_string(num_edges() + 1)) : id;
    if (has_edge(name)) throw std::invalid_argument("duplicate edge id '" + name + "'");
    std::size_t index = g_.edges_.size();
    g_.edges_.push_back(Edge{u, v, name});
    g_.incidence_[u].push_back(index);
    g_.incidence_[v].push_back(index);
    g_.edge_lookup_.emplace(name, index);
    return index;
}

std::size_t GraphBuilder::add_edge(const VertexId& u, const VertexId& v, const EdgeId& id) {
    auto a = g_.find_vertex(u);
    auto b = g_.find_vertex(v);
    if (!a) throw std::invalid_argument("unknown vertex id '" + u + "'");
    if (!b) throw std::invalid_argument("unknown vertex id '" + v + "'");
    return add_edge(*a, *b, id);
}

VertexId GraphBuilder::fresh_vertex_id(const std::string& base) const {
    if (!has_vertex(base)) return base;
    for (int k = 2;; ++k) {
        auto candidate = base + "_" + std::to_string(k);
        if (!has_vertex(candidate)) return candidate;
    }
}

EdgeId GraphBuilder::fresh_edge_id(const std::string& base) const {
    if (!has_edge(base)) return base;
    for (int k = 2;; ++k) {
        auto candidate = base + "_" + std::to_string(k);
        if (!has_edge(candidate)) return candidate;
    }
}

int degree(const MultiGraph& g, const VertexId& v) { return g.degree(g.vertex_index(v)); }

long long genus(const MultiGraph& g) { return g.genus(); }

long long volume(const MultiGraph& g, const std::vector<VertexId>& subset) {
    long long total = 0;
    for (const auto& v : subset) total += g.degree(g.vertex_index(v));
    return total;
}

long long volume(const MultiGraph& g) { return 2 * static_cast<long long>(g.num_edges()); }

IntMatrix laplacian(const MultiGraph& g) {
    auto n = g.num_vertices();
    IntMatrix L(n, std::vector<long long>(n, 0));
    for (const auto& e : g.edges()) {
        if (e.is_loop()) continue;  // +2 on the diagonal of D and of A cancel
        L[e.u][e.u] += 1;
        L[e.v][e.v] += 1;
        L[e.u][e.v] -= 1;
        L[e.v][e.u] -= 1;
    }
    return L;
}

RationalMatrix normalized_laplacian(const MultiGraph& g) {
    auto L = laplacian(g);
    auto n = g.num_vertices();
    RationalMatrix N(n, std::vector<Rational>(n));
    for (std::size_t i = 0; i < n; ++i) {
        if (g.degree(i) == 0) throw PreconditionError("normalized Laplacian needs no isolated vertices");
        for (std::size_t j = 0; j < n; ++j) N[i][j] = Rational(L[i][j]) / g.degree(i);
    }
    return N;
}

bool is_stable(const MultiGraph& g) { return g.num_vertices() > 0 && g.min_degree() >= 3; }

MultiGraph stable_model(const MultiGraph& g) {
    if (!g.is_connected()) throw PreconditionError("stable model needs a connected graph");
    if (g.genus() < 2) throw PreconditionError("stable model needs genus >= 2");
    struct E {
        std::size_t u, v;
        EdgeId id;
        bool alive;
    };
    std::vector<E> edges;
    for (const auto& e : g.edges()) edges.push_back({e.u, e.v, e.id, true});
    std::vector<char> alive(g.num_vertices(), 1);
    auto incident = [&](std::size_t v) {
        std::vector<std::size_t> out;
        for (std::size_t i = 0; i < edges.size(); ++i) {
            if (!edges[i].alive) continue;
            if (edges[i].u == v) out.push_back(i);
            if (edges[i].v == v) out.push_back(i);
        }
        return out;
    };
    for (bool changed = true; changed;) {
        changed = false;
        for (std::size_t v = 0; v < g.num_vertices() && !changed; ++v) {
            if (!alive[v]) continue;
            auto inc = incident(v);
            if (inc.size() == 1) {
                edges[inc[0]].alive = false;
                alive[v] = 0;
                changed = true;
            } else if (inc.size() == 2 && inc[0] != inc[1]) {
                auto& a = edges[inc[0]];
                auto& b = edges[inc[1]];
                std::size_t x = a.u == v ? a.v : a.u;
                std::size_t y = b.u == v ? b.v : b.u;
                a.u = x;
                a.v = y;
                b.alive = false;
                alive[v] = 0;
                changed = true;
            }
        }
    }
    GraphBuilder out;
    for (std::size_t v = 0; v < g.num_vertices(); ++v)
        if (alive[v]) out.add_vertex(g.vertex_id(v));
    for (const auto& e : edges)
        if (e.alive) out.add_edge(g.vertex_id(e.u), g.vertex_id(e.v), e.id);
    return out.build();
}

bool same_up_to_edge_ids(const MultiGraph& a, const MultiGraph& b) {
    if (a.vertex_ids() != b.vertex_ids() || a.num_edges() != b.num_edges()) return false;
    auto pairs = [](const MultiGraph& g) {
        std::vector<std::pair<std::size_t, std::size_t>> out;
        for (const auto& e : g.edges()) out.emplace_back(std::min(e.u, e.v), std::max(e.u, e.v));
        std::sort(out.begin(), out.end());
        return out;
    };
    return pairs(a) == pairs(b);
}

std::vector<std::vector<std::size_t>> connected_components(const MultiGraph& g) {
    std::vector<int> comp(g.num_vertices(), -1);
    std::vector<std::vector<std::size_t>> out;
    for (std::size_t s = 0; s < g.num_vertices(); ++s) {
        if (comp[s] >= 0) continue;
        int c = static_cast<int>(out.size());
        out.emplace_back();
        std::vector<std::size_t> stack{s};
        comp[s] = c;
        while (!stack.empty()) {
            auto v = stack.back();
            stack.pop_back();
            out.back().push_back(v);
            for (auto e : g.incident(v)) {
                auto w = g.edge(e).other(v);
                if (comp[w] < 0) {
                    comp[w] = c;
                    stack.push_back(w);
                }
            }
        }
        std::sort(out.back().begin(), out.back().end());
    }
    return out;
}

MultiGraph edge_subgraph(const MultiGraph& g, const std::vector<std::size_t>& edges,
                         const std::vector<std::size_t>& extra_vertices) {
    std::vector<char> keep(g.num_vertices(), 0);
    for (auto e : edges) keep[g.edge(e).u] = keep[g.edge(e).v] = 1;
    for (auto v : extra_vertices) keep[v] = 1;
    std::vector<std::size_t> sorted_edges = edges;
    std::sort(sorted_edges.begin(), sorted_edges.end());
    GraphBuilder b;
    for (std::size_t v = 0; v < g.num_vertices(); ++v)
        if (keep[v]) b.add_vertex(g.vertex_id(v));
    for (auto e : sorted_edges) {
        const auto& edge = g.edge(e);
        b.add_edge(g.vertex_id(edge.u), g.vertex_id(edge.v), edge.id);
    }
    return b.build();
}

}  // namespace gonality
