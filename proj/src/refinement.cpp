#include "gonality/graph.hpp"

#include "gonality/errors.hpp"

#include <algorithm>

namespace gonality {

std::vector<std::size_t> RefinementTrace::vertex_image() const {
    std::vector<std::size_t> image(parent.num_vertices(), child.num_vertices());
    for (std::size_t c = 0; c < vertex_origin.size(); ++c)
        if (vertex_origin[c].kind == VertexOrigin::Kind::vertex) image[vertex_origin[c].index] = c;
    return image;
}

RefinementTrace::Path RefinementTrace::restricted_path(std::size_t parent_edge) const {
    const auto& pe = parent.edge(parent_edge);
    auto image = vertex_image();
    Path path;
    std::size_t at = image[pe.u];
    path.vertices.push_back(at);
    std::vector<char> used(child.num_edges(), 0);
    const std::size_t target = image[pe.v];
    // Walk through child edges that originate from this parent edge.
    while (true) {
        std::optional<std::size_t> next;
        for (auto e : child.incident(at)) {
            if (used[e] || edge_origin[e] != parent_edge) continue;
            next = e;
            break;
        }
        if (!next) break;
        used[*next] = 1;
        path.edges.push_back(*next);
        at = child.edge(*next).other(at);
        path.vertices.push_back(at);
        if (at == target && vertex_origin[at].kind == VertexOrigin::Kind::vertex) break;
    }
    return path;
}

RefinementTrace identity_trace(const MultiGraph& g) {
    RefinementTrace t;
    t.parent = g;
    t.child = g;
    for (std::size_t v = 0; v < g.num_vertices(); ++v) t.vertex_origin.push_back(VertexOrigin::of_vertex(v));
    for (std::size_t e = 0; e < g.num_edges(); ++e) t.edge_origin.push_back(e);
    return t;
}

RefinementTrace compose(const RefinementTrace& a, const RefinementTrace& b) {
    if (!(a.child == b.parent)) throw std::invalid_argument("traces do not compose");
    RefinementTrace t;
    t.parent = a.parent;
    t.child = b.child;
    for (const auto& o : b.vertex_origin) {
        switch (o.kind) {
            case VertexOrigin::Kind::vertex:
                t.vertex_origin.push_back(a.vertex_origin[o.index]);
                break;
            case VertexOrigin::Kind::edge: {
                auto pe = a.edge_origin[o.index];
                t.vertex_origin.push_back(pe ? VertexOrigin::of_edge(*pe) : VertexOrigin::leaf());
                break;
            }
            case VertexOrigin::Kind::leaf:
                t.vertex_origin.push_back(VertexOrigin::leaf());
                break;
        }
    }
    for (const auto& o : b.edge_origin) t.edge_origin.push_back(o ? a.edge_origin[*o] : std::nullopt);
    return t;
}

Refinement subdivide_edges(const MultiGraph& g, const std::vector<int>& counts) {
    if (counts.size() != g.num_edges()) throw std::invalid_argument("one subdivision count per edge expected");
    GraphBuilder b;
    RefinementTrace t;
    t.parent = g;
    for (std::size_t v = 0; v < g.num_vertices(); ++v) {
        b.add_vertex(g.vertex_id(v));
        t.vertex_origin.push_back(VertexOrigin::of_vertex(v));
    }
    std::vector<std::vector<std::size_t>> inner(g.num_edges());
    for (std::size_t e = 0; e < g.num_edges(); ++e) {
        if (counts[e] < 0) throw std::invalid_argument("negative subdivision count");
        for (int j = 1; j <= counts[e]; ++j) {
            inner[e].push_back(b.add_vertex(b.fresh_vertex_id(g.edge(e).id + "~" + std::to_string(j))));
            t.vertex_origin.push_back(VertexOrigin::of_edge(e));
        }
    }
    for (std::size_t e = 0; e < g.num_edges(); ++e) {
        const auto& edge = g.edge(e);
        std::vector<std::size_t> chain{edge.u};
        chain.insert(chain.end(), inner[e].begin(), inner[e].end());
        chain.push_back(edge.v);
        for (std::size_t j = 0; j + 1 < chain.size(); ++j) {
            std::string id = j == 0 ? edge.id : edge.id + "." + std::to_string(j);
            b.add_edge(chain[j], chain[j + 1], b.fresh_edge_id(id));
            t.edge_origin.push_back(e);
        }
    }
    t.child = b.build();
    return {t.child, t};
}

Refinement subdivide_edge(const MultiGraph& g, std::size_t e) {
    if (e >= g.num_edges()) throw std::invalid_argument("edge index out of range");
    std::vector<int> counts(g.num_edges(), 0);
    counts[e] = 1;
    return subdivide_edges(g, counts);
}

Refinement subdivide_edge(const MultiGraph& g, const EdgeId& e) { return subdivide_edge(g, g.edge_index(e)); }

Refinement add_leaf(const MultiGraph& g, std::size_t v) {
    if (v >= g.num_vertices()) throw std::invalid_argument("vertex index out of range");
    GraphBuilder b(g);
    RefinementTrace t = identity_trace(g);
    auto leaf = b.add_vertex(b.fresh_vertex_id(g.vertex_id(v) + "^"));
    b.add_edge(v, leaf, b.fresh_edge_id(g.vertex_id(v) + "^"));
    t.vertex_origin.push_back(VertexOrigin::leaf());
    t.edge_origin.push_back(std::nullopt);
    t.child = b.build();
    return {t.child, t};
}

Refinement add_leaf(const MultiGraph& g, const VertexId& v) { return add_leaf(g, g.vertex_index(v)); }

std::optional<std::string> check_trace(const RefinementTrace& t) {
    const auto& P = t.parent;
    const auto& C = t.child;
    if (t.vertex_origin.size() != C.num_vertices() || t.edge_origin.size() != C.num_edges())
        return "origin maps do not cover the child";
    std::vector<int> hits(P.num_vertices(), 0);
    for (const auto& o : t.vertex_origin) {
        if (o.kind == VertexOrigin::Kind::vertex) {
            if (o.index >= P.num_vertices()) return "vertex origin out of range";
            ++hits[o.index];
        }
        if (o.kind == VertexOrigin::Kind::edge && o.index >= P.num_edges()) return "edge origin out of range";
    }
    for (auto h : hits)
        if (h != 1) return "parent vertex not represented exactly once";
    auto image = t.vertex_image();
    for (std::size_t e = 0; e < C.num_edges(); ++e) {
        const auto& ce = C.edge(e);
        const auto& ou = t.vertex_origin[ce.u];
        const auto& ov = t.vertex_origin[ce.v];
        if (t.edge_origin[e]) {
            auto pe = *t.edge_origin[e];
            auto ok = [&](const VertexOrigin& o, std::size_t x) {
                if (o.kind == VertexOrigin::Kind::edge) return o.index == pe;
                if (o.kind == VertexOrigin::Kind::vertex) {
                    const auto& p = P.edge(pe);
                    return x == image[p.u] || x == image[p.v];
                }
                return false;
            };
            if (!ok(ou, ce.u) || !ok(ov, ce.v)) return "subdivision edge leaves its parent edge";
        } else if (ou.kind != VertexOrigin::Kind::leaf && ov.kind != VertexOrigin::Kind::leaf) {
            return "leaf edge between two core vertices";
        }
    }
    for (std::size_t pe = 0; pe < P.num_edges(); ++pe) {
        auto path = t.restricted_path(pe);
        std::size_t owned = 0;
        for (auto origin : t.edge_origin)
            if (origin == pe) ++owned;
        if (path.edges.size() != owned || path.edges.empty()) return "restricted refinement is not a path";
        if (path.vertices.back() != image[P.edge(pe).v]) return "restricted refinement ends at the wrong vertex";
        for (std::size_t i = 1; i + 1 < path.vertices.size(); ++i) {
            const auto& o = t.vertex_origin[path.vertices[i]];
            if (o.kind != VertexOrigin::Kind::edge || o.index != pe) return "path passes through a foreign vertex";
        }
        std::vector<std::size_t> inner(path.vertices.begin() + 1, path.vertices.end() - 1);
        std::sort(inner.begin(), inner.end());
        if (std::adjacent_find(inner.begin(), inner.end()) != inner.end()) return "restricted refinement repeats a vertex";
    }
    // Leaf material: each component of the leaf edges is a tree meeting the
    // core in exactly one vertex.
    std::vector<std::size_t> leaf_edges;
    for (std::size_t e = 0; e < C.num_edges(); ++e)
        if (!t.edge_origin[e]) leaf_edges.push_back(e);
    std::vector<std::size_t> parent(C.num_vertices());
    for (std::size_t i = 0; i < parent.size(); ++i) parent[i] = i;
    auto find = [&](std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (auto e : leaf_edges) {
        auto a = find(C.edge(e).u), b = find(C.edge(e).v);
        if (a == b) return "leaf material contains a cycle";
        parent[a] = b;
    }
    std::vector<int> core_in_comp(C.num_vertices(), 0);
    for (std::size_t v = 0; v < C.num_vertices(); ++v)
        if (t.vertex_origin[v].kind != VertexOrigin::Kind::leaf) ++core_in_comp[find(v)];
    for (std::size_t v = 0; v < C.num_vertices(); ++v) {
        if (t.vertex_origin[v].kind == VertexOrigin::Kind::leaf && core_in_comp[find(v)] != 1)
            return "leaf material not attached at exactly one core vertex";
    }
    return std::nullopt;
}

RefinementTrace trace_from_origin(const MultiGraph& H, const std::vector<std::size_t>& origin) {
    if (origin.empty()) throw PreconditionError("origin set is empty");
    if (!H.is_connected()) throw PreconditionError("refined graph is not connected");
    std::vector<char> is_origin(H.num_vertices(), 0);
    for (auto v : origin) {
        if (v >= H.num_vertices()) throw std::invalid_argument("origin vertex out of range");
        if (is_origin[v]) throw std::invalid_argument("origin vertex listed twice");
        is_origin[v] = 1;
    }
    std::vector<char> alive_v(H.num_vertices(), 1), alive_e(H.num_edges(), 1);
    std::vector<int> deg(H.num_vertices());
    for (std::size_t v = 0; v < H.num_vertices(); ++v) deg[v] = H.degree(v);
    std::vector<std::size_t> stack;
    for (std::size_t v = 0; v < H.num_vertices(); ++v)
        if (!is_origin[v] && deg[v] <= 1) stack.push_back(v);
    while (!stack.empty()) {
        auto v = stack.back();
        stack.pop_back();
        if (!alive_v[v] || is_origin[v] || deg[v] > 1) continue;
        alive_v[v] = 0;
        for (auto e : H.incident(v)) {
            if (!alive_e[e]) continue;
            alive_e[e] = 0;
            auto w = H.edge(e).other(v);
            --deg[v];
            if (--deg[w] <= 1 && !is_origin[w]) stack.push_back(w);
        }
    }
    for (std::size_t v = 0; v < H.num_vertices(); ++v)
        if (alive_v[v] && !is_origin[v] && deg[v] != 2)
            throw PreconditionError("vertex '" + H.vertex_id(v) + "' is neither original nor on a subdivided edge");

    GraphBuilder pb;
    for (auto v : origin) pb.add_vertex(H.vertex_id(v));
    RefinementTrace t;
    t.child = H;
    t.vertex_origin.assign(H.num_vertices(), VertexOrigin::leaf());
    t.edge_origin.assign(H.num_edges(), std::nullopt);
    for (std::size_t i = 0; i < origin.size(); ++i) t.vertex_origin[origin[i]] = VertexOrigin::of_vertex(i);
    std::vector<char> used(H.num_edges(), 0);
    std::size_t next_parent_edge = 0;
    for (std::size_t e0 = 0; e0 < H.num_edges(); ++e0) {
        if (!alive_e[e0] || used[e0]) continue;
        // Extend the chain through e0 in both directions.
        std::vector<std::size_t> chain_edges{e0}, chain_inner;
        used[e0] = 1;
        std::size_t ends[2] = {H.edge(e0).u, H.edge(e0).v};
        std::vector<std::size_t> side[2];
        for (int s = 0; s < 2; ++s) {
            std::size_t at = ends[s];
            while (!is_origin[at]) {
                chain_inner.push_back(at);
                std::optional<std::size_t> next;
                for (auto e : H.incident(at))
                    if (alive_e[e] && !used[e]) next = e;
                if (!next) throw PreconditionError("closed chain without an original vertex");
                used[*next] = 1;
                side[s].push_back(*next);
                at = H.edge(*next).other(at);
            }
            ends[s] = at;
        }
        chain_edges.insert(chain_edges.end(), side[0].begin(), side[0].end());
        chain_edges.insert(chain_edges.end(), side[1].begin(), side[1].end());
        std::size_t pe = next_parent_edge++;
        std::size_t pu = t.vertex_origin[ends[0]].index, pv = t.vertex_origin[ends[1]].index;
        pb.add_edge(pu, pv, H.edge(e0).id);
        for (auto e : chain_edges) t.edge_origin[e] = pe;
        for (auto v : chain_inner) t.vertex_origin[v] = VertexOrigin::of_edge(pe);
    }
    t.parent = pb.build();
    return t;
}

}  // namespace gonality
