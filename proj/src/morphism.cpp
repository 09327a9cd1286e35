#include "gonality/morphism.hpp"

#include "gonality/errors.hpp"

#include <algorithm>
#include <numeric>

namespace gonality {

IndexedMorphism::IndexedMorphism(MultiGraph domain, MultiGraph codomain, std::vector<std::size_t> vmap,
                                 std::vector<EdgeImage> emap, Variant variant)
    : domain_(std::move(domain)),
      codomain_(std::move(codomain)),
      vmap_(std::move(vmap)),
      emap_(std::move(emap)),
      variant_(variant) {
    if (domain_.has_loops()) throw std::invalid_argument("morphism domain has loops");
    if (codomain_.has_loops()) throw std::invalid_argument("morphism codomain has loops");
    if (vmap_.size() != domain_.num_vertices()) throw std::invalid_argument("vertex map does not cover the domain");
    if (emap_.size() != domain_.num_edges()) throw std::invalid_argument("edge map does not cover the domain");
    for (auto w : vmap_)
        if (w >= codomain_.num_vertices()) throw std::invalid_argument("vertex map points outside the codomain");
    for (std::size_t e = 0; e < emap_.size(); ++e) {
        const auto& img = emap_[e];
        const auto& edge = domain_.edge(e);
        const auto x = vmap_[edge.u], y = vmap_[edge.v];
        if (img.collapsed) {
            if (variant_ == Variant::finite)
                throw std::invalid_argument("finite morphism collapses edge '" + edge.id + "'");
            if (img.index != 0) throw std::invalid_argument("collapsed edge '" + edge.id + "' must have index 0");
            if (img.target >= codomain_.num_vertices() || x != img.target || y != img.target)
                throw std::invalid_argument("collapsed edge '" + edge.id + "' is not over a single vertex");
        } else {
            if (img.index < 1) throw std::invalid_argument("edge '" + edge.id + "' has index < 1");
            if (img.target >= codomain_.num_edges()) throw std::invalid_argument("edge map points outside the codomain");
            const auto& t = codomain_.edge(img.target);
            if (!((t.u == x && t.v == y) || (t.u == y && t.v == x)))
                throw std::invalid_argument("edge '" + edge.id + "' is not mapped over its endpoints");
        }
    }
}

HarmonicityReport verify(const IndexedMorphism& phi) {
    const auto& G = phi.domain();
    const auto& T = phi.codomain();
    HarmonicityReport rep;
    rep.m.assign(G.num_vertices(), 0);
    bool local_ok = true;
    for (std::size_t v = 0; v < G.num_vertices(); ++v) {
        const auto w = phi.vmap()[v];
        const auto& star = T.incident(w);
        if (star.empty()) {
            rep.m[v] = 1;
            rep.empty_star_convention = true;
            continue;
        }
        std::map<std::size_t, long long> sums;
        for (auto t : star) sums[t] = 0;
        for (auto e : G.incident(v)) {
            const auto& img = phi.emap()[e];
            if (!img.collapsed) sums[img.target] += img.index;
        }
        auto first = sums.begin();
        rep.m[v] = first->second;
        for (auto it = std::next(first); it != sums.end(); ++it) {
            if (it->second != first->second) {
                local_ok = false;
                rep.violations.push_back({v, first->first, it->first, first->second, it->second});
            }
        }
    }
    std::vector<long long> fiber(T.num_vertices(), 0), edge_fiber(T.num_edges(), 0);
    for (std::size_t v = 0; v < G.num_vertices(); ++v) fiber[phi.vmap()[v]] += rep.m[v];
    for (std::size_t e = 0; e < G.num_edges(); ++e) {
        const auto& img = phi.emap()[e];
        if (!img.collapsed) edge_fiber[img.target] += img.index;
    }
    bool consistent = true;
    std::optional<long long> d;
    auto check = [&](long long value, const std::string& where) {
        if (!d) {
            d = value;
        } else if (*d != value) {
            consistent = false;
            rep.problems.push_back("fiber sum " + std::to_string(value) + " over " + where + " differs from " +
                                   std::to_string(*d));
        }
    };
    for (std::size_t w = 0; w < T.num_vertices(); ++w) {
        if (fiber[w] == 0 && std::find(phi.vmap().begin(), phi.vmap().end(), w) == phi.vmap().end())
            rep.problems.push_back("vertex '" + T.vertex_id(w) + "' is not in the image");
        check(fiber[w], "vertex '" + T.vertex_id(w) + "'");
    }
    for (std::size_t t = 0; t < T.num_edges(); ++t) check(edge_fiber[t], "edge '" + T.edge(t).id + "'");
    rep.degree = d.value_or(0);
    rep.non_degenerate = std::all_of(rep.m.begin(), rep.m.end(), [](long long x) { return x >= 1; });
    rep.harmonic = local_ok && consistent && rep.degree > 0;
    if (rep.degree <= 0) rep.problems.push_back("degree is not positive");
    return rep;
}

long long degree(const IndexedMorphism& phi) {
    auto rep = verify(phi);
    if (!rep.harmonic) throw VerificationError("morphism is not harmonic");
    return rep.degree;
}

bool is_tree(const MultiGraph& g) { return g.is_connected() && g.genus() == 0 && !g.has_loops(); }

IndexedMorphism identity_morphism(const MultiGraph& g) {
    std::vector<std::size_t> vmap(g.num_vertices());
    std::iota(vmap.begin(), vmap.end(), 0);
    std::vector<EdgeImage> emap;
    for (std::size_t e = 0; e < g.num_edges(); ++e) emap.push_back(EdgeImage::to_edge(e, 1));
    return IndexedMorphism(g, g, vmap, emap);
}

namespace {

// Leaf material of T' hanging at each core vertex, as (vertex, parent edge)
// pairs in breadth-first order from the anchor.
std::vector<std::vector<std::pair<std::size_t, std::size_t>>> hanging_forests(const RefinementTrace& t) {
    const auto& T = t.child;
    std::vector<std::vector<std::pair<std::size_t, std::size_t>>> out(T.num_vertices());
    for (std::size_t c = 0; c < T.num_vertices(); ++c) {
        if (t.vertex_origin[c].kind == VertexOrigin::Kind::leaf) continue;
        std::vector<std::size_t> queue{c};
        std::vector<char> seen(T.num_vertices(), 0);
        seen[c] = 1;
        for (std::size_t head = 0; head < queue.size(); ++head) {
            auto x = queue[head];
            for (auto e : T.incident(x)) {
                if (t.edge_origin[e]) continue;
                auto y = T.edge(e).other(x);
                if (seen[y]) continue;
                seen[y] = 1;
                out[c].emplace_back(y, e);
                queue.push_back(y);
            }
        }
    }
    return out;
}

void require_harmonic_tree_map(const IndexedMorphism& phi) {
    if (phi.variant() != Variant::finite) throw PreconditionError("refinement needs a finite morphism");
    if (!is_tree(phi.codomain())) throw PreconditionError("refinement needs a tree codomain");
    if (!verify(phi).harmonic) throw PreconditionError("refinement needs a harmonic morphism");
}

}  // namespace

RefinedMorphism refine_codomain(const IndexedMorphism& phi, const RefinementTrace& ct) {
    require_harmonic_tree_map(phi);
    if (!(ct.parent == phi.codomain())) throw PreconditionError("trace inconsistent with the codomain");
    if (auto why = check_trace(ct)) throw PreconditionError("codomain trace invalid: " + *why);
    const auto& G = phi.domain();
    const auto& T = phi.codomain();
    const auto& Tp = ct.child;
    const auto m = verify(phi).m;
    const auto t_image = ct.vertex_image();

    GraphBuilder b;
    RefinementTrace dt;
    dt.parent = G;
    std::vector<std::size_t> vmap;
    std::vector<EdgeImage> emap;
    std::vector<long long> mult;  // m of core vertices of G'
    for (std::size_t v = 0; v < G.num_vertices(); ++v) {
        b.add_vertex(G.vertex_id(v));
        dt.vertex_origin.push_back(VertexOrigin::of_vertex(v));
        vmap.push_back(t_image[phi.vmap()[v]]);
        mult.push_back(m[v]);
    }
    struct PendingEdge {
        std::size_t a, b, target, origin;
        int index;
        std::string id;
    };
    std::vector<PendingEdge> pending;
    for (std::size_t e = 0; e < G.num_edges(); ++e) {
        const auto& edge = G.edge(e);
        const auto& img = phi.emap()[e];
        auto path = ct.restricted_path(img.target);
        if (phi.vmap()[edge.u] != T.edge(img.target).u) {
            std::reverse(path.vertices.begin(), path.vertices.end());
            std::reverse(path.edges.begin(), path.edges.end());
        }
        std::vector<std::size_t> chain{edge.u};
        for (std::size_t j = 1; j + 1 < path.vertices.size(); ++j) {
            auto x = b.add_vertex(b.fresh_vertex_id(edge.id + "~" + std::to_string(j)));
            dt.vertex_origin.push_back(VertexOrigin::of_edge(e));
            vmap.push_back(path.vertices[j]);
            mult.push_back(img.index);
            chain.push_back(x);
        }
        chain.push_back(edge.v);
        for (std::size_t j = 0; j + 1 < chain.size(); ++j)
            pending.push_back({chain[j], chain[j + 1], path.edges[j], e, img.index,
                               j == 0 ? edge.id : edge.id + "." + std::to_string(j)});
    }
    for (const auto& p : pending) {
        b.add_edge(p.a, p.b, b.fresh_edge_id(p.id));
        dt.edge_origin.push_back(p.origin);
        emap.push_back(EdgeImage::to_edge(p.target, p.index));
    }
    std::map<std::pair<std::size_t, std::size_t>, std::size_t> leaf_copy;
    const auto forests = hanging_forests(ct);
    const std::size_t core_count = b.num_vertices();
    for (std::size_t p = 0; p < core_count; ++p) {
        const auto c = vmap[p];
        for (const auto& [leaf, via] : forests[c]) {
            auto anchor_t = Tp.edge(via).other(leaf);
            auto anchor = anchor_t == c ? p : leaf_copy.at({p, anchor_t});
            auto copy = b.add_vertex(b.fresh_vertex_id(b.vertex_id(p) + "/" + Tp.vertex_id(leaf)));
            leaf_copy[{p, leaf}] = copy;
            dt.vertex_origin.push_back(VertexOrigin::leaf());
            vmap.push_back(leaf);
            b.add_edge(anchor, copy, b.fresh_edge_id(b.vertex_id(p) + "/" + Tp.edge(via).id));
            dt.edge_origin.push_back(std::nullopt);
            emap.push_back(EdgeImage::to_edge(via, static_cast<int>(mult[p])));
        }
    }
    dt.child = b.build();
    IndexedMorphism refined(dt.child, Tp, vmap, emap, Variant::finite);
    return {std::move(refined), std::move(dt), std::move(leaf_copy)};
}

DomainRefinedMorphism refine_domain(const IndexedMorphism& phi, const RefinementTrace& ht) {
    require_harmonic_tree_map(phi);
    if (!(ht.parent == phi.domain())) throw PreconditionError("trace inconsistent with the domain");
    if (auto why = check_trace(ht)) throw PreconditionError("domain trace invalid: " + *why);
    const auto& G = phi.domain();
    const auto& T = phi.codomain();
    const auto& H = ht.child;

    std::vector<long long> segments(T.num_edges(), 1);
    std::vector<RefinementTrace::Path> hpath(G.num_edges());
    for (std::size_t e = 0; e < G.num_edges(); ++e) {
        hpath[e] = ht.restricted_path(e);
        auto& L = segments[phi.emap()[e].target];
        L = std::lcm(L, static_cast<long long>(hpath[e].edges.size()));
    }
    std::vector<int> counts;
    for (auto L : segments) counts.push_back(static_cast<int>(L - 1));
    auto sub = subdivide_edges(T, counts);
    const auto sub_image = sub.trace.vertex_image();

    // T'' point standing for each core vertex of H.
    std::vector<std::size_t> point(H.num_vertices(), sub.graph.num_vertices());
    for (std::size_t v = 0; v < G.num_vertices(); ++v) point[ht.vertex_image()[v]] = sub_image[phi.vmap()[v]];
    for (std::size_t e = 0; e < G.num_edges(); ++e) {
        const auto t = phi.emap()[e].target;
        const auto L = segments[t];
        const auto k = static_cast<long long>(hpath[e].edges.size());
        auto tpath = sub.trace.restricted_path(t);
        bool forward = phi.vmap()[G.edge(e).u] == T.edge(t).u;
        for (long long j = 1; j < k; ++j) {
            long long pos = j * (L / k);
            point[hpath[e].vertices[j]] = tpath.vertices[forward ? pos : L - pos];
        }
    }
    // Copy H's leaf material into T'' at the matching points.
    GraphBuilder tb(sub.graph);
    RefinementTrace leaf_trace = identity_trace(sub.graph);
    std::vector<std::size_t> tau(H.num_vertices(), 0);
    std::vector<std::vector<std::pair<std::size_t, std::size_t>>> h_forest(H.num_vertices());
    for (std::size_t p = 0; p < H.num_vertices(); ++p) {
        if (ht.vertex_origin[p].kind == VertexOrigin::Kind::leaf) continue;
        std::vector<std::size_t> queue{p};
        std::vector<char> seen(H.num_vertices(), 0);
        seen[p] = 1;
        tau[p] = point[p];
        for (std::size_t head = 0; head < queue.size(); ++head) {
            auto x = queue[head];
            for (auto e : H.incident(x)) {
                if (ht.edge_origin[e]) continue;
                auto y = H.edge(e).other(x);
                if (seen[y]) continue;
                seen[y] = 1;
                h_forest[p].emplace_back(y, e);
                tau[y] = tb.add_vertex(tb.fresh_vertex_id(H.vertex_id(y)));
                leaf_trace.vertex_origin.push_back(VertexOrigin::leaf());
                tb.add_edge(tau[x], tau[y], tb.fresh_edge_id(H.edge(e).id));
                leaf_trace.edge_origin.push_back(std::nullopt);
                queue.push_back(y);
            }
        }
    }
    leaf_trace.child = tb.build();
    auto codomain_trace = compose(sub.trace, leaf_trace);
    auto refined = refine_codomain(phi, codomain_trace);
    const auto& Gp = refined.morphism.domain();

    // Trace H -> G'.
    RefinementTrace out;
    out.parent = H;
    out.child = Gp;
    out.vertex_origin.assign(Gp.num_vertices(), VertexOrigin::leaf());
    out.edge_origin.assign(Gp.num_edges(), std::nullopt);
    std::vector<std::size_t> h_to_g(H.num_vertices(), Gp.num_vertices());
    auto g_image = refined.domain_trace.vertex_image();
    for (std::size_t v = 0; v < G.num_vertices(); ++v) h_to_g[ht.vertex_image()[v]] = g_image[v];
    for (std::size_t e = 0; e < G.num_edges(); ++e) {
        auto gpath = refined.domain_trace.restricted_path(e);
        const auto L = static_cast<long long>(gpath.edges.size());
        const auto k = static_cast<long long>(hpath[e].edges.size());
        for (long long j = 1; j < k; ++j) h_to_g[hpath[e].vertices[j]] = gpath.vertices[j * (L / k)];
        for (long long j = 0; j < k; ++j) {
            auto h_edge = hpath[e].edges[j];
            for (long long s = j * (L / k); s < (j + 1) * (L / k); ++s) {
                out.edge_origin[gpath.edges[s]] = h_edge;
                if (s > j * (L / k)) out.vertex_origin[gpath.vertices[s]] = VertexOrigin::of_edge(h_edge);
            }
        }
    }
    for (std::size_t p = 0; p < H.num_vertices(); ++p) {
        for (const auto& [y, e] : h_forest[p]) {
            h_to_g[y] = refined.leaf_copy.at({h_to_g[p], tau[y]});
        }
    }
    for (std::size_t x = 0; x < H.num_vertices(); ++x) out.vertex_origin[h_to_g[x]] = VertexOrigin::of_vertex(x);
    for (std::size_t p = 0; p < H.num_vertices(); ++p) {
        for (const auto& [y, e] : h_forest[p]) {
            auto a = h_to_g[H.edge(e).u], c = h_to_g[H.edge(e).v];
            for (auto ge : Gp.incident(a))
                if (Gp.edge(ge).other(a) == c) out.edge_origin[ge] = e;
        }
    }
    return {refined.morphism, out, codomain_trace};
}

std::vector<Rational> pushforward(const IndexedMorphism& phi, const std::vector<std::size_t>& origin) {
    if (origin.empty()) throw std::invalid_argument("pushforward needs a nonempty origin set");
    std::vector<Rational> nu(phi.codomain().num_vertices(), Rational(0));
    const Rational unit(Integer(1), Integer(static_cast<long long>(origin.size())));
    for (auto v : origin) nu.at(phi.vmap().at(v)) += unit;
    return nu;
}

}  // namespace gonality
