#include "gonality/rebuild.hpp"

#include "gonality/errors.hpp"
#include "gonality/spectral.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace gonality {

MeasuredTree::MeasuredTree(MultiGraph t, std::vector<Rational> nu) : tree(std::move(t)), measure(std::move(nu)) {
    if (!is_tree(tree)) throw PreconditionError("measured tree is not a tree");
    if (measure.size() != tree.num_vertices()) throw PreconditionError("measure does not match the tree");
    Rational total = 0;
    for (const auto& x : measure) {
        if (x < 0) throw PreconditionError("measure has a negative entry");
        total += x;
    }
    if (total != 1) throw PreconditionError("measure does not sum to 1");
}

namespace {

// Rooted at vertex 0: parent edge and subtree mass per vertex.
struct Rooted {
    std::vector<long> parent;
    std::vector<std::size_t> parent_edge;
    std::vector<Rational> below;
};

Rooted root(const MeasuredTree& t) {
    const auto& T = t.tree;
    const auto n = T.num_vertices();
    Rooted r{std::vector<long>(n, -1), std::vector<std::size_t>(n, 0), t.measure};
    std::vector<std::size_t> order{0};
    std::vector<char> seen(n, 0);
    seen[0] = 1;
    for (std::size_t head = 0; head < order.size(); ++head) {
        auto x = order[head];
        for (auto e : T.incident(x)) {
            auto y = T.edge(e).other(x);
            if (seen[y]) continue;
            seen[y] = 1;
            r.parent[y] = static_cast<long>(x);
            r.parent_edge[y] = e;
            order.push_back(y);
        }
    }
    for (auto it = order.rbegin(); it != order.rend(); ++it)
        if (r.parent[*it] >= 0) r.below[static_cast<std::size_t>(r.parent[*it])] += r.below[*it];
    return r;
}

// Measures of the components of T - x, keyed by the edge at x leading into them.
std::vector<std::pair<std::size_t, Rational>> components_at(const MeasuredTree& t, const Rooted& r, std::size_t x) {
    std::vector<std::pair<std::size_t, Rational>> out;
    for (auto e : t.tree.incident(x)) {
        auto y = t.tree.edge(e).other(x);
        if (r.parent[y] == static_cast<long>(x) && r.parent_edge[y] == e)
            out.emplace_back(e, r.below[y]);
        else
            out.emplace_back(e, Rational(1) - r.below[x]);
    }
    return out;
}

}  // namespace

Rational edge_size(const MeasuredTree& t, std::size_t e) {
    auto r = root(t);
    const auto& edge = t.tree.edge(e);
    auto child = r.parent[edge.v] == static_cast<long>(edge.u) && r.parent_edge[edge.v] == e ? edge.v : edge.u;
    return std::min(r.below[child], Rational(1) - r.below[child]);
}

std::vector<std::size_t> thin_vertices(const MeasuredTree& t, const Rational& c) {
    auto r = root(t);
    std::vector<std::size_t> out;
    for (std::size_t x = 0; x < t.tree.num_vertices(); ++x) {
        auto comps = components_at(t, r, x);
        if (std::all_of(comps.begin(), comps.end(), [&](const auto& p) { return p.second < c; })) out.push_back(x);
    }
    return out;
}

Thickness is_c_thick(const MeasuredTree& t, const Rational& c) {
    if (c <= 0) throw PreconditionError("thickness constant must be positive");
    auto thin = thin_vertices(t, c);
    if (thin.empty()) return {true, std::nullopt};
    return {false, thin.front()};
}

std::size_t find_large_edge(const MeasuredTree& t, const Rational& c) {
    if (!is_c_thick(t, c).thick) throw PreconditionError("tree is not thick enough for a large edge");
    auto r = root(t);
    std::vector<int> votes(t.tree.num_edges(), 0);
    for (std::size_t x = 0; x < t.tree.num_vertices(); ++x)
        for (const auto& [e, mass] : components_at(t, r, x))
            if (mass >= c) {
                if (++votes[e] == 2) return e;
                break;
            }
    throw VerificationError("orientation argument found no doubly oriented edge");
}

namespace {

struct Side {
    std::vector<std::size_t> left, right;  // component indices
    std::string method;
};

Side split(const std::vector<Rational>& mass, const std::vector<VertexId>& roots, const RebuildParams& params) {
    const Rational half_a = params.A / 2;
    auto total = [&](const std::vector<std::size_t>& s) {
        Rational sum = 0;
        for (auto i : s) sum += mass[i];
        return sum;
    };
    auto good = [&](const Side& s) { return total(s.left) > half_a && total(s.right) > half_a; };
    if (params.left) {
        Side s{{}, {}, "forced"};
        for (std::size_t i = 0; i < mass.size(); ++i) {
            bool l = std::find(params.left->begin(), params.left->end(), roots[i]) != params.left->end();
            (l ? s.left : s.right).push_back(i);
        }
        for (const auto& id : *params.left)
            if (std::find(roots.begin(), roots.end(), id) == roots.end())
                throw PreconditionError("forced left vertex '" + id + "' is not next to x0");
        if (!good(s)) throw PreconditionError("forced partition does not give both sides measure > A/2");
        return s;
    }
    std::vector<std::size_t> order(mass.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return mass[a] > mass[b]; });
    Side s{{}, {}, "greedy"};
    Rational l = 0, r = 0;
    for (auto i : order) {
        if (l <= r) {
            s.left.push_back(i);
            l += mass[i];
        } else {
            s.right.push_back(i);
            r += mass[i];
        }
    }
    std::sort(s.left.begin(), s.left.end());
    std::sort(s.right.begin(), s.right.end());
    if (good(s)) return s;
    if (mass.size() > 20) throw PreconditionError("greedy split failed and too many components for exhaustive search");
    std::optional<Side> best;
    Rational best_min = -1;
    for (std::uint32_t mask = 1; mask + 1 < (1u << mass.size()); ++mask) {
        Side t{{}, {}, "exhaustive"};
        for (std::size_t i = 0; i < mass.size(); ++i) (mask >> i & 1 ? t.left : t.right).push_back(i);
        Rational m = std::min(total(t.left), total(t.right));
        if (m > best_min) {
            best_min = m;
            best = t;
        }
    }
    if (!best || !good(*best))
        throw PreconditionError("no split of the components around x0 gives both sides measure > A/2 (best " +
                                to_string(best_min) + ")");
    return *best;
}

void check_params(const RebuildParams& p) {
    if (p.A <= 0 || p.B <= 0 || p.C <= 0) throw PreconditionError("A, B, C must be positive");
    if (p.A + p.B + p.C > 1) throw PreconditionError("A + B + C must be at most 1");
}

}  // namespace

RebuildResult rebuild(const IndexedMorphism& phi, const std::vector<std::size_t>& origin, const RebuildParams& params) {
    check_params(params);
    if (phi.variant() != Variant::finite) throw PreconditionError("rebuild needs a finite morphism");
    if (!is_tree(phi.codomain())) throw PreconditionError("rebuild needs a tree codomain");
    auto rep = verify(phi);
    if (!rep.harmonic) throw PreconditionError("rebuild needs a harmonic morphism");
    const auto& Gp = phi.domain();
    const auto& T = phi.codomain();
    auto trace = trace_from_origin(Gp, origin);
    const auto& G = trace.parent;
    if (G.num_vertices() < 2) throw PreconditionError("rebuild needs at least two original vertices");

    MeasuredTree mt(T, pushforward(phi, origin));
    for (std::size_t x = 0; x < T.num_vertices(); ++x)
        if (mt.measure[x] >= params.B)
            throw PreconditionError("condition (ii) fails: vertex '" + T.vertex_id(x) + "' has measure " +
                                    to_string(mt.measure[x]) + " >= B");
    auto thick = is_c_thick(mt, params.C / 2);
    if (thick.thick) {
        auto e = find_large_edge(mt, params.C / 2);
        throw PreconditionError("condition (i) fails: tree is C/2-thick, edge '" + T.edge(e).id + "' has size " +
                                to_string(edge_size(mt, e)));
    }
    const std::size_t x0 = *thick.witness;

    // Core G^s and its image T^s.
    std::vector<char> core_v(Gp.num_vertices(), 0), core_e(Gp.num_edges(), 0);
    for (std::size_t v = 0; v < Gp.num_vertices(); ++v)
        core_v[v] = trace.vertex_origin[v].kind != VertexOrigin::Kind::leaf;
    for (std::size_t e = 0; e < Gp.num_edges(); ++e) core_e[e] = trace.edge_origin[e].has_value();
    std::vector<char> ts_v(T.num_vertices(), 0), ts_e(T.num_edges(), 0);
    for (std::size_t v = 0; v < Gp.num_vertices(); ++v)
        if (core_v[v]) ts_v[phi.vmap()[v]] = 1;
    for (std::size_t e = 0; e < Gp.num_edges(); ++e)
        if (core_e[e]) ts_e[phi.emap()[e].target] = 1;
    if (!ts_v[x0]) throw VerificationError("x0 is not in the image of the core");

    // Components of T^s - x0, ordered by their vertex next to x0.
    std::vector<int> comp(T.num_vertices(), -1);
    std::vector<std::size_t> roots;
    std::vector<std::size_t> root_edge;
    for (auto e : T.incident(x0)) {
        if (!ts_e[e]) continue;
        roots.push_back(T.edge(e).other(x0));
        root_edge.push_back(e);
    }
    std::vector<std::size_t> by_root(roots.size());
    std::iota(by_root.begin(), by_root.end(), 0);
    std::sort(by_root.begin(), by_root.end(), [&](auto a, auto b) { return roots[a] < roots[b]; });
    {
        std::vector<std::size_t> r2, e2;
        for (auto i : by_root) {
            r2.push_back(roots[i]);
            e2.push_back(root_edge[i]);
        }
        roots = r2;
        root_edge = e2;
    }
    const std::size_t d = roots.size();
    std::vector<Rational> mass(d, Rational(0));
    std::vector<std::vector<std::size_t>> comp_vertices(d);
    for (std::size_t i = 0; i < d; ++i) {
        std::vector<std::size_t> queue{roots[i]};
        comp[roots[i]] = static_cast<int>(i);
        for (std::size_t head = 0; head < queue.size(); ++head) {
            auto x = queue[head];
            for (auto e : T.incident(x)) {
                if (!ts_e[e]) continue;
                auto y = T.edge(e).other(x);
                if (y == x0 || comp[y] >= 0) continue;
                comp[y] = static_cast<int>(i);
                queue.push_back(y);
            }
        }
        std::sort(queue.begin(), queue.end());
        comp_vertices[i] = queue;
        for (auto x : queue) mass[i] += mt.measure[x];
    }
    std::vector<VertexId> root_ids;
    for (auto y : roots) root_ids.push_back(T.vertex_id(y));
    Side side = split(mass, root_ids, params);
    std::vector<char> is_left(d, 0);
    for (auto i : side.left) is_left[i] = 1;

    // S#: all components glued at Y, plus the leaf x.
    GraphBuilder sb;
    const std::size_t sx = sb.add_vertex("x");
    const std::size_t sY = sb.add_vertex("Y");
    std::vector<std::vector<std::size_t>> t_to_s(d, std::vector<std::size_t>(T.num_vertices(), SIZE_MAX));
    std::vector<std::vector<std::size_t>> te_to_s(d, std::vector<std::size_t>(T.num_edges(), SIZE_MAX));
    const std::size_t sxY = sb.add_edge(sx, sY, "xY");
    for (std::size_t i = 0; i < d; ++i) {
        t_to_s[i][x0] = sx;
        te_to_s[i][root_edge[i]] = sxY;
        for (auto x : comp_vertices[i])
            t_to_s[i][x] = x == roots[i] ? sY : sb.add_vertex(sb.fresh_vertex_id(T.vertex_id(x)));
        for (std::size_t e = 0; e < T.num_edges(); ++e) {
            const auto& te = T.edge(e);
            if (!ts_e[e] || comp[te.u] != static_cast<int>(i) || comp[te.v] != static_cast<int>(i)) continue;
            if (te.u == x0 || te.v == x0) continue;
            te_to_s[i][e] = sb.add_edge(t_to_s[i][te.u], t_to_s[i][te.v], sb.fresh_edge_id(te.id));
        }
    }
    const MultiGraph S = sb.build();

    const auto m_phi = rep.m;
    struct Piece {
        std::vector<std::size_t> gp_vertices;  // G_i'' vertices (indices in G')
        IndexedMorphism morphism;             // phi_i# : G_i# -> S#
        RefinementTrace trace;                // G_i'' -> G_i#
    };
    std::vector<Piece> pieces;
    for (std::size_t i = 0; i < d; ++i) {
        // phi^{-1}(S_i) and its components that meet the core.
        std::vector<char> in_si(T.num_edges(), 0);
        for (std::size_t e = 0; e < T.num_edges(); ++e) in_si[e] = te_to_s[i][e] != SIZE_MAX;
        std::vector<std::size_t> uf(Gp.num_vertices());
        std::iota(uf.begin(), uf.end(), 0);
        std::function<std::size_t(std::size_t)> find = [&](std::size_t a) {
            while (uf[a] != a) a = uf[a] = uf[uf[a]];
            return a;
        };
        std::vector<std::size_t> edges;
        for (std::size_t e = 0; e < Gp.num_edges(); ++e)
            if (in_si[phi.emap()[e].target]) {
                edges.push_back(e);
                uf[find(Gp.edge(e).u)] = find(Gp.edge(e).v);
            }
        std::set<std::size_t> keep;
        for (auto e : edges)
            if (core_e[e]) keep.insert(find(Gp.edge(e).u));
        GraphBuilder hb;
        std::vector<std::size_t> local(Gp.num_vertices(), SIZE_MAX), verts;
        for (std::size_t v = 0; v < Gp.num_vertices(); ++v) {
            bool touched = false;
            for (auto e : Gp.incident(v)) touched = touched || in_si[phi.emap()[e].target];
            if (touched && keep.count(find(v))) {
                local[v] = hb.add_vertex(Gp.vertex_id(v));
                verts.push_back(v);
            }
        }
        std::vector<EdgeImage> emap;
        for (auto e : edges) {
            if (!keep.count(find(Gp.edge(e).u))) continue;
            hb.add_edge(local[Gp.edge(e).u], local[Gp.edge(e).v], Gp.edge(e).id);
            emap.push_back(EdgeImage::to_edge(te_to_s[i][phi.emap()[e].target], phi.emap()[e].index));
        }
        // S_i inside S#, as its own graph.
        GraphBuilder pb;
        std::vector<std::size_t> s_to_p(S.num_vertices(), SIZE_MAX);
        for (std::size_t s = 0; s < S.num_vertices(); ++s) {
            bool mine = s == sx || s == sY;
            for (auto x : comp_vertices[i]) mine = mine || t_to_s[i][x] == s;
            if (mine) s_to_p[s] = pb.add_vertex(S.vertex_id(s));
        }
        std::vector<std::size_t> se_to_p(S.num_edges(), SIZE_MAX);
        for (std::size_t e = 0; e < T.num_edges(); ++e)
            if (te_to_s[i][e] != SIZE_MAX) {
                auto se = te_to_s[i][e];
                se_to_p[se] = pb.add_edge(s_to_p[S.edge(se).u], s_to_p[S.edge(se).v], S.edge(se).id);
            }
        MultiGraph Si = pb.build();
        std::vector<std::size_t> vmap;
        for (auto v : verts) vmap.push_back(s_to_p[t_to_s[i][phi.vmap()[v]]]);
        for (auto& img : emap) img.target = se_to_p[img.target];
        IndexedMorphism restricted(hb.build(), Si, vmap, emap, Variant::finite);
        if (!verify(restricted).harmonic) throw VerificationError("restriction over a component is not harmonic");

        RefinementTrace st;
        st.parent = Si;
        st.child = S;
        for (std::size_t s = 0; s < S.num_vertices(); ++s)
            st.vertex_origin.push_back(s_to_p[s] != SIZE_MAX ? VertexOrigin::of_vertex(s_to_p[s]) : VertexOrigin::leaf());
        for (std::size_t e = 0; e < S.num_edges(); ++e)
            st.edge_origin.push_back(se_to_p[e] != SIZE_MAX ? std::optional<std::size_t>(se_to_p[e]) : std::nullopt);
        auto refined = refine_codomain(restricted, st);
        pieces.push_back({verts, std::move(refined.morphism), std::move(refined.domain_trace)});
    }

    // d#(v) for the vertices over x0.
    RebuildResult out{.original = G, .morphism = identity_morphism(G)};
    std::map<std::size_t, long long> L, R, Lc, Rc;
    std::set<std::size_t> central;
    for (std::size_t i = 0; i < d; ++i) {
        const auto& P = pieces[i];
        const auto& D = P.morphism.domain();
        for (std::size_t k = 0; k < P.gp_vertices.size(); ++k) {
            auto v = P.gp_vertices[k];
            if (phi.vmap()[v] != x0) continue;
            central.insert(v);
            long long all = 0, core = 0;
            for (auto e : D.incident(k)) {
                all += P.morphism.emap()[e].index;
                auto pe = P.trace.edge_origin[e];
                if (pe && core_e[Gp.edge_index(P.trace.parent.edge(*pe).id)]) core += P.morphism.emap()[e].index;
            }
            (is_left[i] ? L : R)[v] += all;
            (is_left[i] ? Lc : Rc)[v] += core;
        }
    }
    for (auto v : central) {
        out.dsharp[Gp.vertex_id(v)] = L[v] - R[v];
        out.side_sums[Gp.vertex_id(v)] = {L[v], R[v]};
        out.dsharp_core[Gp.vertex_id(v)] = Lc[v] - Rc[v];
    }

    // Glue everything over T#.
    GraphBuilder tb;
    const std::size_t X0 = tb.add_vertex("X0");
    std::vector<std::size_t> tl(S.num_vertices(), X0), tr(S.num_vertices(), X0);
    for (std::size_t s = 0; s < S.num_vertices(); ++s) {
        if (s == sx) continue;
        tl[s] = tb.add_vertex("L:" + S.vertex_id(s));
        tr[s] = tb.add_vertex("R:" + S.vertex_id(s));
    }
    std::vector<std::size_t> tel(S.num_edges()), ter(S.num_edges());
    for (std::size_t e = 0; e < S.num_edges(); ++e) {
        tel[e] = tb.add_edge(tl[S.edge(e).u], tl[S.edge(e).v], "L:" + S.edge(e).id);
        ter[e] = tb.add_edge(tr[S.edge(e).u], tr[S.edge(e).v], "R:" + S.edge(e).id);
    }
    MultiGraph Tsharp = tb.build();

    GraphBuilder gb;
    std::vector<std::size_t> vmap;
    std::vector<EdgeImage> emap;
    std::map<std::size_t, std::size_t> shared;  // G' vertex -> G# vertex
    for (std::size_t i = 0; i < d; ++i) {
        const auto& P = pieces[i];
        const auto& D = P.morphism.domain();
        const auto& side_v = is_left[i] ? tl : tr;
        const auto& side_e = is_left[i] ? tel : ter;
        std::vector<std::size_t> to_global(D.num_vertices());
        for (std::size_t k = 0; k < D.num_vertices(); ++k) {
            const auto& o = P.trace.vertex_origin[k];
            if (o.kind == VertexOrigin::Kind::vertex) {
                auto v = P.gp_vertices[o.index];
                auto it = shared.find(v);
                if (it == shared.end()) {
                    it = shared.emplace(v, gb.add_vertex(Gp.vertex_id(v))).first;
                    vmap.push_back(side_v[P.morphism.vmap()[k]]);
                }
                to_global[k] = it->second;
            } else {
                to_global[k] = gb.add_vertex(gb.fresh_vertex_id(D.vertex_id(k)));
                vmap.push_back(side_v[P.morphism.vmap()[k]]);
            }
        }
        for (std::size_t e = 0; e < D.num_edges(); ++e) {
            gb.add_edge(to_global[D.edge(e).u], to_global[D.edge(e).v], gb.fresh_edge_id(D.edge(e).id));
            emap.push_back(EdgeImage::to_edge(side_e[P.morphism.emap()[e].target], P.morphism.emap()[e].index));
        }
    }
    for (auto v : central) {
        long long dv = L[v] - R[v];
        if (dv == 0) continue;
        const auto& side_v = dv > 0 ? tr : tl;
        const auto& side_e = dv > 0 ? ter : tel;
        std::vector<std::size_t> copy(S.num_vertices());
        copy[sx] = shared.at(v);
        for (std::size_t s = 0; s < S.num_vertices(); ++s) {
            if (s == sx) continue;
            copy[s] = gb.add_vertex(gb.fresh_vertex_id(Gp.vertex_id(v) + "#" + S.vertex_id(s)));
            vmap.push_back(side_v[s]);
        }
        for (std::size_t e = 0; e < S.num_edges(); ++e) {
            gb.add_edge(copy[S.edge(e).u], copy[S.edge(e).v], gb.fresh_edge_id(Gp.vertex_id(v) + "#" + S.edge(e).id));
            emap.push_back(EdgeImage::to_edge(side_e[e], static_cast<int>(std::llabs(dv))));
        }
    }
    MultiGraph Gsharp = gb.build();
    IndexedMorphism phis(Gsharp, Tsharp, vmap, emap, Variant::finite);

    for (auto v : origin) out.origin.push_back(Gsharp.vertex_index(Gp.vertex_id(v)));
    auto rep2 = verify(phis);
    out.harmonic = rep2.harmonic;
    out.degree_before = rep.degree;
    out.degree_after = rep2.harmonic ? rep2.degree : 0;
    out.max_degree = G.max_degree();
    out.degree_ok = rep2.harmonic && out.degree_after <= static_cast<long long>(out.max_degree) * rep.degree;
    out.x0 = x0;
    out.X0 = X0;
    out.left_edge = tel[sxY];
    out.right_edge = ter[sxY];
    if (rep2.harmonic) {
        MeasuredTree ms(Tsharp, pushforward(phis, out.origin));
        out.left_size = edge_size(ms, out.left_edge);
        out.right_size = edge_size(ms, out.right_edge);
    }
    out.sizes_strict = out.left_size > params.A / 2 && out.right_size > params.A / 2;
    out.sizes_weak = out.left_size >= params.A / 2 && out.right_size >= params.A / 2;
    for (auto i : side.left) out.left_roots.push_back(root_ids[i]);
    for (auto i : side.right) out.right_roots.push_back(root_ids[i]);
    out.partition_method = side.method;
    out.refines_original = same_up_to_edge_ids(trace_from_origin(Gsharp, out.origin).parent, G);
    out.morphism = std::move(phis);
    return out;
}

PipelineBound pipeline_bound(const IndexedMorphism& phi, const std::vector<std::size_t>& origin, const Rational& A,
                             const Rational& B, const Rational& C) {
    RebuildParams params{A, B, C, std::nullopt};
    check_params(params);
    if (!verify(phi).harmonic || !is_tree(phi.codomain()))
        throw PreconditionError("pipeline bound needs a harmonic morphism to a tree");
    const auto G = trace_from_origin(phi.domain(), origin).parent;
    const Rational n(static_cast<long long>(G.num_vertices()));
    MeasuredTree mt(phi.codomain(), pushforward(phi, origin));
    if (is_c_thick(mt, C / 2).thick) {
        auto lambda = lambda1(G).lower;
        return {"thick", C / 4 * lambda * n};
    }
    for (const auto& x : mt.measure)
        if (x >= B) return {"heavy-vertex", B * n};
    auto res = rebuild(phi, origin, params);
    if (!res.ok()) throw VerificationError("rebuild postconditions failed inside the pipeline bound");
    auto lambda = lambda1(G).lower;
    return {"rebuild", A / (4 * Rational(G.max_degree())) * lambda * n};
}

}  // namespace gonality
