#include "gonality/corpus.hpp"
#include "gonality/errors.hpp"
#include "gonality/morphism.hpp"
#include "gonality/search.hpp"

#include <doctest.h>

using namespace gonality;

namespace {

// Subdivided B_n onto the star with n leaves, all indices 1.
IndexedMorphism banana_star(int n) {
    auto sub = subdivide_edges(banana_graph(n), std::vector<int>(static_cast<std::size_t>(n), 1));
    const auto& G = sub.graph;
    GraphBuilder t;
    t.add_vertex("c");
    for (int i = 0; i < n; ++i) t.add_edge(0, t.add_vertex("l" + std::to_string(i)), "s" + std::to_string(i));
    auto T = t.build();
    std::vector<std::size_t> vmap(G.num_vertices());
    for (std::size_t v = 0; v < G.num_vertices(); ++v) {
        const auto& o = sub.trace.vertex_origin[v];
        vmap[v] = o.kind == VertexOrigin::Kind::vertex ? 0 : T.vertex_index("l" + std::to_string(o.index));
    }
    std::vector<EdgeImage> emap;
    for (std::size_t e = 0; e < G.num_edges(); ++e)
        emap.push_back(EdgeImage::to_edge(T.edge_index("s" + std::to_string(*sub.trace.edge_origin[e])), 1));
    return IndexedMorphism(G, T, vmap, emap);
}

// K_4 onto one edge: vertex 0 alone, the triangle 1-2-3 collapsed.
IndexedMorphism k4_to_edge() {
    auto k4 = complete_graph(4);
    GraphBuilder t;
    t.add_edge(t.add_vertex("x"), t.add_vertex("y"), "xy");
    auto T = t.build();
    std::vector<std::size_t> vmap{0, 1, 1, 1};
    std::vector<EdgeImage> emap;
    for (const auto& e : k4.edges())
        emap.push_back(e.u == 0 || e.v == 0 ? EdgeImage::to_edge(0, 1) : EdgeImage::to_vertex(1));
    return IndexedMorphism(k4, T, vmap, emap, Variant::caporaso);
}

}  // namespace

TEST_CASE("structural checks in the constructor") {
    auto k2 = complete_graph(2);
    auto k3 = complete_graph(3);
    CHECK_THROWS_AS(IndexedMorphism(k2, k3, {0, 0}, {EdgeImage::to_edge(0, 1)}), std::invalid_argument);
    CHECK_THROWS_AS(IndexedMorphism(k2, k2, {0, 1}, {EdgeImage::to_edge(0, 0)}), std::invalid_argument);
    CHECK_THROWS_AS(IndexedMorphism(k2, k2, {0}, {EdgeImage::to_edge(0, 1)}), std::invalid_argument);
    // A collapsed edge is not allowed in the finite variant.
    CHECK_THROWS_AS(IndexedMorphism(k2, k2, {0, 0}, {EdgeImage::to_vertex(0)}), std::invalid_argument);
    GraphBuilder loop;
    loop.add_edge(loop.add_vertex("a"), 0);
    CHECK_THROWS_AS(identity_morphism(loop.build()), std::invalid_argument);
}

TEST_CASE("verify: identity and banana star") {
    auto id = verify(identity_morphism(path_graph(4)));
    CHECK(id.harmonic);
    CHECK(id.degree == 1);
    for (int n = 2; n <= 5; ++n) {
        auto r = verify(banana_star(n));
        CHECK(r.harmonic);
        CHECK(r.degree == 2);
        CHECK(!r.empty_star_convention);
    }
}

TEST_CASE("verify: banana onto an edge has degree n") {
    for (int n = 1; n <= 5; ++n) {
        auto b = banana_graph(n);
        auto k2 = complete_graph(2);
        std::vector<EdgeImage> emap(static_cast<std::size_t>(n), EdgeImage::to_edge(0, 1));
        auto r = verify(IndexedMorphism(b, k2, {0, 1}, emap));
        CHECK(r.harmonic);
        CHECK(r.degree == n);
    }
}

TEST_CASE("verify: violations are located") {
    // C_4 folded onto a path of length 2 with one index wrong.
    auto c4 = cycle_graph(4);
    auto p3 = path_graph(3);
    // 0 -> 0, 1 -> 1, 2 -> 2, 3 -> 1.
    std::vector<EdgeImage> good{EdgeImage::to_edge(0, 1), EdgeImage::to_edge(1, 1), EdgeImage::to_edge(1, 1),
                                EdgeImage::to_edge(0, 1)};
    auto r = verify(IndexedMorphism(c4, p3, {0, 1, 2, 1}, good));
    CHECK(r.harmonic);
    CHECK(r.degree == 2);
    auto bad = good;
    bad[1].index = 2;
    r = verify(IndexedMorphism(c4, p3, {0, 1, 2, 1}, bad));
    CHECK(!r.harmonic);
    REQUIRE(!r.violations.empty());
    CHECK(r.violations[0].vertex == 1);
    CHECK_THROWS_AS(degree(IndexedMorphism(c4, p3, {0, 1, 2, 1}, bad)), VerificationError);
}

TEST_CASE("verify: non-surjective maps are not harmonic") {
    auto k2 = complete_graph(2);
    auto p3 = path_graph(3);
    auto r = verify(IndexedMorphism(k2, p3, {0, 1}, {EdgeImage::to_edge(0, 1)}));
    CHECK(!r.harmonic);
    CHECK(!r.problems.empty());
}

TEST_CASE("caporaso variant and conversion") {
    auto phi = k4_to_edge();
    auto r = verify(phi);
    CHECK(r.harmonic);
    CHECK(r.non_degenerate);
    CHECK(r.degree == 3);
    auto w = caporaso_to_finite(phi);
    auto f = verify(w.morphism);
    CHECK(f.harmonic);
    CHECK(f.degree == 3);
    CHECK(w.morphism.variant() == Variant::finite);
    CHECK(!check_trace(w.trace));
    CHECK(same_up_to_edge_ids(w.trace.parent, complete_graph(4)));

    // Degenerate: a vertex with every edge collapsed next to a tree edge.
    auto p3 = path_graph(3);
    GraphBuilder t;
    t.add_edge(t.add_vertex("x"), t.add_vertex("y"), "xy");
    IndexedMorphism deg(p3, t.build(), {0, 1, 1}, {EdgeImage::to_edge(0, 1), EdgeImage::to_vertex(1)},
                        Variant::caporaso);
    auto dr = verify(deg);
    CHECK(!dr.non_degenerate);
    CHECK_THROWS_AS(caporaso_to_finite(deg), PreconditionError);
}

TEST_CASE("refine_codomain keeps the degree") {
    auto phi = banana_star(3);
    auto same = refine_codomain(phi, identity_trace(phi.codomain()));
    CHECK(verify(same.morphism).degree == 2);
    CHECK(same.morphism.domain().num_vertices() == phi.domain().num_vertices());

    auto sub = subdivide_edge(phi.codomain(), "s1");
    auto r = refine_codomain(phi, sub.trace);
    auto rep = verify(r.morphism);
    CHECK(rep.harmonic);
    CHECK(rep.degree == 2);
    CHECK(!check_trace(r.domain_trace));

    auto leaf = add_leaf(sub.graph, "c");
    auto r2 = refine_codomain(phi, compose(sub.trace, leaf.trace));
    CHECK(verify(r2.morphism).degree == 2);
    CHECK(r2.morphism.domain().num_vertices() == phi.domain().num_vertices() + 2 + 2);

    auto bad = subdivide_edge(complete_graph(3), std::size_t{0});
    CHECK_THROWS(refine_codomain(phi, bad.trace));
}

TEST_CASE("refine_domain keeps the degree and refines H") {
    auto phi = banana_star(3);
    auto id = refine_domain(phi, identity_trace(phi.domain()));
    CHECK(verify(id.morphism).degree == 2);
    auto h = subdivide_edge(phi.domain(), std::size_t{0});
    auto r = refine_domain(phi, h.trace);
    auto rep = verify(r.morphism);
    CHECK(rep.harmonic);
    CHECK(rep.degree == 2);
    CHECK(same_up_to_edge_ids(r.domain_trace.parent, h.graph));
    CHECK(!check_trace(r.domain_trace));
}

TEST_CASE("pushforward") {
    auto ex = rebuild_example();
    CHECK(degree(ex.morphism) == 8);
    auto nu = pushforward(ex.morphism, ex.origin);
    auto at = [&](const char* x) { return nu[ex.tree.vertex_index(x)]; };
    CHECK(at("a") == Rational(1, 5));
    CHECK(at("b") == Rational(1, 5));
    CHECK(at("h") == Rational(1, 5));
    for (auto x : {"d", "e", "f", "g"}) CHECK(at(x) == Rational(1, 10));
    for (auto x : {"B", "c", "H"}) CHECK(at(x) == 0);

    auto id = identity_morphism(complete_graph(4));
    std::vector<std::size_t> all{0, 1, 2, 3};
    for (const auto& x : pushforward(id, all)) CHECK(x == Rational(1, 4));

    auto star = banana_star(3);
    auto sub = subdivide_edges(banana_graph(3), {1, 1, 1});
    Rational total = 0;
    auto nu3 = pushforward(star, sub.trace.origin_vertices());
    for (const auto& x : nu3) total += x;
    CHECK(total == 1);
    CHECK(nu3[0] == 1);
}
