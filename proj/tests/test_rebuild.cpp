#include "gonality/corpus.hpp"
#include "gonality/errors.hpp"
#include "gonality/rebuild.hpp"
#include "gonality/search.hpp"

#include <doctest.h>

#include <random>

using namespace gonality;

namespace {

MeasuredTree path_tree(std::vector<Rational> nu) {
    const auto n = static_cast<int>(nu.size());
    return MeasuredTree(path_graph(n), std::move(nu));
}

MeasuredTree example_tree() {
    auto ex = rebuild_example();
    return MeasuredTree(ex.tree, pushforward(ex.morphism, ex.origin));
}

const RebuildParams example_params{Rational(1, 5), Rational(3, 10), Rational(1, 2), std::nullopt};

void check_postconditions(const RebuildResult& r, const IndexedMorphism& phi, const RebuildParams& p) {
    auto rep = verify(r.morphism);
    CHECK(rep.harmonic);
    CHECK(r.harmonic);
    CHECK(r.degree_after == rep.degree);
    CHECK(r.degree_before == degree(phi));
    CHECK(r.degree_after <= static_cast<long long>(r.max_degree) * r.degree_before);
    CHECK(r.left_size > p.A / 2);
    CHECK(r.right_size > p.A / 2);
    CHECK(r.refines_original);
    CHECK(is_tree(r.morphism.codomain()));
    if (r.original.genus() >= 2) {
        auto back = trace_from_origin(r.morphism.domain(), r.origin);
        CHECK(isomorphic(stable_model(back.parent), stable_model(r.original)));
    }
    // m at the central fibers is the larger of the two side sums.
    const auto& D = r.morphism.domain();
    for (const auto& [id, sums] : r.side_sums) {
        auto v = D.vertex_index(id);
        CHECK(rep.m[v] == std::max(sums.first, sums.second));
        CHECK(r.dsharp.at(id) == sums.first - sums.second);
    }
}

}  // namespace

TEST_CASE("measured tree validation") {
    CHECK_THROWS_AS(MeasuredTree(cycle_graph(3), {Rational(1, 3), Rational(1, 3), Rational(1, 3)}),
                    PreconditionError);
    CHECK_THROWS_AS(path_tree({Rational(1, 2), Rational(1, 3)}), PreconditionError);
    CHECK_THROWS_AS(path_tree({Rational(3, 2), Rational(-1, 2)}), PreconditionError);
}

TEST_CASE("edge size") {
    auto t = path_tree({Rational(1, 3), Rational(1, 3), Rational(1, 3)});
    CHECK(edge_size(t, 0) == Rational(1, 3));
    CHECK(edge_size(t, 1) == Rational(1, 3));
    auto leafy = path_tree({Rational(0), Rational(1, 2), Rational(1, 2)});
    CHECK(edge_size(leafy, 0) == 0);
    auto ex = example_tree();
    CHECK(edge_size(ex, ex.tree.edge_index("ab")) == Rational(1, 5));
    CHECK(edge_size(ex, ex.tree.edge_index("bB")) == 0);
}

TEST_CASE("thickness") {
    auto ex = example_tree();
    auto th = is_c_thick(ex, Rational(1, 4));
    CHECK(!th.thick);
    REQUIRE(th.witness);
    CHECK(ex.tree.vertex_id(*th.witness) == "a");
    auto one = path_tree({Rational(1, 2), Rational(1, 2)});
    CHECK(is_c_thick(one, Rational(1, 2)).thick);
    GraphBuilder star;
    star.add_vertex("c");
    for (int i = 0; i < 3; ++i) star.add_edge(0, star.add_vertex("l" + std::to_string(i)));
    MeasuredTree heavy(star.build(), {Rational(1), Rational(0), Rational(0), Rational(0)});
    CHECK(!is_c_thick(heavy, Rational(1, 100)).thick);
    CHECK_THROWS_AS(is_c_thick(one, Rational(0)), PreconditionError);
}

TEST_CASE("large edge by orientation") {
    auto one = path_tree({Rational(1, 2), Rational(1, 2)});
    CHECK(find_large_edge(one, Rational(1, 2)) == 0);
    auto p3 = path_tree({Rational(1, 3), Rational(1, 3), Rational(1, 3)});
    auto e = find_large_edge(p3, Rational(1, 3));
    CHECK(edge_size(p3, e) >= Rational(1, 3));
    CHECK_THROWS_AS(find_large_edge(example_tree(), Rational(1, 4)), PreconditionError);
    std::mt19937_64 rng(41);
    for (int round = 0; round < 50; ++round) {
        int n = 2 + static_cast<int>(rng() % 8);
        auto t = random_connected_multigraph(rng, n, n - 1);
        std::vector<Rational> nu;
        long long total = 0;
        for (int i = 0; i < n; ++i) {
            nu.emplace_back(static_cast<long long>(rng() % 5));
            total += static_cast<long long>(nu.back());
        }
        if (total == 0) continue;
        for (auto& x : nu) x /= total;
        MeasuredTree mt(t, nu);
        for (Rational c : {Rational(1, 10), Rational(1, 5), Rational(1, 3)}) {
            if (!is_c_thick(mt, c).thick) continue;
            CHECK(edge_size(mt, find_large_edge(mt, c)) >= c);
        }
    }
}

TEST_CASE("rebuild: worked example with the hand partition") {
    auto ex = rebuild_example();
    auto p = example_params;
    p.left = std::vector<VertexId>{"b", "h"};
    auto r = rebuild(ex.morphism, ex.origin, p);
    check_postconditions(r, ex.morphism, p);
    CHECK(r.partition_method == "forced");
    CHECK(r.degree_after == 18);
    CHECK(r.left_size == Rational(2, 5));
    CHECK(r.right_size == Rational(2, 5));
    CHECK(r.max_degree == 5);
    MeasuredTree sharp(r.morphism.codomain(), pushforward(r.morphism, r.origin));
    auto e = find_large_edge(sharp, Rational(1, 10));
    CHECK((e == r.left_edge || e == r.right_edge));
}

TEST_CASE("rebuild: worked example with the default partition") {
    auto ex = rebuild_example();
    auto r = rebuild(ex.morphism, ex.origin, example_params);
    check_postconditions(r, ex.morphism, example_params);
    CHECK(r.degree_after <= 40);
    CHECK(r.ok());
}

TEST_CASE("rebuild: precondition errors") {
    auto ex = rebuild_example();
    auto heavy = example_params;
    heavy.B = Rational(1, 5);
    try {
        rebuild(ex.morphism, ex.origin, heavy);
        FAIL("expected a precondition error");
    } catch (const PreconditionError& e) {
        CHECK(std::string(e.what()).find("'a'") != std::string::npos);
    }
    // Identity on P_4: every vertex sees a component of measure >= 1/4.
    auto p4 = path_graph(4);
    try {
        rebuild(identity_morphism(p4), {0, 1, 2, 3}, example_params);
        FAIL("expected a precondition error");
    } catch (const PreconditionError& e) {
        CHECK(std::string(e.what()).find("thick") != std::string::npos);
    }
    auto bad = example_params;
    bad.A = Rational(1, 2);
    CHECK_THROWS_AS(rebuild(ex.morphism, ex.origin, bad), PreconditionError);
    auto forced = example_params;
    forced.left = std::vector<VertexId>{"b", "c1"};
    CHECK_THROWS_AS(rebuild(ex.morphism, ex.origin, forced), PreconditionError);
}

TEST_CASE("pipeline bound on the worked example") {
    auto ex = rebuild_example();
    auto b = pipeline_bound(ex.morphism, ex.origin, Rational(1, 5), Rational(3, 10), Rational(1, 2));
    CHECK(b.branch == "rebuild");
    CHECK(b.value <= 8);
    auto id = pipeline_bound(identity_morphism(path_graph(3)), {0, 1, 2}, Rational(1, 5), Rational(3, 10),
                             Rational(1, 2));
    CHECK(id.value <= 1);
}

TEST_CASE("rebuild and pipeline over search witnesses") {
    // Harmonic morphisms to trees from the search, checked under several
    // parameter choices.
    std::vector<std::pair<IndexedMorphism, std::vector<std::size_t>>> corpus;
    auto ex = rebuild_example();
    corpus.emplace_back(ex.morphism, ex.origin);
    for (const auto& [name, g] : table_corpus()) {
        auto r = sgon(g);
        corpus.emplace_back(r.witness->morphism, r.witness->trace.origin_vertices());
    }
    std::mt19937_64 rng(43);
    for (int round = 0; round < 25; ++round) {
        int n = 3 + static_cast<int>(rng() % 4);
        auto g = random_connected_multigraph(rng, n, n + static_cast<int>(rng() % 3));
        SearchBudget b;
        b.max_subdivisions_per_edge = 1;
        auto r = sgon(g, b);
        if (r.witness) corpus.emplace_back(r.witness->morphism, r.witness->trace.origin_vertices());
    }
    const std::vector<std::array<Rational, 3>> params{{Rational(1, 5), Rational(3, 10), Rational(1, 2)},
                                                      {Rational(1, 10), Rational(1, 2), Rational(2, 5)},
                                                      {Rational(1, 3), Rational(1, 3), Rational(1, 3)},
                                                      {Rational(1, 20), Rational(9, 10), Rational(1, 20)},
                                                      {Rational(1, 10), Rational(3, 10), Rational(1, 2)},
                                                      {Rational(1, 5), Rational(3, 10), Rational(2, 5)},
                                                      {Rational(1, 10), Rational(2, 5), Rational(1, 2)}};
    int rebuilt = 0;
    for (const auto& [phi, origin] : corpus) {
        auto deg = degree(phi);
        MeasuredTree mt(phi.codomain(), pushforward(phi, origin));
        for (const auto& [A, B, C] : params) {
            auto pb = pipeline_bound(phi, origin, A, B, C);
            CHECK(pb.value <= deg);
            bool light = true;
            for (const auto& x : mt.measure) light = light && x < B;
            auto thin = thin_vertices(mt, C / 2);
            if (!light || thin.empty()) continue;
            // The thin vertex is unique, and its mass is large.
            CHECK(thin.size() == 1);
            auto x = thin.front();
            CHECK(mt.measure[x] > 1 - C / 2 * mt.tree.degree(x));
            RebuildParams p{A, B, C, std::nullopt};
            auto r = rebuild(phi, origin, p);
            check_postconditions(r, phi, p);
            ++rebuilt;
        }
    }
    CHECK(rebuilt >= 3);
}
