#include "gonality/corpus.hpp"
#include "gonality/errors.hpp"
#include "gonality/spectral.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace gonality;

namespace {

const double pi = std::acos(-1.0);

bool encloses(const EigenvalueEnclosure& e, double x) {
    const double slack = 1e-12;
    return to_double(e.lower) <= x + slack && x - slack <= to_double(e.upper);
}

}  // namespace

TEST_CASE("inertia") {
    RationalMatrix m{{2, 0}, {0, -3}};
    auto i = inertia(m);
    CHECK(i.positive == 1);
    CHECK(i.negative == 1);
    CHECK(i.zero == 0);
    // Zero diagonal forces a 2x2 pivot.
    RationalMatrix h{{0, 1, 0}, {1, 0, 0}, {0, 0, 0}};
    i = inertia(h);
    CHECK(i.positive == 1);
    CHECK(i.negative == 1);
    CHECK(i.zero == 1);
}

TEST_CASE("lambda1 closed forms") {
    for (int n = 2; n <= 7; ++n) {
        auto e = lambda1(complete_graph(n));
        CHECK(encloses(e, n));
        CHECK(e.upper - e.lower <= default_tolerance());
        CHECK(encloses(lambda1(complete_graph(n), default_tolerance(), Operator::normalized), n / (n - 1.0)));
    }
    for (int n = 3; n <= 9; ++n) {
        double s = std::sin(pi / n);
        CHECK(encloses(lambda1(cycle_graph(n)), 4 * s * s));
        CHECK(encloses(lambda1(cycle_graph(n), default_tolerance(), Operator::normalized), 2 * s * s));
    }
    CHECK(encloses(lambda1(complete_bipartite(3)), 3));
    CHECK(encloses(lambda1(complete_bipartite(3), default_tolerance(), Operator::normalized), 1));
    for (int n = 2; n <= 5; ++n) {
        CHECK(encloses(lambda1(banana_graph(n)), 2 * n));
        CHECK(encloses(lambda1(banana_graph(n), default_tolerance(), Operator::normalized), 2));
    }
}

TEST_CASE("lambda1 against a floating eigensolver") {
    std::mt19937_64 rng(17);
    for (int round = 0; round < 60; ++round) {
        int n = 2 + static_cast<int>(rng() % 8);
        int m = n - 1 + static_cast<int>(rng() % 10);
        auto g = random_connected_multigraph(rng, n, m, round % 4 == 0);
        for (bool normalized : {false, true}) {
            auto e = lambda1(g, Rational(1, 1000000), normalized ? Operator::normalized : Operator::standard);
            double x = oracle::lambda1(g, normalized);
            CHECK(to_double(e.lower) <= x + 1e-9);
            CHECK(x - 1e-9 <= to_double(e.upper));
            CHECK(e.lower > 0);
        }
    }
}

TEST_CASE("lambda1 rejects disconnected input") {
    GraphBuilder b;
    b.add_vertex("a");
    b.add_vertex("b");
    CHECK_THROWS_AS(lambda1(b.build()), PreconditionError);
}

TEST_CASE("spectral bound values") {
    for (int n : {2, 4, 6}) {
        Integer expect = (2 * n * n + 5 * n + 4 - 1) / (5 * n + 4);
        CHECK(sgon_lower_bound(complete_bipartite(n)) == expect);
    }
    for (int n = 2; n <= 6; ++n) CHECK(sgon_lower_bound(banana_graph(n)) == 1);
    // K_6: ceil(6/30 * 6) = 2.
    CHECK(sgon_lower_bound(complete_graph(6)) == 2);
    // K_{3,3}: ceil(18/19) = 1; K_{4,4}: ceil(32/24) = 2.
    CHECK(spectral_bound(Rational(3), 3, 6) == 1);
    CHECK(normalized_spectral_bound(Rational(1), 3, 18) == 1);
    CHECK(spectral_bound(Rational(4), 4, 8) == 2);
    CHECK(normalized_spectral_bound(Rational(1), 4, 32) == 2);
}

TEST_CASE("bound over a refinement class never drops below the plain bound") {
    for (auto g : {complete_graph(4), complete_bipartite(3), banana_graph(3)}) {
        ClassBudget budget;
        budget.max_subdivisions_per_edge = 1;
        CHECK(bound_over_class(g, budget) >= sgon_lower_bound(g));
        CHECK(bound_over_class(g, ClassBudget{}) == sgon_lower_bound(g));
    }
}

TEST_CASE("trivial gon bounds") {
    auto k33 = trivial_gon_bounds(complete_bipartite(3));
    REQUIRE(k33.size() == 2);
    CHECK(k33[0].second == 3);
    CHECK(k33[1].second == 3);
    auto b = trivial_gon_bounds(banana_graph(4));
    REQUIRE(b.size() == 1);
    CHECK(b[0].second == 4);
    CHECK(trivial_gon_bounds(complete_graph(5)).size() == 1);
}

TEST_CASE("brill-noether and points bound") {
    CHECK(brill_noether_upper(complete_graph(4)) == 3);
    CHECK(brill_noether_upper(complete_bipartite(3)) == 3);
    CHECK_THROWS_AS(brill_noether_upper(cycle_graph(4)), PreconditionError);
    // (lambda (n-1) - 4 Delta - 4) / (2 lambda + 8 Delta + 8) for K_6.
    auto v = points_degree_bound(complete_graph(6));
    CHECK(std::abs(to_double(v) - 0.1) < 1e-8);
}

TEST_CASE("subdivision vectors are canonical and ordered") {
    std::vector<std::vector<int>> seen;
    for_each_subdivision_vector(banana_graph(3), 2, [&](const std::vector<int>& c) {
        seen.push_back(c);
        return true;
    });
    // Non-increasing triples over {0,1,2}: C(5,3) = 10.
    CHECK(seen.size() == 10);
    for (std::size_t i = 1; i < seen.size(); ++i) {
        int a = 0, b = 0;
        for (int x : seen[i - 1]) a += x;
        for (int x : seen[i]) b += x;
        CHECK(a <= b);
    }
}
