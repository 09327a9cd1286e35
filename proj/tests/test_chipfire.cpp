#include "gonality/chipfire.hpp"
#include "gonality/corpus.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <random>

using namespace gonality;

namespace {

// Direct check of the q-reduced definition by scanning every divisor that is
// nonnegative off q with at most g chips off q, where g is the genus.
std::vector<Divisor> reduced_by_definition(const MultiGraph& g, const Divisor& d, std::size_t q) {
    const auto n = g.num_vertices();
    const long long genus = g.genus();
    auto lat = oracle::lattice(g);
    std::vector<Divisor> out;
    std::vector<long long> e(n, 0);
    std::function<void(std::size_t, long long)> rec = [&](std::size_t i, long long used) {
        if (i == n) {
            auto cand = e;
            cand[q] = d.degree() - used;
            if (!oracle::equivalent(lat, d.chips, cand)) return;
            for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
                if (mask >> q & 1) continue;
                bool someone_short = false;
                for (std::size_t v = 0; v < n && !someone_short; ++v) {
                    if (!(mask >> v & 1)) continue;
                    long long out_edges = 0;
                    for (auto f : g.incident(v))
                        if (!(mask >> g.edge(f).other(v) & 1)) ++out_edges;
                    if (cand[v] < out_edges) someone_short = true;
                }
                if (!someone_short) return;
            }
            out.push_back(Divisor{cand});
            return;
        }
        if (i == q) return rec(i + 1, used);
        for (long long k = 0; used + k <= genus; ++k) {
            e[i] = k;
            rec(i + 1, used + k);
        }
        e[i] = 0;
    };
    rec(0, 0);
    return out;
}

}  // namespace

TEST_CASE("fire") {
    auto p3 = path_graph(3);
    Divisor d{{2, 0, 0}};
    CHECK(fire(p3, d, {0}) == Divisor{{1, 1, 0}});
    CHECK(fire(p3, d, {}) == d);
    CHECK(fire(p3, d, {0, 1, 2}) == d);
    auto b3 = banana_graph(3);
    CHECK(fire(b3, Divisor{{3, 0}}, {0}) == Divisor{{0, 3}});
}

TEST_CASE("q_reduce examples") {
    auto p3 = path_graph(3);
    CHECK(q_reduce(p3, Divisor{{0, 0, 2}}, 0) == Divisor{{2, 0, 0}});
    auto c4 = cycle_graph(4);
    auto r = q_reduce(c4, Divisor{{2, 0, 0, 0}}, 2);
    CHECK(r.chips[2] >= 1);
    CHECK(is_q_reduced(c4, r, 2));
    Divisor already{{1, 0, 0, 0}};
    CHECK(q_reduce(c4, already, 0) == already);
    // Debt off q is cleared.
    auto k4 = complete_graph(4);
    auto neg = q_reduce(k4, Divisor{{0, -2, 1, 1}}, 0);
    for (std::size_t v = 1; v < 4; ++v) CHECK(neg.chips[v] >= 0);
    CHECK(neg.degree() == 0);
}

TEST_CASE("q_reduce agrees with the definition") {
    std::mt19937_64 rng(29);
    for (int round = 0; round < 80; ++round) {
        int n = 2 + static_cast<int>(rng() % 4);
        int m = n - 1 + static_cast<int>(rng() % 4);
        auto g = random_connected_multigraph(rng, n, m);
        Divisor d{std::vector<long long>(static_cast<std::size_t>(n), 0)};
        for (int k = 0; k < 4; ++k) d.chips[rng() % static_cast<std::size_t>(n)] += (rng() % 3 == 0) ? -1 : 1;
        std::size_t q = rng() % static_cast<std::size_t>(n);
        auto r = q_reduce(g, d, q);
        auto expect = reduced_by_definition(g, d, q);
        REQUIRE(expect.size() == 1);
        CHECK(r == expect[0]);
        CHECK(q_reduce(g, r, q) == r);
        CHECK(is_q_reduced(g, r, q));
        CHECK(oracle::equivalent(oracle::lattice(g), d.chips, r.chips));
    }
}

TEST_CASE("positive rank examples") {
    auto tree = path_graph(4);
    CHECK(has_positive_rank(tree, make_divisor(tree, {"2"})));
    auto c3 = cycle_graph(3);
    CHECK(!has_positive_rank(c3, make_divisor(c3, {"0"})));
    auto b2 = banana_graph(2);
    CHECK(has_positive_rank(b2, make_divisor(b2, {"0", "1"})));
    CHECK(!has_positive_rank(b2, Divisor{{0, 0}}));
}

TEST_CASE("positive rank against the lattice oracle") {
    std::mt19937_64 rng(31);
    for (int round = 0; round < 40; ++round) {
        int n = 2 + static_cast<int>(rng() % 4);
        int m = n - 1 + static_cast<int>(rng() % 5);
        auto g = random_connected_multigraph(rng, n, m);
        for (long long deg = 0; deg <= 3; ++deg)
            oracle::for_each_effective(g.num_vertices(), deg, [&](const std::vector<long long>& d) {
                CHECK(has_positive_rank(g, Divisor{d}) == oracle::has_positive_rank(g, d));
            });
    }
}

TEST_CASE("divisorial gonality") {
    for (int n = 2; n <= 6; ++n) CHECK(divisorial_gonality(complete_graph(n)).value == n - 1);
    for (int n = 2; n <= 5; ++n) CHECK(divisorial_gonality(banana_graph(n)).value == 2);
    CHECK(divisorial_gonality(path_graph(5)).value == 1);
    CHECK(divisorial_gonality(complete_bipartite(3)).value == 3);
    auto capped = divisorial_gonality(complete_graph(5), 2);
    CHECK(!capped.value);
    auto r = divisorial_gonality(cycle_graph(6));
    CHECK(r.value == 2);
    REQUIRE(r.witness);
    CHECK(has_positive_rank(cycle_graph(6), *r.witness));
    std::mt19937_64 rng(37);
    for (int round = 0; round < 20; ++round) {
        int n = 2 + static_cast<int>(rng() % 4);
        auto g = random_connected_multigraph(rng, n, n - 1 + static_cast<int>(rng() % 4));
        CHECK(divisorial_gonality(g).value == oracle::dgon(g));
    }
}
