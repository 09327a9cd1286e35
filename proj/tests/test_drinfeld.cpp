#include "gonality/drinfeld.hpp"
#include "gonality/errors.hpp"

#include <doctest.h>

#include <cmath>

using namespace gonality;

namespace {

QuadraticSurd times(const QuadraticSurd& u, const QuadraticSurd& v) {
    Rational r(u.radicand);
    return {u.a * v.a + u.b * v.b * r, u.a * v.b + u.b * v.a, u.radicand};
}

double c_float(long long q, long long delta) {
    double Q = std::pow(static_cast<double>(q), static_cast<double>(delta));
    double s = std::sqrt(Q);
    return (Q - 2 * s) / (5 * Q - 2 * s + 8) / (static_cast<double>(q) * (q * q - 1.0));
}

}  // namespace

TEST_CASE("c_{q,delta} satisfies its defining equation") {
    for (long long q : {2, 3, 4, 5, 7, 8, 9, 11, 16}) {
        for (long long delta = 1; delta <= 4; ++delta) {
            PlaceData p{q, delta};
            auto c = c_q_delta(p);
            Rational Q(p.q_delta());
            Rational group = Rational(q) * (Rational(q) * q - 1);
            // c (5Q - 2 sqrt Q + 8) q (q^2 - 1) = Q - 2 sqrt Q.
            auto lhs = times(c, QuadraticSurd{(5 * Q + 8) * group, -2 * group, p.q_delta()});
            CHECK(lhs.a == Q);
            CHECK(lhs.b == -2);
            CHECK(std::abs(c.to_double() - c_float(q, delta)) < 1e-12);
            CHECK(c.sign() == (Q > 4 ? 1 : (Q == 4 ? 0 : -1)));
            CHECK(c.to_double() < 1);
        }
    }
    CHECK(c_q_delta({2, 1}).sign() < 0);
    CHECK(c_q_delta({3, 1}).sign() < 0);
    CHECK(c_q_delta({2, 2}).sign() == 0);
    CHECK(c_q_delta({4, 1}).sign() == 0);
    CHECK(std::abs(c_q_delta({5, 1}).to_double() - 1.54e-4) < 1e-6);
    CHECK_THROWS_AS(c_q_delta({6, 1}), PreconditionError);
    CHECK_THROWS_AS(c_q_delta({2, 0}), PreconditionError);
}

TEST_CASE("gamma0 index") {
    CHECK(gamma0_index({2, 1}, {{3, 1}}) == 9);
    for (long long q : {2, 3, 5})
        for (long long d = 1; d <= 4; ++d) {
            Integer p = 1;
            for (long long i = 0; i < d; ++i) p *= q;
            CHECK(gamma0_index({q, 1}, {{d, 1}}) == p + 1);
        }
    CHECK(gamma0_index({3, 1}, {}) == 1);
    // Multiplicative over coprime parts and at least the norm.
    IdealFactorization a{{1, 2}}, b{{2, 1}}, ab{{1, 2}, {2, 1}};
    CHECK(gamma0_index({3, 1}, ab) == gamma0_index({3, 1}, a) * gamma0_index({3, 1}, b));
    CHECK(gamma0_index({3, 1}, ab) >= ideal_norm(3, ab));
    // |n| (1 + 1/|p|) per prime: 3^2 * (1 + 1/3) = 12.
    CHECK(gamma0_index({3, 1}, a) == 12);
    CHECK_THROWS_AS(gamma0_index({3, 1}, {{0, 1}}), PreconditionError);
}

TEST_CASE("modular degree and gonality bounds") {
    auto v = modular_degree_lower_bound({2, 1}, {{3, 1}});
    CHECK(v.vacuous);
    auto c5 = c_q_delta({5, 1});
    auto m = modular_degree_lower_bound({5, 1}, {{1, 1}});
    CHECK(!m.vacuous);
    CHECK(m.value.a == c5.a * 3);
    CHECK(m.value.b == c5.b * 3);
    auto empty = modular_degree_lower_bound({5, 1}, {});
    CHECK(empty.value.a == c5.a / 2);
    auto g = gonality_lower_bound_index({5, 1}, 6);
    CHECK(g.value.a == c5.a * 6);
    CHECK(gonality_lower_bound_index({5, 1}, 1).value.b == c5.b);
    CHECK(gonality_lower_bound_index({3, 1}, 10).vacuous);
    CHECK_THROWS_AS(gonality_lower_bound_index({5, 1}, 0), PreconditionError);
}

TEST_CASE("cusp ramification") {
    CHECK(cusp_ramification(2, 1) == 1);
    CHECK(cusp_ramification(3, 1) == Rational(7, 6));
    CHECK(cusp_ramification(2, 20) < 2);
    for (long long q : {2, 3, 4, 5}) {
        Rational prev = 0;
        for (long long d = 1; d <= 30; ++d) {
            auto r = cusp_ramification(q, d);
            CHECK(r <= Rational(q, q - 1));
            CHECK(r > prev);
            prev = r;
        }
    }
    CHECK_THROWS_AS(cusp_ramification(2, 0), PreconditionError);
}

TEST_CASE("graph size formulas") {
    CHECK(principal_graph_size(2, 1, 12) == 5);
    CHECK(principal_graph_size(2, 1, 0) == 0);
    CHECK(principal_graph_size(2, 1, 1) == Rational(5, 12));
    CHECK(vertex_count_lower_bound(2, 6) == 1);
    CHECK(vertex_count_lower_bound(3, 24) == 1);
    CHECK(vertex_count_lower_bound(5, 0) == 0);
}

TEST_CASE("surd rendering and sign") {
    QuadraticSurd s{Rational(3), Rational(-1), 9};
    CHECK(s.sign() == 0);
    CHECK(s.to_string() == "3 - 1*sqrt(9)");
    QuadraticSurd t{Rational(-1), Rational(1), 2};
    CHECK(t.sign() == 1);
}
