#pragma once

#include "gonality/rational.hpp"

#include <string>
#include <utility>
#include <vector>

namespace gonality {

// a + b sqrt(radicand) with rational a, b and a positive integer radicand.
struct QuadraticSurd {
    Rational a;
    Rational b;
    Integer radicand = 1;

    int sign() const;  // exact
    double to_double() const;
    std::string to_string() const;  // "a + b*sqrt(r)"
    QuadraticSurd scaled(const Rational& k) const { return {a * k, b * k, radicand}; }
};

struct PlaceData {
    long long q = 2;      // size of the constant field
    long long delta = 1;  // degree of the place at infinity

    Integer q_delta() const;
};

bool is_prime_power(long long n);
// Throws PreconditionError unless q is a prime power >= 2 and delta >= 1.
void validate(const PlaceData& place);

// Prime factors of n given by (degree, multiplicity).
using IdealFactorization = std::vector<std::pair<long long, long long>>;

Integer ideal_norm(long long q, const IdealFactorization& n);

QuadraticSurd c_q_delta(const PlaceData& place);

Integer gamma0_index(const PlaceData& place, const IdealFactorization& n);

struct SurdBound {
    QuadraticSurd value;
    bool vacuous = false;  // value <= 0
};

SurdBound modular_degree_lower_bound(const PlaceData& place, const IdealFactorization& n);
SurdBound gonality_lower_bound_index(const PlaceData& place, const Integer& index);

Rational cusp_ramification(long long q, long long d);
Rational principal_graph_size(long long q, long long d, const Integer& index);
Rational vertex_count_lower_bound(long long q, const Integer& index);

}  // namespace gonality
