#include "gonality/drinfeld.hpp"

#include "gonality/errors.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <sstream>

namespace gonality {

namespace {

Integer power(long long base, long long exp) {
    Integer out = 1;
    for (long long i = 0; i < exp; ++i) out *= base;
    return out;
}

int sign_of(const Rational& x) { return x > 0 ? 1 : (x < 0 ? -1 : 0); }

}  // namespace

int QuadraticSurd::sign() const {
    int sa = sign_of(a), sb = sign_of(b);
    if (sb == 0) return sa;
    if (sa == 0 || sa == sb) return sb;
    // Opposite signs: compare a^2 with b^2 r.
    Rational lhs = a * a, rhs = b * b * Rational(radicand);
    if (lhs == rhs) return 0;
    return lhs > rhs ? sa : sb;
}

double QuadraticSurd::to_double() const {
    return gonality::to_double(a) + gonality::to_double(b) * std::sqrt(static_cast<double>(radicand));
}

std::string QuadraticSurd::to_string() const {
    std::ostringstream out;
    out << gonality::to_string(a) << (b < 0 ? " - " : " + ") << gonality::to_string(b < 0 ? Rational(-b) : b)
        << "*sqrt(" << radicand << ")";
    return out.str();
}

Integer PlaceData::q_delta() const { return power(q, delta); }

bool is_prime_power(long long n) {
    if (n < 2) return false;
    for (long long p = 2; p * p <= n; ++p) {
        if (n % p) continue;
        while (n % p == 0) n /= p;
        return n == 1;
    }
    return true;
}

void validate(const PlaceData& place) {
    if (!is_prime_power(place.q)) throw PreconditionError("q must be a prime power");
    if (place.delta < 1) throw PreconditionError("delta must be positive");
}

Integer ideal_norm(long long q, const IdealFactorization& n) {
    Integer out = 1;
    for (const auto& [deg, mult] : n) {
        if (deg < 1 || mult < 1) throw PreconditionError("prime degrees and multiplicities must be positive");
        out *= power(q, deg * mult);
    }
    return out;
}

QuadraticSurd c_q_delta(const PlaceData& place) {
    validate(place);
    const Integer Q = place.q_delta();
    const Rational Qr(Q);
    // (Q - 2 sqrt Q) / (5Q - 2 sqrt Q + 8), rationalised by the conjugate.
    const Rational den = (5 * Qr + 8) * (5 * Qr + 8) - 4 * Qr;
    const Rational group = Rational(place.q) * (Rational(place.q) * place.q - 1);
    QuadraticSurd c;
    c.radicand = Q;
    c.a = (5 * Qr * Qr + 4 * Qr) / (den * group);
    c.b = -(8 * Qr + 16) / (den * group);
    return c;
}

Integer gamma0_index(const PlaceData& place, const IdealFactorization& n) {
    validate(place);
    Integer out = 1;
    for (const auto& [deg, mult] : n) {
        if (deg < 1 || mult < 1) throw PreconditionError("prime degrees and multiplicities must be positive");
        Integer p = power(place.q, deg);
        out *= boost::multiprecision::pow(p, static_cast<unsigned>(mult - 1)) * (p + 1);
    }
    return out;
}

SurdBound modular_degree_lower_bound(const PlaceData& place, const IdealFactorization& n) {
    auto value = c_q_delta(place).scaled(Rational(gamma0_index(place, n)) / 2);
    return {value, value.sign() <= 0};
}

SurdBound gonality_lower_bound_index(const PlaceData& place, const Integer& index) {
    if (index < 1) throw PreconditionError("index must be positive");
    auto value = c_q_delta(place).scaled(Rational(index));
    return {value, value.sign() <= 0};
}

Rational cusp_ramification(long long q, long long d) {
    if (!is_prime_power(q)) throw PreconditionError("q must be a prime power");
    if (d < 1) throw PreconditionError("d must be positive");
    Integer qd = power(q, d);
    return Rational(qd * q - 2) / Rational((q - 1) * qd);
}

Rational principal_graph_size(long long q, long long d, const Integer& index) {
    if (!is_prime_power(q)) throw PreconditionError("q must be a prime power");
    if (d < 0 || index < 0) throw PreconditionError("degree and index must be nonnegative");
    Integer qd1 = power(q, d + 1);
    return Rational(2 * qd1 - q - 1) / Rational(qd1 * (q * q - 1) * (q - 1)) * Rational(index);
}

Rational vertex_count_lower_bound(long long q, const Integer& index) {
    if (!is_prime_power(q)) throw PreconditionError("q must be a prime power");
    if (index < 0) throw PreconditionError("index must be nonnegative");
    return Rational(index) / Rational(q * (q * q - 1));
}

}  // namespace gonality
