#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace gonality {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

Rational make_rational(long long num, long long den = 1);

// Parses "p", "p/q" or a finite decimal such as "0.25".
Rational parse_rational(const std::string& text);

std::string to_string(const Rational& x);
std::string to_string(const Integer& x);
double to_double(const Rational& x);

Integer floor(const Rational& x);
Integer ceil(const Rational& x);

// Nearest dyadic rational k / 2^bits.
Rational dyadic(double x, unsigned bits = 40);

long long to_ll(const Integer& x);

}  // namespace gonality
