#include "gonality/rational.hpp"

#include "gonality/errors.hpp"

#include <cmath>

namespace gonality {

Rational make_rational(long long num, long long den) {
    if (den == 0) throw std::invalid_argument("zero denominator");
    return Rational(Integer(num), Integer(den));
}

Rational parse_rational(const std::string& text) {
    auto bad = [&]() { return ParseError("not a rational number: '" + text + "'"); };
    if (text.empty()) throw bad();
    auto is_int = [](const std::string& s) {
        std::size_t i = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
        if (i >= s.size()) return false;
        for (; i < s.size(); ++i)
            if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
        return true;
    };
    auto slash = text.find('/');
    if (slash != std::string::npos) {
        std::string p = text.substr(0, slash), q = text.substr(slash + 1);
        if (!is_int(p) || !is_int(q)) throw bad();
        Integer den(q);
        if (den == 0) throw bad();
        return Rational(Integer(p), den);
    }
    auto dot = text.find('.');
    if (dot != std::string::npos) {
        std::string whole = text.substr(0, dot), frac = text.substr(dot + 1);
        bool neg = !whole.empty() && whole[0] == '-';
        if (whole.empty() || whole == "-" || whole == "+") whole += "0";
        if (!is_int(whole) || frac.empty() || !is_int(frac) || frac[0] == '-' || frac[0] == '+') throw bad();
        Integer scale = boost::multiprecision::pow(Integer(10), static_cast<unsigned>(frac.size()));
        Rational r = Rational(Integer(whole)) + Rational(Integer(frac), scale) * (neg ? -1 : 1);
        return r;
    }
    if (!is_int(text)) throw bad();
    return Rational(Integer(text));
}

std::string to_string(const Rational& x) {
    if (denominator(x) == 1) return numerator(x).str();
    return numerator(x).str() + "/" + denominator(x).str();
}

std::string to_string(const Integer& x) { return x.str(); }

double to_double(const Rational& x) { return x.convert_to<double>(); }

Integer floor(const Rational& x) {
    Integer n = numerator(x), d = denominator(x);
    Integer q = n / d;
    if (n < 0 && q * d != n) q -= 1;
    return q;
}

Integer ceil(const Rational& x) { return -floor(-x); }

Rational dyadic(double x, unsigned bits) {
    double scaled = std::ldexp(x, static_cast<int>(bits));
    Integer k(static_cast<long long>(std::llround(scaled)));
    return Rational(k, Integer(1) << bits);
}

long long to_ll(const Integer& x) { return x.convert_to<long long>(); }

}  // namespace gonality
