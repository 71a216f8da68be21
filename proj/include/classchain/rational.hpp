// Exact rational arithmetic used throughout: thin helpers on top of
// boost::multiprecision (header-only).
#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>

namespace classchain {

using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Int pow_int(const Int& base, long long e) {
    if (e < 0) throw std::domain_error("pow_int: negative exponent");
    Int r = 1, b = base;
    for (long long k = e; k > 0; k >>= 1) {
        if (k & 1) r *= b;
        if (k > 1) b *= b;
    }
    return r;
}

// q^e for integer e of either sign (q != 0 when e < 0).
inline Rational pow_rational(const Rational& base, long long e) {
    if (e >= 0)
        return Rational(pow_int(numerator(base), e), pow_int(denominator(base), e));
    if (base == 0) throw std::domain_error("pow_rational: 0^negative");
    return Rational(pow_int(denominator(base), -e), pow_int(numerator(base), -e));
}

// Parses "a" or "a/b" with b > 0 after normalization.
inline Rational parse_rational(const std::string& s) {
    auto bad = [&] { throw std::invalid_argument("bad rational: '" + s + "'"); };
    if (s.empty()) bad();
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return Rational(Int(s));
        Int num(s.substr(0, slash));
        Int den(s.substr(slash + 1));
        if (den == 0) bad();
        return Rational(num, den);
    } catch (const std::runtime_error&) {
        bad();
    }
    return Rational();  // unreachable
}

inline std::string format_rational(const Rational& r) {
    if (denominator(r) == 1) return numerator(r).str();
    return numerator(r).str() + "/" + denominator(r).str();
}

inline double to_double(const Rational& r) {
    return static_cast<double>(r);
}

}  // namespace classchain
