#pragma once

// Exact rational scalars. All algebra coefficients in this library are exact;
// there is deliberately no floating-point path anywhere.

#include <boost/multiprecision/cpp_int.hpp>
#include <stdexcept>
#include <string>

namespace rdc {

using Rational = boost::multiprecision::cpp_rational;
using Integer = boost::multiprecision::cpp_int;

// Prints a rational in reduced "p/q" form, or just "p" for integers.
inline std::string rational_to_string(const Rational& r) {
    if (denominator(r) == 1) return numerator(r).str();
    return numerator(r).str() + "/" + denominator(r).str();
}

// Parses "p", "-p" or "p/q". Throws std::invalid_argument on malformed input.
inline Rational rational_from_string(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("empty rational literal");
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return Rational(Integer(s));
        Integer p(s.substr(0, slash));
        Integer q(s.substr(slash + 1));
        if (q == 0) throw std::invalid_argument("zero denominator");
        return Rational(p, q);
    } catch (const std::runtime_error&) {
        throw std::invalid_argument("malformed rational literal: " + s);
    }
}

inline Rational binomial(long n, long k) {
    if (k < 0 || k > n) return 0;
    Integer num = 1, den = 1;
    for (long i = 0; i < k; ++i) {
        num *= (n - i);
        den *= (i + 1);
    }
    return Rational(num, den);
}

inline Integer factorial(long n) {
    Integer f = 1;
    for (long i = 2; i <= n; ++i) f *= i;
    return f;
}

}  // namespace rdc
