#pragma once

// Exact rational scalars. Every probability and state coordinate in gptlab is
// one of these; nothing is ever rounded.

#include <boost/multiprecision/gmp.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace gptlab {

using BigInt = boost::multiprecision::mpz_int;

/// Arbitrary-precision rational, always held in lowest terms with a positive
/// denominator.
using Rational = boost::multiprecision::mpq_rational;

inline BigInt numer(const Rational &r) { return boost::multiprecision::numerator(r); }
inline BigInt denom(const Rational &r) { return boost::multiprecision::denominator(r); }

/// Serializes as "p/q", or "p" when q == 1.
inline std::string to_string(const Rational &r) {
    const BigInt q = denom(r);
    if (q == 1) {
        return numer(r).str();
    }
    return numer(r).str() + "/" + q.str();
}

inline BigInt parse_bigint(std::string_view s) {
    if (s.empty()) {
        throw std::invalid_argument("empty integer literal");
    }
    std::size_t i = 0;
    if (s[0] == '-' || s[0] == '+') {
        i = 1;
    }
    if (i == s.size()) {
        throw std::invalid_argument("malformed integer literal '" + std::string(s) + "'");
    }
    for (std::size_t k = i; k < s.size(); ++k) {
        if (s[k] < '0' || s[k] > '9') {
            throw std::invalid_argument("malformed integer literal '" + std::string(s) + "'");
        }
    }
    BigInt v(std::string(s.substr(s[0] == '+' ? 1 : 0)));
    return v;
}

/// Parses "p/q" or "p". Throws std::invalid_argument on malformed input or q == 0.
inline Rational parse_rational(std::string_view s) {
    const auto slash = s.find('/');
    if (slash == std::string_view::npos) {
        return Rational(parse_bigint(s));
    }
    BigInt p = parse_bigint(s.substr(0, slash));
    BigInt q = parse_bigint(s.substr(slash + 1));
    if (q == 0) {
        throw std::invalid_argument("zero denominator in '" + std::string(s) + "'");
    }
    return Rational(p, q);
}

/// 1 / 2^k.
inline Rational inverse_power_of_two(unsigned k) {
    BigInt d = 1;
    d <<= k;
    return Rational(BigInt(1), d);
}

inline bool is_probability(const Rational &r) { return r >= 0 && r <= 1; }

}  // namespace gptlab
