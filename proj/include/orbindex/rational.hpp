#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

#include "orbindex/errors.hpp"

namespace orbindex {

// Exact rational scalar. Arbitrary precision throughout; simplex integrals and
// cyclotomic inverses routinely overflow any fixed width.
using Rational = mpq_class;
using Integer = mpz_class;

inline Rational rat(long num, long den = 1) {
    if (den == 0) throw domain_error("rational with zero denominator");
    Rational r(num, den);
    r.canonicalize();
    return r;
}

inline bool is_integer(const Rational& r) { return r.get_den() == 1; }

inline Rational rat_pow(const Rational& base, long e) {
    if (e < 0) {
        if (base == 0) throw domain_error("inverse of zero rational");
        return rat(1) / rat_pow(base, -e);
    }
    Rational acc(1);
    Rational b = base;
    for (long k = e; k > 0; k >>= 1) {
        if (k & 1) acc *= b;
        b *= b;
    }
    return acc;
}

inline Integer factorial(long n) {
    Integer f(1);
    for (long i = 2; i <= n; ++i) f *= i;
    return f;
}

inline Integer binomial(long n, long k) {
    if (k < 0 || k > n) return Integer(0);
    Integer b(1);
    for (long i = 0; i < k; ++i) {
        b *= (n - i);
        b /= (i + 1);
    }
    return b;
}

inline long lcm_long(long a, long b) {
    mpz_class g;
    mpz_gcd_ui(g.get_mpz_t(), mpz_class(a).get_mpz_t(), static_cast<unsigned long>(b));
    return static_cast<long>(a / g.get_si() * b);
}

// Canonical rendering: "p" or "p/q", q > 0.
inline std::string rat_str(const Rational& r) { return r.get_str(); }

// Parses "p", "-p", "p/q". Throws parse_error on anything else.
Rational rat_parse(const std::string& s);

}  // namespace orbindex
