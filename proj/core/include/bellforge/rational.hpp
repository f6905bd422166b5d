#pragma once

#include <gmpxx.h>

#include <string>

namespace bellforge {

// Exact rational scalar. All polytope-side arithmetic uses this type;
// floating point appears only in the quantum module.
using Rational = mpq_class;
using Integer = mpz_class;

// Parses "p", "-p" or "p/q" (q > 0 digits). Rejects anything else,
// including zero denominators. The result is canonicalized.
Rational parse_rational(const std::string& text);

// Canonical text form: reduced, denominator omitted when 1 (e.g. "-1/3", "2").
std::string to_string(const Rational& value);

inline Rational rational(long num, long den = 1) {
    Rational r(num, den);
    r.canonicalize();
    return r;
}

inline double to_double(const Rational& value) { return value.get_d(); }

inline Rational rational_abs(const Rational& value) {
    return value < 0 ? Rational(-value) : value;
}

} // namespace bellforge
