#pragma once

// Exact arithmetic primitives shared by every module. All counts,
// coefficients and moduli in this library are arbitrary-precision from the
// start; there is no machine-word fast path.

#include <gmpxx.h>

#include <stdexcept>
#include <string>

#include "rmp/errors.hpp"

namespace rmp {

using Int = mpz_class;

/// Exact rational, used transiently inside linear solves. Final results are
/// always integers; integrality is asserted, never assumed.
using Rat = mpq_class;

inline Int pow_ui(const Int& base, unsigned long exp) {
    Int r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exp);
    return r;
}

inline Int pow_ui(unsigned long base, unsigned long exp) {
    Int r;
    mpz_ui_pow_ui(r.get_mpz_t(), base, exp);
    return r;
}

inline bool divisible(const Int& value, const Int& divisor) {
    if (divisor == 0) return false;
    return mpz_divisible_p(value.get_mpz_t(), divisor.get_mpz_t()) != 0;
}

/// a / b for b | a; anything else is an internal bug.
inline Int exact_div(const Int& a, const Int& b) {
    if (!divisible(a, b))
        throw InconsistencyError("exact_div: " + a.get_str() + " is not divisible by " + b.get_str());
    Int r;
    mpz_divexact(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

/// Largest e with divisor^e | value. Requires value != 0 and divisor > 1.
inline unsigned long divisibility_multiplicity(const Int& value, const Int& divisor) {
    if (value == 0 || divisor <= 1)
        throw std::invalid_argument("divisibility_multiplicity: need value != 0 and divisor > 1");
    Int rest;
    return mpz_remove(rest.get_mpz_t(), value.get_mpz_t(), divisor.get_mpz_t());
}

inline std::string to_decimal(const Int& v) { return v.get_str(10); }

/// Strict decimal parse; rejects anything mpz does not accept in base 10.
inline Int parse_decimal(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("parse_decimal: empty string");
    return Int(s, 10);  // throws std::invalid_argument on junk
}

}  // namespace rmp
