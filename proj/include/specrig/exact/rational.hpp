#pragma once

// Exact scalars. Rationals are GMP mpq_class values kept in canonical form
// (reduced, positive denominator).

#include <gmpxx.h>

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <string_view>

#include "specrig/exact/errors.hpp"

namespace specrig {

using Int = mpz_class;
using Rat = mpq_class;

inline bool is_zero(const Rat& x) { return sgn(x) == 0; }
inline bool is_zero(const Int& x) { return sgn(x) == 0; }

inline Rat make_rat(long num, long den = 1) {
    if (den == 0) throw MathError("zero denominator");
    Rat r(num, den);
    r.canonicalize();
    return r;
}

/// "p/q" form, always with an explicit denominator.
inline std::string to_pq(const Rat& x) {
    return x.get_num().get_str() + "/" + x.get_den().get_str();
}

/// Short form: "p" for integers, "p/q" otherwise.
inline std::string to_short(const Rat& x) {
    if (x.get_den() == 1) return x.get_num().get_str();
    return to_pq(x);
}

/// Parses "p", "-p" or "p/q".
inline Rat parse_rat(std::string_view s) {
    std::string str(s);
    Rat r;
    if (str.empty() || r.set_str(str, 10) != 0) throw ParseError("bad rational '" + str + "'");
    if (r.get_den() == 0) throw ParseError("zero denominator in '" + str + "'");
    r.canonicalize();
    return r;
}

inline bool is_integer(const Rat& x) { return x.get_den() == 1; }

inline long to_long(const Rat& x) {
    if (!is_integer(x)) throw MathError("expected an integer, got " + to_pq(x));
    if (!x.get_num().fits_slong_p()) throw MathError("integer out of range");
    return x.get_num().get_si();
}

inline Rat rat_pow(const Rat& b, unsigned long e) {
    Rat r = 1;
    for (unsigned long i = 0; i < e; ++i) r *= b;
    return r;
}

inline long gcd_long(long a, long b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
        long t = a % b;
        a = b;
        b = t;
    }
    return a;
}

inline long lcm_long(long a, long b) {
    if (a == 0 || b == 0) return 0;
    return a / gcd_long(a, b) * b;
}

/// Floor division for possibly negative numerators.
inline long floor_div(long a, long b) {
    long q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

}  // namespace specrig
