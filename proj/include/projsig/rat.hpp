#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace projsig {

// Exact arbitrary-precision integers and rationals.
// Rat is kept canonical at all times: fully reduced, denominator > 0.
// mpq_class maintains this through arithmetic; only raw constructions from
// unreduced numerator/denominator pairs need an explicit canonicalize().
using Int = mpz_class;
using Rat = mpq_class;

inline Rat rat(long num, long den = 1) {
    if (den == 0) throw std::domain_error("rat: zero denominator");
    Rat q(num, den);
    q.canonicalize();
    return q;
}

inline Rat rat(const Int& num, const Int& den) {
    if (den == 0) throw std::domain_error("rat: zero denominator");
    Rat q(num, den);
    q.canonicalize();
    return q;
}

// Accepts "p", "-p", "p/q" with optional sign; q > 0 after canonicalization.
inline Rat rat_from_string(const std::string& text) {
    Rat q;
    if (q.set_str(text, 10) != 0)
        throw std::invalid_argument("rat_from_string: bad literal '" + text + "'");
    q.canonicalize();
    return q;
}

inline std::string to_string(const Rat& q) { return q.get_str(); }

inline int sign(const Rat& q) { return sgn(q); }

inline bool is_integer(const Rat& q) { return q.get_den() == 1; }

} // namespace projsig
