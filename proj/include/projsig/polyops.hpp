#pragma once

#include "projsig/poly.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace projsig {

struct DegenerateInput : std::domain_error {
    using std::domain_error::domain_error;
};

// Exact multivariate division: returns f/g when g divides f exactly.
std::optional<Poly> divide_exact(const Poly& f, const Poly& g);

// Repeatedly divide out the factor g; returns {core, multiplicity}.
std::pair<Poly, unsigned> strip_factor(Poly f, const Poly& g);

// Pseudo-division with respect to v: lc_v(g)^(deg f - deg g + 1) * f = q*g + r,
// deg_v r < deg_v g. Returns {q, r}.
std::pair<Poly, Poly> pseudo_divide(const Poly& f, const Poly& g, Sym v);
Poly prem(const Poly& f, const Poly& g, Sym v);

// Content of f viewed in R[v]: gcd of the v-coefficients (a v-free poly).
Poly content_in(const Poly& f, Sym v);

// GCD over Q[vars], returned integer-primitive with positive leading
// coefficient; gcd(0,0) = 0, gcd(f,0) = normalized f.
Poly poly_gcd(const Poly& f, const Poly& g);

// Resultant of f and g with respect to v via the subresultant PRS
// (Brown-Traub). Convention: the exact Sylvester determinant of f and g
// in v over the remaining coefficient ring, which equals
// lc(f)^deg(g) * prod of g over the roots of f (with multiplicity).
// Zero input polynomials raise DegenerateInput.
Poly resultant(const Poly& f, const Poly& g, Sym v);

// Sylvester-determinant resultant by fraction-free elimination; exponentially
// slower, used as an independent oracle in tests.
Poly resultant_sylvester(const Poly& f, const Poly& g, Sym v);

// Squarefree part (char 0), integer-primitive, positive leading coefficient.
Poly squarefree_part(const Poly& f);

// ---- univariate real-root tools (f must involve at most the variable v) ----

// Sturm sequence of f in v; f need not be squarefree.
std::vector<Poly> sturm_sequence(const Poly& f, Sym v);

// Number of distinct real roots in (a, b]; requires a < b.
int sturm_count(const std::vector<Poly>& seq, Sym v, const Rat& a, const Rat& b);

// Number of distinct real roots on all of R.
int real_root_count(const Poly& f, Sym v);

// Cauchy-style bound: all real roots lie in [-B, B].
Rat root_bound(const Poly& f, Sym v);

struct IsolatedRoot {
    Rat lo, hi;              // isolating open interval (lo, hi), or exact point
    std::optional<Rat> exact; // set when the root is rational (verified)
};

// Isolate all distinct real roots; rational roots are recognized exactly when
// their denominator does not exceed den_bound (reconstruction + verification).
std::vector<IsolatedRoot> isolate_real_roots(const Poly& f, Sym v,
                                             const Int& den_bound = Int(1000000));

// All distinct rational roots of f (exact, verified), in increasing order.
std::vector<Rat> rational_roots(const Poly& f, Sym v);

} // namespace projsig
