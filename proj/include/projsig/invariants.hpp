#pragma once

#include <functional>
#include <string_view>

#include "projsig/curves.hpp"

namespace projsig {

// The differential invariants of planar curves used throughout: the two
// discriminants whose identical vanishing marks exceptional curves, and the
// two signature pairs (one per transformation group).
enum class Invariant {
    Delta1,      // affine discriminant: zero identically on lines and parabolas
    Delta2,      // projective discriminant: zero identically on lines and conics
    KAffine,     // affine signature components (equi-affine curvature pair)
    TAffine,
    KProjective, // projective signature components
    TProjective
};

std::string_view invariant_name(Invariant which);

// An invariant written out as an explicit rational function of the graph-jet
// coordinates x, y, y1..y8 (y_k = d^k y / dx^k along a graph y(x)).
struct JetExpression {
    Invariant id;
    int order; // highest jet coordinate appearing
    RatFun expr;
};

const JetExpression& jet_expression(Invariant which);

// Coarse classification of a planar curve by which discriminants vanish
// identically along it. Parabola and Conic both have Delta2 == 0 (every
// parabola is a conic); Parabola additionally has Delta1 == 0.
enum class CurveClass { Line, Parabola, Conic, Generic };

std::string_view curve_class_name(CurveClass c);

struct Classification {
    CurveClass cls{};
    // Exceptional curves admit no signature for the group: every curve of
    // the class is group-equivalent to every other one.
    bool affine_exceptional = false;     // lines and parabolas
    bool projective_exceptional = false; // lines and all conics
};

Classification classify(const PlanarParametricCurve& c);
// For implicit curves the vanishing tests use pseudo-remainders modulo f;
// they are decisive when f is irreducible (the intended input).
Classification classify(const PlanarImplicitCurve& c);

// Raised when an invariant is restricted to a curve along which the
// discriminant in its denominator vanishes identically.
struct ExceptionalCurveError : std::domain_error {
    CurveClass cls;
    ExceptionalCurveError(CurveClass c, const std::string& what)
        : std::domain_error(what), cls(c) {}
};

// The invariant as a rational function along the curve: of the parameter for
// parametric curves, of x and y for implicit curves (restricting to the
// invariant's value on the locus f = 0).
RatFun restrict_invariant(Invariant which, const PlanarParametricCurve& c);
RatFun restrict_invariant(Invariant which, const PlanarImplicitCurve& c);

// ---------------------------------------------------------------------------
// Numerator calculus. Exposed for the projection-family search, which runs
// the same computations with symbolic family parameters in the coordinates.
// ---------------------------------------------------------------------------

// For a parametric curve x = p/d, y = q/d (one common denominator) the graph
// jets are y_k = n_k d^(k-1) / a^(2k-1), where a = p'd - pd' and the n_k
// follow a polynomial recursion. Along an implicit curve f = 0 the same
// shape holds with a = f_y, d = 1. In every invariant ratio the powers of a
// and d cancel identically, which is why brackets in the n_k suffice.
struct JetNumerators {
    Poly a;
    Poly d;
    std::vector<Poly> n; // n[k] = n_k for 1 <= k <= kmax; n[0] unused

    const Poly& at(int k) const { return n.at(static_cast<std::size_t>(k)); }
};

JetNumerators jet_numerators(const Poly& p, const Poly& q, const Poly& d, Sym t, int kmax);
JetNumerators jet_numerators_implicit(const Poly& f, int kmax);

// Isobaric bracket polynomials, named by weight. slot[k] stands for the k-th
// jet coordinate (or its numerator); entries 2..{4,5,6,7,8} are read.
Poly bracket_w6(const std::vector<Poly>& slot);
Poly bracket_w9(const std::vector<Poly>& slot);
Poly bracket_w12(const std::vector<Poly>& slot);
Poly bracket_w24(const std::vector<Poly>& slot);
Poly bracket_w28(const std::vector<Poly>& slot);

// Classification and restriction through an explicit numerator set.
// vanishes(p) must decide whether p is identically zero along the curve:
// Poly::is_zero for parametric curves, a pseudo-remainder test modulo f for
// implicit ones. Works with free family parameters in the coefficients.
Classification classify_numerators(const JetNumerators& jn,
                                   const std::function<bool(const Poly&)>& vanishes);

RatFun assemble_invariant(Invariant which, const JetNumerators& jn,
                          const std::function<bool(const Poly&)>& vanishes);

} // namespace projsig
