#pragma once

#include "projsig/invariants.hpp"

#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace projsig {

// Transformation group a comparison is taken under. Affine uses the
// equi-affine invariant pair, Projective the projective pair.
enum class Group { Affine, Projective };
const char* group_name(Group g);

// Either flavor of planar curve accepted by the decision routines.
using PlanarCurve = std::variant<PlanarParametricCurve, PlanarImplicitCurve>;

// The two invariant restrictions of one curve, as exact rational functions
// of the curve's own coordinate: the parameter for parametric sources, or
// (x, y) understood modulo the defining polynomial for implicit sources.
struct SignatureMap {
    Group group;
    bool parametric;
    Sym var;  // parameter symbol (parametric sources only)
    RatFun k; // first invariant restriction
    RatFun t; // second invariant restriction
    Poly f;   // defining polynomial (implicit sources only)
};

// Throws ExceptionalCurveError when the curve's class makes the invariant
// pair undefined for the group; callers route those classes separately.
SignatureMap signature_map(const PlanarParametricCurve& c, Group g);
SignatureMap signature_map(const PlanarImplicitCurve& c, Group g);

enum class SignatureKind { Point, Curve };

// Zariski closure of the signature image: a single point when both
// restrictions are constant, else the canonical defining polynomial of the
// image curve in the (kappa, tau) plane.
struct SignatureObject {
    Group group;
    SignatureKind kind;
    Rat point_k, point_t; // kind == Point
    Poly equation;        // kind == Curve: squarefree, primitive, sign-canonical
    std::string str() const;
};

// Elimination produced nothing usable (identically zero resultant, or no
// candidate factor passes the vanishing gate). Reported, never guessed past.
struct EliminationDegenerate : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SignatureOptions {
    int extraneous_samples = 10; // sample points for dropping spurious factors
    int witness_samples = 8;     // signature points tried for a real witness
};

SignatureObject implicit_signature(const SignatureMap& m, const SignatureOptions& opt = {});

// S(K, T) for S in (kappa, tau): the signature polynomial evaluated on a
// candidate invariant pair, by nested Horner over rational functions. Zero
// iff the pair traces (a subset of) the zero locus of S.
RatFun compose_signature(const Poly& S, const RatFun& K, const RatFun& T);

enum class Equivalence { Equivalent, NotEquivalent, EquivalentOverComplexOnly };
const char* equivalence_name(Equivalence e);

// Pure signature-object comparison. Equal curve-kind objects certify
// equivalence over the complexified group only; the caller upgrades with a
// real witness. Group tags must match.
Equivalence signatures_equal(const SignatureObject& a, const SignatureObject& b);

// Real-affine class of a plane conic given by a degree-2 polynomial.
enum class ConicType { RealEllipse, ImaginaryEllipse, Hyperbola, ParabolaArc, Degenerate };
const char* conic_type_name(ConicType t);
ConicType conic_type(const Poly& f);

struct EquivalenceDecision {
    Equivalence verdict;
    std::vector<std::string> trace;
};

// Full group-equivalence decision: routes exceptional classes by their
// classical normal forms, separates real conic types under the affine group,
// and otherwise compares canonical implicit signatures with a real-witness
// upgrade. Symmetric in its curve arguments.
EquivalenceDecision equivalent(const PlanarCurve& c1, const PlanarCurve& c2, Group g,
                               const SignatureOptions& opt = {});

} // namespace projsig
