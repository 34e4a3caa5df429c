#pragma once

#include "projsig/signatures.hpp"
#include "projsig/solve.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace projsig {

// ---------------------------------------------------------------------------
// Candidate image families. Deciding projection existence reduces to deciding
// whether some member of a low-parameter family of planar curves is
// group-equivalent to the target: central projections reduce to a
// three-parameter family, parallel projections to a cascade of a
// zero-, one-, and two-parameter family.
// ---------------------------------------------------------------------------

enum class FamilyKind { Central, ParallelA, ParallelB, ParallelPlain };
const char* family_kind_name(FamilyKind k);

// Transformation group a family's members are compared under.
Group family_group(FamilyKind k);

// The planar curve family obtained by composing a reduced projection with the
// spatial curve. Component functions are exact rational functions of the
// curve parameter and the family parameter symbols.
struct FamilyCurve {
    FamilyKind kind{};
    Sym param{};               // curve parameter (inherited from the source)
    std::vector<Sym> unknowns; // family parameter symbols, canonical order
    RatFun x, y;               // members: substitute rational values for unknowns
};

// Central:       x = (z1 + c1)/(z3 + c3), y = (z2 + c2)/(z3 + c3)
// ParallelA:     x = z1 + a1*z3,          y = z2 + a2*z3
// ParallelB:     x = z1 + b*z2,           y = z3
// ParallelPlain: x = z2,                  y = z3
FamilyCurve family(const SpatialParametricCurve& Z, FamilyKind kind);

// The family member at one parameter assignment. Throws CurveError when the
// assignment is degenerate (vanishing denominator or constant image).
PlanarParametricCurve family_member(const FamilyCurve& fam, const Assignment& params);

// ---------------------------------------------------------------------------
// Projection matrices: 3x4 rational matrices modulo scale.
// ---------------------------------------------------------------------------

// A is singular where it must be invertible (or not affine where an affine
// map is required).
struct SingularA : std::invalid_argument {
    explicit SingularA(const std::string& what) : std::invalid_argument(what) {}
};

// The projected image degenerates: the homogenizing coordinate vanishes
// identically along the curve, or the image map is constant.
struct ImageDegenerate : std::runtime_error {
    explicit ImageDegenerate(const std::string& what) : std::runtime_error(what) {}
};

// A computation exceeded the solver's certified envelope; neither a witness
// nor a sound "no" could be established.
struct DegreeCapExceeded : std::runtime_error {
    int degree; // offending degree when known, -1 otherwise
    DegreeCapExceeded(const std::string& what, int deg = -1)
        : std::runtime_error(what), degree(deg) {}
};

class ProjectionMatrix {
public:
    using Rows = std::array<std::array<Rat, 4>, 3>;

    // Normalizes so the first nonzero entry (row-major) equals 1.
    // Throws std::invalid_argument unless the matrix has rank 3.
    explicit ProjectionMatrix(Rows entries);

    const Rat& at(int i, int j) const { return m_[size_t(i)][size_t(j)]; }
    const Rows& rows() const { return m_; }

    bool is_central() const;  // left 3x3 block nonsingular
    bool is_parallel() const; // last row proportional to (0,0,0,1)

    std::string str() const;

private:
    Rows m_;
};

using Mat3 = std::array<std::array<Rat, 3>, 3>;

// The composite of an image-plane change of coordinates A with the reduced
// projection of the given kind. For Central, A is any invertible 3x3 matrix
// acting projectively; for the parallel kinds A must be affine (last row
// (0,0,1)) with invertible linear part. params holds (c1,c2,c3), (a1,a2),
// (b), or nothing, matching the kind. Throws SingularA.
ProjectionMatrix assemble_projection(FamilyKind kind, const std::vector<Rat>& params,
                                     const Mat3& A);

// True iff F(P(Gamma(s))) vanishes identically, where F is the implicit
// equation of X's image — the independent certificate behind every "yes".
// Throws ImageDegenerate when the projected image is not a curve (constant
// map, or the homogenizing row vanishes identically along the curve).
bool verify_projection(const ProjectionMatrix& P, const SpatialParametricCurve& Z,
                       const PlanarCurve& X);

// ---------------------------------------------------------------------------
// Parameter matching: which family members carry the target signature.
// ---------------------------------------------------------------------------

// A parameter assignment that survived exact re-verification, tagged by
// whether it was an isolated rational solution of the matching system or a
// sampled point of a positive-dimensional solution component.
enum class SolutionKind { Isolated, ComponentSample };

struct SystemSolution {
    Assignment params;
    SolutionKind kind{};
};

struct MatchResult {
    std::vector<SystemSolution> solutions; // each exactly re-verified
    bool applicable = true;                // false: target kind not handled here
    bool certified_complete = true;        // no elimination was truncated
    bool nonrational_candidates = false;   // non-rational (possibly real) roots seen
    bool real_nonrational_roots = false;
    bool positive_dimensional = false;
    std::vector<std::string> notes;
};

struct MatchOptions {
    SolverConfig solver{};
    int anchor_count = 2;       // evaluation points pinning constant values
    int identity_samples = -1;  // -1: derive from the degree bound
};

// Members whose invariant pair is identically the constant target point.
// Builds the cleared polynomial conditions (constancy of the first invariant
// via its logarithmic derivative plus anchored values, the second invariant
// matched by cross-multiplied identity), solves, and re-verifies each
// candidate by direct restriction. Not applicable to curve-kind targets.
MatchResult match_constant_signature(const FamilyCurve& fam, const SignatureObject& target,
                                     const MatchOptions& opt = {});

// Members whose invariant pair traces the target signature curve: the
// composed identity S(K(params,s), T(params,s)) == 0 is reduced to finitely
// many evaluations (one- and two-parameter families), or — for the
// three-parameter central family, where expanding the composition is
// infeasible — to the parameter-aligned derivative-matching system against a
// parametric target (recorded in the notes; generation only, every candidate
// is certified independently). Candidates failing the non-exceptionality or
// non-constancy checks are rejected with a DegenerateCandidate note.
// aligned_target supplies the parametric target for the aligned route.
MatchResult match_curve_signature(const FamilyCurve& fam, const SignatureObject& target,
                                  const std::optional<PlanarParametricCurve>& aligned_target,
                                  const MatchOptions& opt = {});

// ---------------------------------------------------------------------------
// Decision procedures.
// ---------------------------------------------------------------------------

enum class Verdict { Yes, No, ComplexOnly };
const char* verdict_name(Verdict v);

struct ProjectionWitness {
    FamilyKind kind{};
    Assignment params;
    SolutionKind solution_kind{};
};

struct ProjectionDecision {
    Verdict verdict{};
    std::vector<ProjectionWitness> witnesses; // each certified exactly
    std::optional<ProjectionMatrix> matrix;   // set when a verified matrix was built
    std::vector<std::string> trace;
};

struct DecisionOptions {
    SolverConfig solver{};
    SignatureOptions signature{};
    MatchOptions match{};
    // Cascade order for the parallel decision; the final verdict is
    // order-invariant, only the short-circuit trace changes.
    std::vector<FamilyKind> parallel_order = {FamilyKind::ParallelPlain, FamilyKind::ParallelB,
                                              FamilyKind::ParallelA};
};

// Does some central projection map Z onto X? Routes by the projective class
// of X: lines by coplanarity of Z, conics by the vanishing locus of the
// projective discriminant over the central family, generic targets by
// signature matching. Yes always carries a certificate (a verified matrix or
// a member certified group-equivalent to X); No only with a complete
// enumeration; ComplexOnly when candidates exist beyond exact rational
// verification. Throws DegreeCapExceeded when no sound verdict is reachable.
ProjectionDecision decide_central(const SpatialParametricCurve& Z, const PlanarCurve& X,
                                  const DecisionOptions& opt = {});

// Does some parallel projection map Z onto X? Routes by the affine class of
// X: lines by coplanarity, parabolas by the affine-discriminant systems over
// the three reduced families, generic targets by the Plain -> B -> A cascade
// (short-circuiting on the first certified yes).
ProjectionDecision decide_parallel(const SpatialParametricCurve& Z, const PlanarCurve& X,
                                   const DecisionOptions& opt = {});

} // namespace projsig
