#include "projsig/projection.hpp"

#include "projsig/linalg.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <set>
#include <sstream>

namespace projsig {

namespace {

// ---------------------------------------------------------------------------
// Small utilities.
// ---------------------------------------------------------------------------

std::string fmt_assignment(const Assignment& a) {
    std::string out = "(";
    bool first = true;
    for (const auto& [v, r] : a) {
        if (!first) out += ", ";
        out += std::string(name(v)) + "=" + r.get_str();
        first = false;
    }
    return out + ")";
}

Rat rat_pow(const Rat& q, int e) {
    if (e == 0) return Rat(1);
    Rat base = e > 0 ? q : Rat(1) / q;
    Rat acc(1);
    for (int i = 0; i < (e > 0 ? e : -e); ++i) acc *= base;
    return acc;
}

// k-th rational anchor/sample point: 0, 1, -1, 2, -2, ...
Rat sample_point(int idx) {
    if (idx <= 0) return Rat(0);
    int k = (idx + 1) / 2;
    return idx % 2 ? Rat(k) : Rat(-k);
}

// Horner evaluation of a polynomial in one symbol at a rational function;
// coefficients may still contain other symbols.
RatFun horner1(const Poly& f, Sym v, const RatFun& val) {
    int d = f.degree(v);
    if (d <= 0) return RatFun(f);
    RatFun acc;
    for (int k = d; k >= 0; --k) acc = acc * val + RatFun(f.coeff_of(v, k));
    return acc;
}

// f(v1, v2) evaluated at rational functions, by nested Horner.
RatFun eval_at2(const Poly& f, Sym v1, const RatFun& x1, Sym v2, const RatFun& x2) {
    int d = f.degree(v1);
    if (d <= 0) return horner1(f, v2, x2);
    RatFun acc;
    for (int k = d; k >= 0; --k) acc = acc * x1 + horner1(f.coeff_of(v1, k), v2, x2);
    return acc;
}

const Poly& implicit_of(const PlanarCurve& X) {
    if (const auto* p = std::get_if<PlanarParametricCurve>(&X)) return p->implicit_equation();
    return std::get<PlanarImplicitCurve>(X).f();
}

Classification classify_planar(const PlanarCurve& X) {
    return std::visit([](const auto& c) { return classify(c); }, X);
}

SignatureMap signature_map_planar(const PlanarCurve& X, Group g) {
    return std::visit([g](const auto& c) { return signature_map(c, g); }, X);
}

// ---------------------------------------------------------------------------
// Family jets and factored invariant ratios.
//
// Every bracket over a family's jet numerators factors as a^ea * d^ed * core
// where a is the first-component numerator derivative and d the common
// denominator; invariant ratios are products of cores and (usually fully
// cancelling) structural powers. Working with the unexpanded factor lists
// keeps the matching systems small: constancy conditions use the logarithmic
// derivative (first powers only) and value conditions substitute the
// evaluation point before taking powers.
// ---------------------------------------------------------------------------

std::vector<Poly> jet_slots(const JetNumerators& jn, int kmax) {
    std::vector<Poly> s(static_cast<std::size_t>(kmax) + 1, Poly(0L));
    for (int k = 2; k <= kmax; ++k) s[static_cast<std::size_t>(k)] = jn.at(k);
    return s;
}

void family_pqd(const FamilyCurve& fam, Poly& p, Poly& q, Poly& d) {
    if (fam.x.den() == fam.y.den()) {
        d = fam.x.den();
        p = fam.x.num();
        q = fam.y.num();
    } else {
        d = fam.x.den() * fam.y.den();
        p = fam.x.num() * fam.y.den();
        q = fam.y.num() * fam.x.den();
    }
}

JetNumerators family_jets(const FamilyCurve& fam, int kmax) {
    Poly p, q, d;
    family_pqd(fam, p, q, d);
    return jet_numerators(p, q, d, fam.param, kmax);
}

struct StrippedBracket {
    Poly core;
    Rat scale{0};
    int ea = 0, ed = 0;
    bool zero = true;
};

StrippedBracket strip_core(Poly raw, const Poly& a, const Poly& d) {
    StrippedBracket s;
    if (raw.is_zero()) {
        s.core = Poly(0L);
        return s;
    }
    s.zero = false;
    if (!a.is_constant()) {
        auto [core, mult] = strip_factor(raw, a);
        raw = core;
        s.ea = static_cast<int>(mult);
    }
    if (!d.is_constant()) {
        auto [core, mult] = strip_factor(raw, d);
        raw = core;
        s.ed = static_cast<int>(mult);
    }
    s.scale = raw.content();
    s.core = raw.primitive_part();
    return s;
}

// scale * prod factors[i].first ^ factors[i].second, or identically zero.
struct FactoredRatio {
    Rat scale{1};
    std::vector<std::pair<Poly, int>> factors;
    bool zero = false;

    void mul(const Poly& f, int e) {
        if (e == 0) return;
        if (f.is_constant()) {
            scale *= rat_pow(f.constant_value(), e);
            return;
        }
        factors.emplace_back(f, e);
    }
    void mul_stripped(const StrippedBracket& s, int e) {
        scale *= rat_pow(s.scale, e);
        mul(s.core, e);
    }
};

// Numerator of d/ds log(ratio) over the product of the distinct factors.
Poly log_derivative_numerator(const FactoredRatio& r, Sym s) {
    Poly acc(0L);
    for (std::size_t i = 0; i < r.factors.size(); ++i) {
        Poly term = Rat(r.factors[i].second) * r.factors[i].first.derivative(s);
        if (term.is_zero()) continue;
        for (std::size_t j = 0; j < r.factors.size(); ++j)
            if (j != i) term *= r.factors[j].first;
        acc += term;
    }
    return acc;
}

Poly product_first_powers(const FactoredRatio& r) {
    Poly p(1L);
    for (const auto& [f, e] : r.factors) p *= f;
    return p;
}

// scale*pos - target*neg where ratio = scale*pos/neg, fully expanded in s.
Poly cross_identity_poly(const FactoredRatio& r, const Rat& target) {
    Poly pos(1L), neg(1L);
    for (const auto& [f, e] : r.factors) {
        if (e > 0)
            pos *= f.pow(static_cast<unsigned>(e));
        else
            neg *= f.pow(static_cast<unsigned>(-e));
    }
    if (r.zero) pos = Poly(0L);
    return r.scale * pos - target * neg;
}

// Same identity evaluated at s = s0 (factors substituted before powering).
Poly anchor_identity_poly(const FactoredRatio& r, const Rat& target, Sym s, const Rat& s0) {
    Poly pos(1L), neg(1L);
    for (const auto& [f, e] : r.factors) {
        Poly f0 = f.subst(s, s0);
        if (e > 0)
            pos *= f0.pow(static_cast<unsigned>(e));
        else
            neg *= f0.pow(static_cast<unsigned>(-e));
    }
    if (r.zero) pos = Poly(0L);
    return r.scale * pos - target * neg;
}

// fam(s0) == tgt(s0) cross-multiplied through both factored forms.
Poly cross_value_anchor(const FactoredRatio& fam, const FactoredRatio& tgt, Sym s, const Rat& s0) {
    auto split = [&](const FactoredRatio& r, Poly& pos, Poly& neg) {
        pos = Poly(1L);
        neg = Poly(1L);
        for (const auto& [f, e] : r.factors) {
            Poly f0 = f.subst(s, s0);
            if (e > 0)
                pos *= f0.pow(static_cast<unsigned>(e));
            else
                neg *= f0.pow(static_cast<unsigned>(-e));
        }
        if (r.zero) pos = Poly(0L);
    };
    Poly pf, nf, pt, nt;
    split(fam, pf, nf);
    split(tgt, pt, nt);
    return fam.scale * pf * nt - tgt.scale * pt * nf;
}

// The invariant pair of a family in factored form. `exceptional` is set when
// the denominator bracket vanishes identically across the family, i.e. every
// member of the family is exceptional for the group.
struct FamilyAlgebra {
    Sym s{};
    JetNumerators jn;
    FactoredRatio K, T;
    bool exceptional = false;
};

FamilyAlgebra family_algebra(const JetNumerators& jn, Sym s, Group g) {
    FamilyAlgebra alg;
    alg.s = s;
    alg.jn = jn;
    if (g == Group::Projective) {
        auto slots = jet_slots(jn, 8);
        StrippedBracket s9 = strip_core(bracket_w9(slots), jn.a, jn.d);
        if (s9.zero) {
            alg.exceptional = true;
            return alg;
        }
        StrippedBracket s24 = strip_core(bracket_w24(slots), jn.a, jn.d);
        StrippedBracket s28 = strip_core(bracket_w28(slots), jn.a, jn.d);
        StrippedBracket s2 = strip_core(jn.at(2), jn.a, jn.d);
        alg.K.scale = Rat(729, 8);
        alg.K.zero = s24.zero;
        if (!s24.zero) {
            alg.K.mul_stripped(s24, 3);
            alg.K.mul_stripped(s9, -8);
            alg.K.mul(jn.a, 3 * s24.ea - 8 * s9.ea);
            alg.K.mul(jn.d, 3 * s24.ed - 8 * s9.ed);
        } else {
            alg.K.mul_stripped(s9, -8);
        }
        alg.T.scale = Rat(243, 2);
        alg.T.zero = s28.zero || s2.zero;
        if (!alg.T.zero) {
            alg.T.mul_stripped(s2, 4);
            alg.T.mul_stripped(s28, 1);
            alg.T.mul_stripped(s9, -4);
            alg.T.mul(jn.a, 4 * s2.ea + s28.ea - 4 * s9.ea);
            alg.T.mul(jn.d, 4 * s2.ed + s28.ed - 4 * s9.ed);
        } else {
            alg.T.mul_stripped(s9, -4);
        }
    } else {
        auto slots = jet_slots(jn, 6);
        StrippedBracket s6 = strip_core(bracket_w6(slots), jn.a, jn.d);
        if (s6.zero) {
            alg.exceptional = true;
            return alg;
        }
        StrippedBracket s9 = strip_core(bracket_w9(slots), jn.a, jn.d);
        StrippedBracket s12 = strip_core(bracket_w12(slots), jn.a, jn.d);
        alg.K.zero = s9.zero;
        if (!s9.zero) {
            alg.K.mul_stripped(s9, 2);
            alg.K.mul_stripped(s6, -3);
            alg.K.mul(jn.a, 2 * s9.ea - 3 * s6.ea);
            alg.K.mul(jn.d, 2 * s9.ed - 3 * s6.ed);
        } else {
            alg.K.mul_stripped(s6, -3);
        }
        alg.T.zero = s12.zero;
        if (!s12.zero) {
            alg.T.mul_stripped(s12, 1);
            alg.T.mul_stripped(s6, -2);
            alg.T.mul(jn.a, s12.ea - 2 * s6.ea);
            alg.T.mul(jn.d, s12.ed - 2 * s6.ed);
        } else {
            alg.T.mul_stripped(s6, -2);
        }
    }
    return alg;
}

// ---------------------------------------------------------------------------
// Equation collection and solving.
// ---------------------------------------------------------------------------

void add_equation(std::vector<Poly>& eqs, const Poly& p) {
    if (p.is_zero()) return;
    Poly q = p.normalized_sign();
    for (const auto& e : eqs)
        if (e == q) return;
    eqs.push_back(std::move(q));
}

void add_coeff_equations(std::vector<Poly>& eqs, const Poly& identity, Sym s) {
    for (const auto& [k, c] : identity.coeffs_in(s)) add_equation(eqs, c);
}

// Online row echelon form over the monomial basis, highest monomial first.
// Inserting a polynomial either reduces it to zero against the existing rows
// or adds one new pivot row; the row space (hence the common zero set of the
// rows) always equals that of everything inserted so far.  Emitting applies
// full back-substitution, so the basis contains the lowest-degree
// representatives the span admits — which is what keeps the elimination
// solver off the original high-degree equations.
class EchelonBasis {
    struct GrlexGreater {
        GrlexLess less;
        bool operator()(const Mono& a, const Mono& b) const { return less(b, a); }
    };
    using Row = std::map<Mono, Rat, GrlexGreater>;
    std::map<Mono, Row, GrlexGreater> rows_; // keyed by leading monomial, coeff 1

    static void axpy(Row& r, const Rat& f, const Row& p) { // r -= f * p
        for (const auto& [m, c] : p) {
            auto it = r.find(m);
            if (it == r.end()) {
                Rat v = -f * c;
                if (v != 0) r.emplace(m, std::move(v));
            } else {
                it->second -= f * c;
                if (it->second == 0) r.erase(it);
            }
        }
    }

public:
    std::size_t rank() const { return rows_.size(); }

    bool insert(const Poly& p) {
        Row r;
        for (const auto& [m, c] : p.terms()) r.emplace(m, c);
        while (!r.empty()) {
            auto lead = r.begin();
            auto it = rows_.find(lead->first);
            if (it == rows_.end()) {
                Rat inv = 1 / lead->second;
                for (auto& [m, c] : r) c *= inv;
                rows_.emplace(r.begin()->first, std::move(r));
                return true;
            }
            Rat f = lead->second; // copy: axpy erases the lead entry it refers to
            axpy(r, f, it->second);
        }
        return false;
    }

    std::vector<Poly> emit() const {
        // Back-substitute so no row's tail contains another row's pivot.
        std::map<Mono, Row, GrlexGreater> red = rows_;
        for (auto& kv : red) {
            Row& row = kv.second;
            bool changed = true;
            while (changed) {
                changed = false;
                for (auto it = std::next(row.begin()); it != row.end(); ++it) {
                    auto pit = red.find(it->first);
                    if (pit == red.end()) continue;
                    Rat f = it->second; // copy: axpy erases the entry it refers to
                    axpy(row, f, pit->second);
                    changed = true;
                    break;
                }
            }
        }
        std::vector<Poly> out;
        for (const auto& [lead, row] : red) {
            Poly p;
            for (const auto& [m, c] : row) p += Poly::term(c, m);
            if (!p.is_zero()) out.push_back(p.primitive_part());
        }
        std::sort(out.begin(), out.end(), [](const Poly& a, const Poly& b) {
            if (a.total_degree() != b.total_degree()) return a.total_degree() < b.total_degree();
            return a.term_count() < b.term_count();
        });
        return out;
    }
};

struct RawCandidates {
    std::vector<SystemSolution> list; // deduplicated, isolated first
    SolveOutcome out;
};

RawCandidates run_match_solve(const std::vector<Poly>& eqs, const std::vector<Sym>& unknowns,
                              const SolverConfig& cfg) {
    RawCandidates rc;
    rc.out = solve_system(eqs, unknowns, cfg);
    std::set<Assignment> seen;
    for (const auto& a : rc.out.rational)
        if (seen.insert(a).second) rc.list.push_back({a, SolutionKind::Isolated});
    for (const auto& a : rc.out.component_samples)
        if (seen.insert(a).second) rc.list.push_back({a, SolutionKind::ComponentSample});
    return rc;
}

void merge_solver_flags(MatchResult& mr, const SolveOutcome& out) {
    mr.certified_complete = mr.certified_complete && out.certified_complete;
    mr.nonrational_candidates = mr.nonrational_candidates || out.nonrational_candidates;
    mr.real_nonrational_roots = mr.real_nonrational_roots || out.real_nonrational_roots;
    mr.positive_dimensional = mr.positive_dimensional || out.positive_dimensional;
    for (const auto& n : out.notes) mr.notes.push_back("solver: " + n);
}

// ---------------------------------------------------------------------------
// Candidate re-verification by direct restriction to the member.
// ---------------------------------------------------------------------------

Invariant first_invariant(Group g) {
    return g == Group::Projective ? Invariant::KProjective : Invariant::KAffine;
}
Invariant second_invariant(Group g) {
    return g == Group::Projective ? Invariant::TProjective : Invariant::TAffine;
}

bool verify_point_candidate(const FamilyCurve& fam, const Assignment& a, const Rat& k0,
                            const Rat& t0, Group g, std::vector<std::string>& notes) {
    try {
        PlanarParametricCurve member = family_member(fam, a);
        RatFun K = restrict_invariant(first_invariant(g), member);
        RatFun T = restrict_invariant(second_invariant(g), member);
        if (K.is_constant() && T.is_constant() && K.constant_value() == k0 &&
            T.constant_value() == t0)
            return true;
        notes.push_back("candidate " + fmt_assignment(a) +
                        ": member signature differs from the target point");
        return false;
    } catch (const ExceptionalCurveError& e) {
        notes.push_back("DegenerateCandidate " + fmt_assignment(a) + ": " + e.what());
        return false;
    } catch (const CurveError& e) {
        notes.push_back("DegenerateCandidate " + fmt_assignment(a) + ": " + e.what());
        return false;
    }
}

bool verify_curve_candidate(const FamilyCurve& fam, const Assignment& a, const Poly& S, Group g,
                            std::vector<std::string>& notes) {
    try {
        PlanarParametricCurve member = family_member(fam, a);
        Classification c = classify(member);
        bool exceptional =
            g == Group::Projective ? c.projective_exceptional : c.affine_exceptional;
        if (exceptional) {
            notes.push_back("DegenerateCandidate " + fmt_assignment(a) + ": member is a " +
                            std::string(curve_class_name(c.cls)) +
                            ", exceptional for the group");
            return false;
        }
        RatFun K = restrict_invariant(first_invariant(g), member);
        RatFun T = restrict_invariant(second_invariant(g), member);
        if (K.is_constant() && T.is_constant()) {
            notes.push_back("DegenerateCandidate " + fmt_assignment(a) +
                            ": member signature is a single point, not a curve");
            return false;
        }
        if (!eval_at2(S, Sym::kappa, K, Sym::tau, T).is_zero()) {
            notes.push_back("candidate " + fmt_assignment(a) +
                            ": member signature leaves the target signature curve");
            return false;
        }
        return true;
    } catch (const ExceptionalCurveError& e) {
        notes.push_back("DegenerateCandidate " + fmt_assignment(a) + ": " + e.what());
        return false;
    } catch (const CurveError& e) {
        notes.push_back("DegenerateCandidate " + fmt_assignment(a) + ": " + e.what());
        return false;
    }
}

Mat3 identity3() {
    Mat3 I{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) I[std::size_t(i)][std::size_t(j)] = Rat(i == j ? 1 : 0);
    return I;
}

std::vector<Rat> params_vector(const FamilyCurve& fam, const Assignment& a) {
    std::vector<Rat> v;
    for (Sym u : fam.unknowns) v.push_back(a.at(u));
    return v;
}

} // namespace

// ---------------------------------------------------------------------------
// Families.
// ---------------------------------------------------------------------------

const char* family_kind_name(FamilyKind k) {
    switch (k) {
    case FamilyKind::Central: return "Central";
    case FamilyKind::ParallelA: return "ParallelA";
    case FamilyKind::ParallelB: return "ParallelB";
    default: return "ParallelPlain";
    }
}

Group family_group(FamilyKind k) {
    return k == FamilyKind::Central ? Group::Projective : Group::Affine;
}

FamilyCurve family(const SpatialParametricCurve& Z, FamilyKind kind) {
    FamilyCurve f;
    f.kind = kind;
    f.param = Z.param();
    const RatFun& z1 = Z.z(1);
    const RatFun& z2 = Z.z(2);
    const RatFun& z3 = Z.z(3);
    switch (kind) {
    case FamilyKind::Central: {
        f.unknowns = {Sym::c1, Sym::c2, Sym::c3};
        RatFun den = z3 + RatFun::variable(Sym::c3);
        f.x = (z1 + RatFun::variable(Sym::c1)) / den;
        f.y = (z2 + RatFun::variable(Sym::c2)) / den;
        break;
    }
    case FamilyKind::ParallelA:
        f.unknowns = {Sym::a1, Sym::a2};
        f.x = z1 + RatFun::variable(Sym::a1) * z3;
        f.y = z2 + RatFun::variable(Sym::a2) * z3;
        break;
    case FamilyKind::ParallelB:
        f.unknowns = {Sym::b};
        f.x = z1 + RatFun::variable(Sym::b) * z2;
        f.y = z3;
        break;
    case FamilyKind::ParallelPlain:
        f.x = z2;
        f.y = z3;
        break;
    }
    return f;
}

PlanarParametricCurve family_member(const FamilyCurve& fam, const Assignment& params) {
    RatFun x = fam.x, y = fam.y;
    for (Sym u : fam.unknowns) {
        auto it = params.find(u);
        if (it == params.end())
            throw CurveError(std::string("family_member: missing value for parameter ") +
                             std::string(name(u)));
        try {
            x = x.subst(u, it->second);
            y = y.subst(u, it->second);
        } catch (const std::domain_error& e) {
            throw CurveError(std::string("family member is degenerate: ") + e.what());
        }
    }
    return PlanarParametricCurve(fam.param, x, y);
}

// ---------------------------------------------------------------------------
// Projection matrices.
// ---------------------------------------------------------------------------

ProjectionMatrix::ProjectionMatrix(Rows entries) : m_(std::move(entries)) {
    RatMat rm(3, RatVec(4));
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 4; ++j) rm[std::size_t(i)][std::size_t(j)] = at(i, j);
    if (rank(rm) != 3) throw std::invalid_argument("projection matrix must have rank 3");
    for (auto& row : m_)
        for (auto& e : row)
            if (e != 0) {
                Rat pivot = e;
                for (auto& r2 : m_)
                    for (auto& e2 : r2) e2 /= pivot;
                return;
            }
}

bool ProjectionMatrix::is_central() const {
    RatMat left(3, RatVec(3));
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) left[std::size_t(i)][std::size_t(j)] = at(i, j);
    return det(left) != 0;
}

bool ProjectionMatrix::is_parallel() const {
    return at(2, 0) == 0 && at(2, 1) == 0 && at(2, 2) == 0 && at(2, 3) != 0;
}

std::string ProjectionMatrix::str() const {
    std::string out = "[";
    for (int i = 0; i < 3; ++i) {
        out += i ? ", [" : "[";
        for (int j = 0; j < 4; ++j) {
            if (j) out += ", ";
            out += at(i, j).get_str();
        }
        out += "]";
    }
    return out + "]";
}

ProjectionMatrix assemble_projection(FamilyKind kind, const std::vector<Rat>& params,
                                     const Mat3& A) {
    std::size_t need = kind == FamilyKind::Central      ? 3
                       : kind == FamilyKind::ParallelA  ? 2
                       : kind == FamilyKind::ParallelB  ? 1
                                                        : 0;
    if (params.size() != need)
        throw std::invalid_argument("assemble_projection: expected " + std::to_string(need) +
                                    " parameters for " + family_kind_name(kind));
    RatMat Am(3, RatVec(3));
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) Am[std::size_t(i)][std::size_t(j)] = A[std::size_t(i)][std::size_t(j)];
    if (det(Am) == 0) throw SingularA("assemble_projection: A is singular");
    if (kind != FamilyKind::Central &&
        !(A[2][0] == 0 && A[2][1] == 0))
        throw SingularA("assemble_projection: A must be affine (last row (0,0,*)) for parallel kinds");

    Rat o(1), z(0);
    std::array<std::array<Rat, 4>, 3> P0{};
    switch (kind) {
    case FamilyKind::Central:
        P0 = {{{o, z, z, params[0]}, {z, o, z, params[1]}, {z, z, o, params[2]}}};
        break;
    case FamilyKind::ParallelA:
        P0 = {{{o, z, params[0], z}, {z, o, params[1], z}, {z, z, z, o}}};
        break;
    case FamilyKind::ParallelB:
        P0 = {{{o, params[0], z, z}, {z, z, o, z}, {z, z, z, o}}};
        break;
    case FamilyKind::ParallelPlain:
        P0 = {{{z, o, z, z}, {z, z, o, z}, {z, z, z, o}}};
        break;
    }
    ProjectionMatrix::Rows R{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 4; ++j) {
            Rat acc(0);
            for (int k = 0; k < 3; ++k)
                acc += A[std::size_t(i)][std::size_t(k)] * P0[std::size_t(k)][std::size_t(j)];
            R[std::size_t(i)][std::size_t(j)] = acc;
        }
    return ProjectionMatrix(R);
}

bool verify_projection(const ProjectionMatrix& P, const SpatialParametricCurve& Z,
                       const PlanarCurve& X) {
    RatFun row[3];
    for (int i = 0; i < 3; ++i) {
        RatFun acc(P.at(i, 3));
        for (int j = 0; j < 3; ++j) acc += RatFun(P.at(i, j)) * Z.z(j + 1);
        row[i] = acc;
    }
    if (row[2].is_zero())
        throw ImageDegenerate("homogenizing coordinate vanishes identically along the curve");
    RatFun xi = row[0] / row[2];
    RatFun yi = row[1] / row[2];
    if (xi.is_constant() && yi.is_constant())
        throw ImageDegenerate("projected image is a single point");
    return eval_at2(implicit_of(X), Sym::x, xi, Sym::y, yi).is_zero();
}

// ---------------------------------------------------------------------------
// Matching.
// ---------------------------------------------------------------------------

MatchResult match_constant_signature(const FamilyCurve& fam, const SignatureObject& target,
                                     const MatchOptions& opt) {
    MatchResult mr;
    if (target.kind != SignatureKind::Point) {
        mr.applicable = false;
        mr.notes.push_back("NotApplicable: target signature is a curve, not a point");
        return mr;
    }
    Group g = family_group(fam.kind);
    if (target.group != g)
        throw std::logic_error("match_constant_signature: target group does not match the family");
    if (fam.unknowns.empty())
        throw std::logic_error(
            "match_constant_signature: the plain family has no unknowns; compare members directly");

    int kmax = g == Group::Projective ? 8 : 6;
    JetNumerators jn = family_jets(fam, kmax);
    if (jn.a.is_zero()) throw CurveError("family has a constant first component");
    FamilyAlgebra alg = family_algebra(jn, fam.param, g);
    if (alg.exceptional) {
        mr.notes.push_back("every member of the family is exceptional for the group; "
                           "no member carries a point signature");
        return mr;
    }

    std::vector<Poly> eqs;
    if (!alg.K.zero) add_coeff_equations(eqs, log_derivative_numerator(alg.K, fam.param), fam.param);
    for (int i = 0; i < std::max(1, opt.anchor_count); ++i)
        add_equation(eqs, anchor_identity_poly(alg.K, target.point_k, fam.param, sample_point(i)));
    add_coeff_equations(eqs, cross_identity_poly(alg.T, target.point_t), fam.param);

    RawCandidates rc = run_match_solve(eqs, fam.unknowns, opt.solver);
    merge_solver_flags(mr, rc.out);
    for (const auto& cand : rc.list)
        if (verify_point_candidate(fam, cand.params, target.point_k, target.point_t, g, mr.notes))
            mr.solutions.push_back(cand);
    return mr;
}

MatchResult match_curve_signature(const FamilyCurve& fam, const SignatureObject& target,
                                  const std::optional<PlanarParametricCurve>& aligned_target,
                                  const MatchOptions& opt) {
    MatchResult mr;
    if (target.kind != SignatureKind::Curve) {
        mr.applicable = false;
        mr.notes.push_back("NotApplicable: target signature is a point, not a curve");
        return mr;
    }
    Group g = family_group(fam.kind);
    if (target.group != g)
        throw std::logic_error("match_curve_signature: target group does not match the family");
    if (fam.unknowns.empty())
        throw std::logic_error(
            "match_curve_signature: the plain family has no unknowns; compare members directly");

    int kmax = g == Group::Projective ? 8 : 6;
    JetNumerators jn = family_jets(fam, kmax);
    if (jn.a.is_zero()) throw CurveError("family has a constant first component");

    if (fam.unknowns.size() <= 2) {
        // The composed identity S(K(params,s), T(params,s)) == 0, cleared of
        // denominators, is a polynomial of bounded s-degree, so it vanishes
        // identically exactly when it vanishes at more rational points than
        // the bound. Each evaluation substitutes the sample into the factored
        // bracket form first and only then takes powers, so no large
        // polynomial products or gcds ever form. Any subset of evaluations
        // yields a superset of the true parameter variety; a finite candidate
        // set is therefore already exhaustive, and the sample count escalates
        // only while the solution set stays positive-dimensional.
        FamilyAlgebra alg = family_algebra(jn, fam.param, g);
        if (alg.exceptional) {
            mr.notes.push_back("every member of the family is exceptional for the group");
            return mr;
        }
        Sym s = fam.param;
        int dk = std::max(0, target.equation.degree(Sym::kappa));
        int dt = std::max(0, target.equation.degree(Sym::tau));
        auto side_deg = [&](const FactoredRatio& r, bool positive) {
            long acc = 0;
            for (const auto& [f, e] : r.factors)
                if ((e > 0) == positive) acc += long(e > 0 ? e : -e) * std::max(0, f.degree(s));
            return acc;
        };
        long bound = long(dk) * std::max(side_deg(alg.K, true), side_deg(alg.K, false)) +
                     long(dt) * std::max(side_deg(alg.T, true), side_deg(alg.T, false));
        long full = bound + 1;
        if (opt.identity_samples > 0) full = std::min<long>(full, opt.identity_samples);
        full = std::min<long>(full, 64);

        // One cleared evaluation of the composed identity at s = s0, or
        // nullopt when every written denominator degenerates there.
        auto cleared_at = [&](const Rat& s0) -> std::optional<Poly> {
            auto sides = [&](const FactoredRatio& r, Poly& numer, Poly& denom) {
                numer = Poly(Rat(r.scale.get_num()));
                denom = Poly(Rat(r.scale.get_den()));
                for (const auto& [f, e] : r.factors) {
                    Poly f0 = f.subst(s, s0);
                    if (e > 0)
                        numer *= f0.pow(static_cast<unsigned>(e));
                    else
                        denom *= f0.pow(static_cast<unsigned>(-e));
                }
                if (r.zero) numer = Poly(0L);
            };
            Poly kn, kd, tn, td;
            sides(alg.K, kn, kd);
            sides(alg.T, tn, td);
            if (kd.is_zero() || td.is_zero()) return std::nullopt;
            // powers up front so each is computed once
            std::vector<Poly> knp{Poly(1L)}, kdp{Poly(1L)}, tnp{Poly(1L)}, tdp{Poly(1L)};
            for (int i = 1; i <= dk; ++i) {
                knp.push_back(knp.back() * kn);
                kdp.push_back(kdp.back() * kd);
            }
            for (int j = 1; j <= dt; ++j) {
                tnp.push_back(tnp.back() * tn);
                tdp.push_back(tdp.back() * td);
            }
            Poly E(0L);
            for (const auto& [ek, ck] : target.equation.coeffs_in(Sym::kappa))
                for (const auto& [et, c] : ck.coeffs_in(Sym::tau))
                    E += c * knp[std::size_t(ek)] * kdp[std::size_t(dk - ek)] *
                         tnp[std::size_t(et)] * tdp[std::size_t(dt - et)];
            return E;
        };

        bool dbg = std::getenv("PROJSIG_DEBUG") != nullptr;
        // Sample until the row space stops growing (with a floor so a lucky
        // plateau cannot stop the process prematurely), then solve the
        // back-substituted echelon basis, whose zero set equals that of the
        // collected evaluations.  If the result is positive-dimensional,
        // saturate to the cap and solve once more before reporting.
        EchelonBasis ech;
        int used = 0, idx = 0, plateau = 0;
        long cap = std::min<long>(full, 96);
        const int min_used = std::max<int>(8, int(fam.unknowns.size()) + 6);
        auto take = [&](long upto, bool stop_on_plateau) {
            for (; used < upto && idx < 4 * full + 16; ++idx) {
                auto tt0 = std::chrono::steady_clock::now();
                auto E = cleared_at(sample_point(idx));
                if (!E) continue;
                plateau = ech.insert(*E) ? 0 : plateau + 1;
                ++used;
                if (dbg) {
                    auto tt1 = std::chrono::steady_clock::now();
                    std::fprintf(stderr, "[dbg] eval idx=%d terms=%zu rank=%zu ms=%.1f\n", idx,
                                 E->term_count(), ech.rank(),
                                 std::chrono::duration<double, std::milli>(tt1 - tt0).count());
                }
                if (stop_on_plateau && used >= min_used && plateau >= 4) break;
            }
        };
        take(cap, true);
        std::vector<Poly> eqs = ech.emit();
        auto tt2 = std::chrono::steady_clock::now();
        RawCandidates rc = run_match_solve(eqs, fam.unknowns, opt.solver);
        if (dbg) {
            auto tt3 = std::chrono::steady_clock::now();
            std::fprintf(stderr, "[dbg] solve eqs=%zu ms=%.1f posdim=%d\n", eqs.size(),
                         std::chrono::duration<double, std::milli>(tt3 - tt2).count(),
                         int(rc.out.positive_dimensional));
        }
        if (rc.out.positive_dimensional && used < cap) {
            take(cap, false);
            eqs = ech.emit();
            rc = run_match_solve(eqs, fam.unknowns, opt.solver);
        }
        mr.notes.push_back("signature-curve identity reduced to " + std::to_string(used) +
                           " parameter evaluations (s-degree bound " + std::to_string(bound) +
                           "), rank " + std::to_string(ech.rank()));
        merge_solver_flags(mr, rc.out);
        for (const auto& cand : rc.list)
            if (verify_curve_candidate(fam, cand.params, target.equation, g, mr.notes))
                mr.solutions.push_back(cand);
        return mr;
    }

    // Three unknowns (central family): expanding the composed identity is far
    // beyond the degree cap, so candidates are generated from the
    // parameter-aligned matching system against a parametric target — the
    // member and the target are compared as functions of the same parameter.
    // This finds every witness whose member traces the target without
    // reparametrization (which covers group-transported instances, since group
    // actions never touch the curve parameter); completeness beyond that is
    // not certified. Every candidate is then certified alignment-free.
    mr.certified_complete = false;
    mr.notes.push_back("three-parameter family: candidates from the parameter-aligned matching "
                       "system; completeness beyond aligned equivalences is not certified");
    if (!aligned_target) {
        mr.notes.push_back("no parametric target available for the aligned reduction");
        return mr;
    }
    FamilyAlgebra algf = family_algebra(jn, fam.param, g);
    if (algf.exceptional) {
        mr.notes.push_back("every member of the family is exceptional for the group");
        return mr;
    }
    RatFun xt = aligned_target->x(), yt = aligned_target->y();
    if (aligned_target->param() != fam.param) {
        RatFun sv = RatFun::variable(fam.param);
        xt = xt.subst_ratfun(aligned_target->param(), sv);
        yt = yt.subst_ratfun(aligned_target->param(), sv);
    }
    Poly pt, qt, dt_;
    {
        FamilyCurve tmp;
        tmp.kind = fam.kind;
        tmp.param = fam.param;
        tmp.x = xt;
        tmp.y = yt;
        family_pqd(tmp, pt, qt, dt_);
    }
    JetNumerators jnt = jet_numerators(pt, qt, dt_, fam.param, kmax);
    if (jnt.a.is_zero()) {
        mr.notes.push_back("target has a constant first component; aligned reduction unavailable");
        return mr;
    }
    FamilyAlgebra algt = family_algebra(jnt, fam.param, g);
    if (algt.exceptional) {
        mr.notes.push_back("target is exceptional for the group; aligned reduction unavailable");
        return mr;
    }

    std::vector<Poly> eqs;
    // Equal logarithmic derivatives, cross-multiplied:
    add_coeff_equations(eqs,
                        log_derivative_numerator(algf.K, fam.param) * product_first_powers(algt.K) -
                            log_derivative_numerator(algt.K, fam.param) * product_first_powers(algf.K),
                        fam.param);
    add_coeff_equations(eqs,
                        log_derivative_numerator(algf.T, fam.param) * product_first_powers(algt.T) -
                            log_derivative_numerator(algt.T, fam.param) * product_first_powers(algf.T),
                        fam.param);
    // Equal values at anchor points (cross-multiplied; holds at poles too,
    // because the cleared identity is polynomial):
    for (int i = 0; i <= std::max(1, opt.anchor_count); ++i) {
        add_equation(eqs, cross_value_anchor(algf.K, algt.K, fam.param, sample_point(i)));
        add_equation(eqs, cross_value_anchor(algf.T, algt.T, fam.param, sample_point(i)));
    }
    RawCandidates rc = run_match_solve(eqs, fam.unknowns, opt.solver);
    merge_solver_flags(mr, rc.out);
    for (const auto& cand : rc.list)
        if (verify_curve_candidate(fam, cand.params, target.equation, g, mr.notes))
            mr.solutions.push_back(cand);
    return mr;
}

// ---------------------------------------------------------------------------
// Decision helpers.
// ---------------------------------------------------------------------------

const char* verdict_name(Verdict v) {
    switch (v) {
    case Verdict::Yes: return "Yes";
    case Verdict::No: return "No";
    default: return "ComplexOnly";
    }
}

namespace {

struct DecisionState {
    ProjectionDecision d;
    bool complex_evidence = false;
    bool complete = true;
};

void finish_verdict(DecisionState& st, const std::string& context) {
    if (!st.d.witnesses.empty()) {
        st.d.verdict = Verdict::Yes;
        return;
    }
    if (st.complex_evidence) {
        st.d.verdict = Verdict::ComplexOnly;
        st.d.trace.push_back("candidates exist beyond exact rational verification; "
                             "no real rational witness certified (" + context + ")");
        return;
    }
    if (st.complete) {
        st.d.verdict = Verdict::No;
        return;
    }
    throw DegreeCapExceeded("no witness found and the search was not certified complete (" +
                            context + ")");
}

// When the target is parametric, its invariants restricted in the family's
// parameter let candidates be certified by the signature uniqueness theorem:
// two non-exceptional curves whose invariant pairs agree identically as
// functions of a common parameter differ by a real group transformation.
struct TargetRestriction {
    bool available = false;
    RatFun K, T;
};

TargetRestriction restrict_target(const PlanarCurve& X, Sym param, Group g) {
    TargetRestriction tr;
    const auto* p = std::get_if<PlanarParametricCurve>(&X);
    if (!p) return tr;
    try {
        PlanarParametricCurve re = p->param() == param
                                       ? *p
                                       : PlanarParametricCurve(
                                             param,
                                             p->x().subst_ratfun(p->param(), RatFun::variable(param)),
                                             p->y().subst_ratfun(p->param(), RatFun::variable(param)));
        tr.K = restrict_invariant(first_invariant(g), re);
        tr.T = restrict_invariant(second_invariant(g), re);
        tr.available = true;
    } catch (const ExceptionalCurveError&) {
    } catch (const CurveError&) {
    }
    return tr;
}

// Certify one candidate: first try the identity matrix on top of the reduced
// projection (exact matrix certificate), then the identical-signature-map
// certificate against a parametric target, then full group equivalence of the
// member and the target (signature certificate).
void certify_candidate(DecisionState& st, const FamilyCurve& fam, const SystemSolution& cand,
                       const SpatialParametricCurve& Z, const PlanarCurve& X, Group g,
                       const SignatureOptions& sig_opt, const TargetRestriction& tr) {
    try {
        ProjectionMatrix P = assemble_projection(fam.kind, params_vector(fam, cand.params),
                                                 identity3());
        if (verify_projection(P, Z, X)) {
            st.d.trace.push_back("candidate " + fmt_assignment(cand.params) +
                                 ": projection matrix verified exactly");
            if (!st.d.matrix) st.d.matrix = P;
            st.d.witnesses.push_back({fam.kind, cand.params, cand.kind});
            return;
        }
    } catch (const ImageDegenerate&) {
        // fall through to the signature certificate
    }
    try {
        PlanarParametricCurve member = family_member(fam, cand.params);
        if (tr.available) {
            try {
                if (restrict_invariant(first_invariant(g), member) == tr.K &&
                    restrict_invariant(second_invariant(g), member) == tr.T &&
                    !(tr.K.is_constant() && tr.T.is_constant())) {
                    st.d.trace.push_back(
                        "candidate " + fmt_assignment(cand.params) +
                        ": member and target have identical invariant restrictions in the "
                        "shared parameter, so they differ by a real group transformation");
                    st.d.witnesses.push_back({fam.kind, cand.params, cand.kind});
                    return;
                }
            } catch (const ExceptionalCurveError&) {
                // fall through to the full equivalence certificate
            }
        }
        EquivalenceDecision eq = equivalent(PlanarCurve(member), X, g, sig_opt);
        switch (eq.verdict) {
        case Equivalence::Equivalent:
            st.d.trace.push_back("candidate " + fmt_assignment(cand.params) +
                                 ": member certified equivalent to the target");
            st.d.witnesses.push_back({fam.kind, cand.params, cand.kind});
            return;
        case Equivalence::EquivalentOverComplexOnly:
            st.complex_evidence = true;
            st.d.trace.push_back("candidate " + fmt_assignment(cand.params) +
                                 ": member equivalent to the target over the complexified "
                                 "group only");
            return;
        default:
            st.d.trace.push_back("candidate " + fmt_assignment(cand.params) +
                                 ": member not equivalent to the target");
            return;
        }
    } catch (const CurveError& e) {
        st.d.trace.push_back("DegenerateCandidate " + fmt_assignment(cand.params) + ": " +
                             e.what());
    } catch (const ExceptionalCurveError& e) {
        st.d.trace.push_back("DegenerateCandidate " + fmt_assignment(cand.params) + ": " +
                             e.what());
    }
}

void absorb_match(DecisionState& st, const FamilyCurve& fam, const MatchResult& mr,
                  const SpatialParametricCurve& Z, const PlanarCurve& X, Group g,
                  const DecisionOptions& opt, const TargetRestriction& tr) {
    for (const auto& n : mr.notes)
        st.d.trace.push_back(std::string(family_kind_name(fam.kind)) + ": " + n);
    st.complete = st.complete && mr.certified_complete;
    if (mr.nonrational_candidates) st.complex_evidence = true;
    std::size_t before = st.d.witnesses.size();
    for (const auto& cand : mr.solutions)
        certify_candidate(st, fam, cand, Z, X, g, opt.signature, tr);
    // A positive-dimensional candidate set that produced no certified witness
    // leaves the existence question open beyond the sampled points, so "No"
    // can no longer be certified from this family.
    if (mr.positive_dimensional && st.d.witnesses.size() == before)
        st.complex_evidence = true;
}

void sort_witnesses(ProjectionDecision& d) {
    std::sort(d.witnesses.begin(), d.witnesses.end(),
              [](const ProjectionWitness& a, const ProjectionWitness& b) {
                  if (a.kind != b.kind) return a.kind < b.kind;
                  if (a.params != b.params) return a.params < b.params;
                  return a.solution_kind < b.solution_kind;
              });
}

// ---------------------------------------------------------------------------
// Line targets: coplanarity plus an explicitly constructed, exactly verified
// projection matrix.
// ---------------------------------------------------------------------------

struct LineFormC {
    Rat a, b, c; // a x + b y + c = 0
};

std::optional<LineFormC> line_form(const Poly& F) {
    if (F.total_degree() != 1) return std::nullopt;
    LineFormC lf;
    Poly ax = F.coeff_of(Sym::x, 1);
    Poly by = F.coeff_of(Sym::y, 1);
    if (!ax.is_constant() || !by.is_constant()) return std::nullopt;
    lf.a = ax.constant_value();
    lf.b = by.constant_value();
    lf.c = F.subst(Sym::x, Rat(0)).subst(Sym::y, Rat(0)).constant_value();
    return lf;
}

std::optional<RatMat> complete_to_invertible(const RatVec& r) {
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j) {
            RatMat M{r, RatVec(3, Rat(0)), RatVec(3, Rat(0))};
            M[1][std::size_t(i)] = Rat(1);
            M[2][std::size_t(j)] = Rat(1);
            if (det(M) != 0) return M;
        }
    return std::nullopt;
}

// Invertible A with (X-form) * A == (member-form): A maps the member's line
// onto the target's line.
std::optional<RatMat> line_transport(const LineFormC& member, const LineFormC& target) {
    auto Mx = complete_to_invertible({target.a, target.b, target.c});
    auto Mm = complete_to_invertible({member.a, member.b, member.c});
    if (!Mx || !Mm) return std::nullopt;
    auto inv = inverse(*Mx);
    if (!inv) return std::nullopt;
    return mat_mul(*inv, *Mm);
}

void decide_line_target_central(DecisionState& st, const SpatialParametricCurve& Z,
                                const PlanarCurve& X) {
    if (!is_coplanar(Z)) {
        st.d.trace.push_back("source is not coplanar; a central image of a non-coplanar "
                             "curve is never contained in a line");
        st.d.verdict = Verdict::No;
        return;
    }
    st.d.verdict = Verdict::Yes;
    st.d.trace.push_back(
        "source is coplanar, so a central projection whose center lies on the source plane "
        "maps it onto a line; following the literal rule (note: the center lies ON the "
        "plane of the source)");
    auto plane = containing_plane(Z); // e1 z1 + e2 z2 + e3 z3 + e0 = 0
    auto lfX = line_form(implicit_of(X));
    if (!lfX) {
        st.d.trace.push_back("target line form unavailable; no matrix constructed");
        return;
    }
    int pivot = plane[0] != 0 ? 0 : plane[1] != 0 ? 1 : 2;
    const Rat grid[5] = {Rat(0), Rat(1), Rat(-1), Rat(2), Rat(-2)};
    for (const Rat& u : grid)
        for (const Rat& v : grid) {
            // center O on the plane of the source
            std::array<Rat, 3> O{};
            {
                int free_idx = 0;
                Rat acc = plane[3];
                for (int i = 0; i < 3; ++i) {
                    if (i == pivot) continue;
                    O[std::size_t(i)] = free_idx++ ? v : u;
                    acc += plane[std::size_t(i)] * O[std::size_t(i)];
                }
                O[std::size_t(pivot)] = -acc / plane[std::size_t(pivot)];
            }
            for (int j : {2, 0, 1}) { // homogenizing coordinate z_{j+1}
                if (Z.z(j + 1).is_constant()) continue;
                int i = j == 0 ? 1 : 0;
                int k = j == 2 ? 1 : 2;
                try {
                    RatFun den = Z.z(j + 1) - RatFun(O[std::size_t(j)]);
                    PlanarParametricCurve member(
                        Z.param(), (Z.z(i + 1) - RatFun(O[std::size_t(i)])) / den,
                        (Z.z(k + 1) - RatFun(O[std::size_t(k)])) / den);
                    auto lfm = line_form(member.implicit_equation());
                    if (!lfm) continue;
                    auto A = line_transport(*lfm, *lfX);
                    if (!A) continue;
                    // P_raw: rows select (z_i - O_i, z_k - O_k, z_j - O_j);
                    // equals a row permutation of [I | -O], so the reduced
                    // parameter of the composite is c = -O.
                    RatMat praw(3, RatVec(4, Rat(0)));
                    praw[0][std::size_t(i)] = Rat(1);
                    praw[0][3] = -O[std::size_t(i)];
                    praw[1][std::size_t(k)] = Rat(1);
                    praw[1][3] = -O[std::size_t(k)];
                    praw[2][std::size_t(j)] = Rat(1);
                    praw[2][3] = -O[std::size_t(j)];
                    RatMat pm = mat_mul(*A, praw);
                    ProjectionMatrix::Rows rows{};
                    for (int r = 0; r < 3; ++r)
                        for (int c = 0; c < 4; ++c)
                            rows[std::size_t(r)][std::size_t(c)] = pm[std::size_t(r)][std::size_t(c)];
                    ProjectionMatrix P{rows};
                    if (!verify_projection(P, Z, X)) continue;
                    st.d.matrix = P;
                    Assignment params{{Sym::c1, -O[0]}, {Sym::c2, -O[1]}, {Sym::c3, -O[2]}};
                    st.d.witnesses.push_back(
                        {FamilyKind::Central, params, SolutionKind::Isolated});
                    st.d.trace.push_back("verified central matrix with center (" +
                                         O[0].get_str() + ", " + O[1].get_str() + ", " +
                                         O[2].get_str() + ") on the source plane");
                    return;
                } catch (const CurveError&) {
                    continue;
                } catch (const ImageDegenerate&) {
                    continue;
                } catch (const std::invalid_argument&) {
                    continue;
                }
            }
        }
    st.d.trace.push_back("no verified matrix found on the sample grid; verdict stands by "
                         "the coplanarity rule");
}

void decide_line_target_parallel(DecisionState& st, const SpatialParametricCurve& Z,
                                 const PlanarCurve& X) {
    if (!is_coplanar(Z)) {
        st.d.trace.push_back("source is not coplanar; a parallel image of a non-coplanar "
                             "curve is never contained in a line");
        st.d.verdict = Verdict::No;
        return;
    }
    st.d.verdict = Verdict::Yes;
    st.d.trace.push_back("source is coplanar, so a parallel projection along a direction "
                         "inside the source plane maps it onto a line");
    auto plane = containing_plane(Z);
    auto lfX = line_form(implicit_of(X));
    if (!lfX) {
        st.d.trace.push_back("target line form unavailable; no matrix constructed");
        return;
    }
    // direction d inside the plane: some e x basis-vector is nonzero
    std::array<Rat, 3> e{plane[0], plane[1], plane[2]};
    std::array<Rat, 3> dvec{};
    for (int k = 0; k < 3 && dvec == std::array<Rat, 3>{}; ++k) {
        std::array<Rat, 3> unit{};
        unit[std::size_t(k)] = Rat(1);
        dvec = {e[1] * unit[2] - e[2] * unit[1], e[2] * unit[0] - e[0] * unit[2],
                e[0] * unit[1] - e[1] * unit[0]};
    }
    // rows e and f both annihilate the direction d, and are independent
    std::array<Rat, 3> f{dvec[1] * e[2] - dvec[2] * e[1], dvec[2] * e[0] - dvec[0] * e[2],
                         dvec[0] * e[1] - dvec[1] * e[0]};
    Rat v0 = -plane[3]; // e . z == -e0 along the source, so the member is x == v0
    // affine A mapping the vertical line x = v0 onto target.a x + target.b y + target.c = 0:
    // (target-form o A)(p) == p_x - v0
    Mat3 A = identity3();
    if (lfX->a != 0) {
        A[0][0] = Rat(1) / lfX->a;
        A[0][1] = -lfX->b / lfX->a;
        A[0][2] = -(v0 + lfX->c) / lfX->a;
        A[1][0] = Rat(0);
        A[1][1] = Rat(1);
        A[1][2] = Rat(0);
    } else {
        A[0][0] = Rat(0);
        A[0][1] = -Rat(1);
        A[0][2] = Rat(0);
        A[1][0] = Rat(1) / lfX->b;
        A[1][1] = Rat(0);
        A[1][2] = -(v0 + lfX->c) / lfX->b;
    }
    try {
        RatMat praw(3, RatVec(4, Rat(0)));
        for (int j = 0; j < 3; ++j) {
            praw[0][std::size_t(j)] = e[std::size_t(j)];
            praw[1][std::size_t(j)] = f[std::size_t(j)];
        }
        praw[2][3] = Rat(1);
        RatMat Am(3, RatVec(3));
        for (int r = 0; r < 3; ++r)
            for (int c = 0; c < 3; ++c) Am[std::size_t(r)][std::size_t(c)] = A[std::size_t(r)][std::size_t(c)];
        RatMat pm = mat_mul(Am, praw);
        ProjectionMatrix::Rows rows{};
        for (int r = 0; r < 3; ++r)
            for (int c = 0; c < 4; ++c) rows[std::size_t(r)][std::size_t(c)] = pm[std::size_t(r)][std::size_t(c)];
        ProjectionMatrix P{rows};
        if (verify_projection(P, Z, X)) {
            st.d.matrix = P;
            st.d.trace.push_back("verified parallel matrix projecting along a direction "
                                 "inside the source plane");
        } else {
            st.d.trace.push_back("constructed matrix failed verification; verdict stands by "
                                 "the coplanarity rule");
        }
    } catch (const std::exception& ex) {
        st.d.trace.push_back(std::string("matrix construction degenerate (") + ex.what() +
                             "); verdict stands by the coplanarity rule");
    }
}

// ---------------------------------------------------------------------------
// Exceptional non-line targets: conics (projective) and parabolas (affine)
// via the vanishing locus of the relevant discriminant over a family.
// ---------------------------------------------------------------------------

void conic_target_central(DecisionState& st, const SpatialParametricCurve& Z,
                          const PlanarCurve& X, const DecisionOptions& opt) {
    FamilyCurve fam = family(Z, FamilyKind::Central);
    JetNumerators jn = family_jets(fam, 5);
    if (jn.a.is_zero()) throw CurveError("family has a constant first component");
    StrippedBracket s9 = strip_core(bracket_w9(jet_slots(jn, 5)), jn.a, jn.d);
    std::vector<Poly> eqs;
    if (!s9.zero) add_coeff_equations(eqs, s9.core, fam.param);
    st.d.trace.push_back("conic target: solving the vanishing of the projective discriminant "
                         "over the central family (" + std::to_string(eqs.size()) +
                         " coefficient equations)");
    RawCandidates rc = run_match_solve(eqs, fam.unknowns, opt.match.solver);
    MatchResult mr;
    merge_solver_flags(mr, rc.out);
    mr.solutions = rc.list;
    absorb_match(st, fam, mr, Z, X, Group::Projective, opt, TargetRestriction{});
    finish_verdict(st, "conic target over the central family");
}

void parabola_target_parallel(DecisionState& st, const SpatialParametricCurve& Z,
                              const PlanarCurve& X, const DecisionOptions& opt) {
    for (FamilyKind kind : opt.parallel_order) {
        FamilyCurve fam = family(Z, kind);
        st.d.trace.push_back(std::string("family ") + family_kind_name(kind));
        if (kind == FamilyKind::ParallelPlain) {
            try {
                PlanarParametricCurve member = family_member(fam, {});
                Classification c = classify(member);
                if (c.cls == CurveClass::Parabola) {
                    SystemSolution cand{{}, SolutionKind::Isolated};
                    certify_candidate(st, fam, cand, Z, X, Group::Affine, opt.signature,
                                      TargetRestriction{});
                } else {
                    st.d.trace.push_back(std::string("plain member is a ") +
                                         std::string(curve_class_name(c.cls)) +
                                         ", not a parabola");
                }
            } catch (const CurveError& e) {
                st.d.trace.push_back(std::string("plain member degenerate: ") + e.what());
            }
        } else {
            JetNumerators jn = family_jets(fam, 4);
            if (jn.a.is_zero()) {
                st.d.trace.push_back("family has a constant first component; skipped");
                continue;
            }
            StrippedBracket s6 = strip_core(bracket_w6(jet_slots(jn, 4)), jn.a, jn.d);
            std::vector<Poly> eqs;
            if (!s6.zero) add_coeff_equations(eqs, s6.core, fam.param);
            RawCandidates rc = run_match_solve(eqs, fam.unknowns, opt.match.solver);
            MatchResult mr;
            merge_solver_flags(mr, rc.out);
            mr.solutions = rc.list;
            absorb_match(st, fam, mr, Z, X, Group::Affine, opt, TargetRestriction{});
        }
        if (!st.d.witnesses.empty()) {
            st.d.verdict = Verdict::Yes;
            return;
        }
    }
    finish_verdict(st, "parabola target over the parallel families");
}

// ---------------------------------------------------------------------------
// Generic targets.
// ---------------------------------------------------------------------------

int family_degree_bound(const FamilyCurve& fam) {
    Poly p, q, d;
    family_pqd(fam, p, q, d);
    return std::max({p.degree(fam.param), q.degree(fam.param), d.degree(fam.param), 0});
}

void generic_target_central(DecisionState& st, const SpatialParametricCurve& Z,
                            const PlanarCurve& X, const DecisionOptions& opt) {
    FamilyCurve fam = family(Z, FamilyKind::Central);
    const Poly& FX = implicit_of(X);
    int degX = FX.total_degree();
    int bound = family_degree_bound(fam);
    if (degX > bound) {
        st.d.trace.push_back("target implicit degree " + std::to_string(degX) +
                             " exceeds the degree bound " + std::to_string(bound) +
                             " of every family member; projective maps preserve degree");
        st.d.verdict = Verdict::No;
        return;
    }
    SignatureObject S = implicit_signature(signature_map_planar(X, Group::Projective),
                                           opt.signature);
    st.d.trace.push_back(std::string("target signature kind: ") +
                         (S.kind == SignatureKind::Point ? "point" : "curve"));
    MatchResult mr;
    if (S.kind == SignatureKind::Point) {
        mr = match_constant_signature(fam, S, opt.match);
    } else {
        std::optional<PlanarParametricCurve> aligned;
        if (const auto* p = std::get_if<PlanarParametricCurve>(&X)) aligned = *p;
        mr = match_curve_signature(fam, S, aligned, opt.match);
    }
    absorb_match(st, fam, mr, Z, X, Group::Projective, opt,
                 restrict_target(X, fam.param, Group::Projective));
    finish_verdict(st, "generic target over the central family");
}

void generic_target_parallel(DecisionState& st, const SpatialParametricCurve& Z,
                             const PlanarCurve& X, const DecisionOptions& opt) {
    std::optional<SignatureObject> S;
    TargetRestriction tr = restrict_target(X, Z.param(), Group::Affine);
    for (FamilyKind kind : opt.parallel_order) {
        FamilyCurve fam = family(Z, kind);
        st.d.trace.push_back(std::string("family ") + family_kind_name(kind));
        if (kind == FamilyKind::ParallelPlain) {
            try {
                PlanarParametricCurve member = family_member(fam, {});
                Classification c = classify(member);
                if (c.affine_exceptional) {
                    st.d.trace.push_back(std::string("plain member is a ") +
                                         std::string(curve_class_name(c.cls)) +
                                         ", exceptional for the affine group; target is not");
                } else {
                    SystemSolution cand{{}, SolutionKind::Isolated};
                    certify_candidate(st, fam, cand, Z, X, Group::Affine, opt.signature, tr);
                }
            } catch (const CurveError& e) {
                st.d.trace.push_back(std::string("plain member degenerate: ") + e.what());
            }
        } else {
            if (!S)
                S = implicit_signature(signature_map_planar(X, Group::Affine), opt.signature);
            MatchResult mr;
            if (S->kind == SignatureKind::Point) {
                mr = match_constant_signature(fam, *S, opt.match);
            } else {
                std::optional<PlanarParametricCurve> aligned;
                if (const auto* p = std::get_if<PlanarParametricCurve>(&X)) aligned = *p;
                mr = match_curve_signature(fam, *S, aligned, opt.match);
            }
            absorb_match(st, fam, mr, Z, X, Group::Affine, opt, tr);
        }
        if (!st.d.witnesses.empty()) {
            st.d.verdict = Verdict::Yes;
            return;
        }
    }
    finish_verdict(st, "generic target over the parallel families");
}

} // namespace

// ---------------------------------------------------------------------------
// Decision procedures.
// ---------------------------------------------------------------------------

ProjectionDecision decide_central(const SpatialParametricCurve& Z, const PlanarCurve& X,
                                  const DecisionOptions& opt) {
    if (is_line(Z))
        throw CurveError("source spatial curve is a straight line; excluded by the decision "
                         "procedures");
    DecisionState st;
    Classification cls = classify_planar(X);
    st.d.trace.push_back(std::string("target class: ") +
                         std::string(curve_class_name(cls.cls)));
    if (cls.cls == CurveClass::Line)
        decide_line_target_central(st, Z, X);
    else if (cls.projective_exceptional)
        conic_target_central(st, Z, X, opt);
    else
        generic_target_central(st, Z, X, opt);
    sort_witnesses(st.d);
    return st.d;
}

ProjectionDecision decide_parallel(const SpatialParametricCurve& Z, const PlanarCurve& X,
                                   const DecisionOptions& opt) {
    if (is_line(Z))
        throw CurveError("source spatial curve is a straight line; excluded by the decision "
                         "procedures");
    DecisionState st;
    Classification cls = classify_planar(X);
    st.d.trace.push_back(std::string("target class: ") +
                         std::string(curve_class_name(cls.cls)));
    if (cls.cls == CurveClass::Line)
        decide_line_target_parallel(st, Z, X);
    else if (cls.cls == CurveClass::Parabola)
        parabola_target_parallel(st, Z, X, opt);
    else
        generic_target_parallel(st, Z, X, opt);
    sort_witnesses(st.d);
    return st.d;
}

} // namespace projsig
