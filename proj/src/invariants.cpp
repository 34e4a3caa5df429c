#include "projsig/invariants.hpp"

#include <array>

namespace projsig {

namespace {

Poly C(long v) { return Poly(v); }
Poly pw(const Poly& p, unsigned n) { return p.pow(n); }

} // namespace

std::string_view invariant_name(Invariant which) {
    switch (which) {
    case Invariant::Delta1: return "delta1";
    case Invariant::Delta2: return "delta2";
    case Invariant::KAffine: return "K_affine";
    case Invariant::TAffine: return "T_affine";
    case Invariant::KProjective: return "K_projective";
    case Invariant::TProjective: return "T_projective";
    }
    return "?";
}

std::string_view curve_class_name(CurveClass c) {
    switch (c) {
    case CurveClass::Line: return "line";
    case CurveClass::Parabola: return "parabola";
    case CurveClass::Conic: return "conic";
    case CurveClass::Generic: return "generic";
    }
    return "?";
}

// ---------------------------------------------------------------------------
// Bracket polynomials. Each is isobaric: every monomial y_{k1}...y_{kg} has
// the same weight k1+...+kg, so on restriction to a curve the structural
// denominators cancel out of the invariant ratios uniformly.
// ---------------------------------------------------------------------------

Poly bracket_w6(const std::vector<Poly>& s) {
    const Poly &y2 = s.at(2), &y3 = s.at(3), &y4 = s.at(4);
    return C(3) * y4 * y2 - C(5) * pw(y3, 2);
}

Poly bracket_w9(const std::vector<Poly>& s) {
    const Poly &y2 = s.at(2), &y3 = s.at(3), &y4 = s.at(4), &y5 = s.at(5);
    return C(9) * y5 * pw(y2, 2) - C(45) * y4 * y3 * y2 + C(40) * pw(y3, 3);
}

Poly bracket_w12(const std::vector<Poly>& s) {
    const Poly &y2 = s.at(2), &y3 = s.at(3), &y4 = s.at(4), &y5 = s.at(5), &y6 = s.at(6);
    return C(9) * y6 * pw(y2, 3) - C(63) * y5 * y3 * pw(y2, 2) -
           C(45) * pw(y4, 2) * pw(y2, 2) + C(255) * y4 * pw(y3, 2) * y2 -
           C(160) * pw(y3, 4);
}

Poly bracket_w24(const std::vector<Poly>& s) {
    const Poly &y2 = s.at(2), &y3 = s.at(3), &y4 = s.at(4), &y5 = s.at(5),
               &y6 = s.at(6), &y7 = s.at(7);
    Poly d2 = bracket_w9(s);
    return C(18) * y7 * pw(y2, 4) * d2 - C(189) * pw(y6, 2) * pw(y2, 6) +
           C(126) * y6 * pw(y2, 4) *
               (C(9) * y5 * y3 * y2 + C(15) * pw(y4, 2) * y2 - C(25) * y4 * pw(y3, 2)) -
           C(189) * pw(y5, 2) * pw(y2, 4) * (C(4) * pw(y3, 2) + C(15) * y2 * y4) +
           C(210) * y5 * y3 * pw(y2, 2) *
               (C(63) * pw(y4, 2) * pw(y2, 2) - C(60) * y4 * pw(y3, 2) * y2 +
                C(32) * pw(y3, 4)) -
           C(525) * y4 * y2 *
               (C(9) * pw(y4, 3) * pw(y2, 3) + C(15) * pw(y4, 2) * pw(y3, 2) * pw(y2, 2) -
                C(60) * y4 * pw(y3, 4) * y2 + C(64) * pw(y3, 6)) +
           C(11200) * pw(y3, 8);
}

Poly bracket_w28(const std::vector<Poly>& s) {
    const Poly &y2 = s.at(2), &y3 = s.at(3), &y4 = s.at(4), &y5 = s.at(5),
               &y6 = s.at(6), &y7 = s.at(7), &y8 = s.at(8);
    Poly d2 = bracket_w9(s);
    return C(2) * y8 * y2 * pw(d2, 2) -
           C(8) * y7 * d2 *
               (C(9) * y6 * pw(y2, 3) - C(36) * y5 * y3 * pw(y2, 2) -
                C(45) * pw(y4, 2) * pw(y2, 2) + C(120) * y4 * pw(y3, 2) * y2 -
                C(40) * pw(y3, 4)) +
           C(504) * pw(y6, 3) * pw(y2, 5) -
           C(504) * pw(y6, 2) * pw(y2, 3) *
               (C(9) * y5 * y3 * y2 + C(15) * pw(y4, 2) * y2 - C(25) * y4 * pw(y3, 2)) +
           C(28) * y6 *
               (C(432) * pw(y5, 2) * pw(y3, 2) * pw(y2, 3) +
                C(243) * pw(y5, 2) * y4 * pw(y2, 4) -
                C(1800) * y5 * y4 * pw(y3, 3) * pw(y2, 2) -
                C(240) * y5 * pw(y3, 5) * y2 + C(540) * y5 * pw(y4, 2) * y3 * pw(y2, 3) +
                C(6600) * pw(y4, 2) * pw(y3, 4) * y2 - C(2000) * y4 * pw(y3, 6) -
                C(5175) * pw(y4, 3) * pw(y3, 2) * pw(y2, 2) +
                C(1350) * pw(y4, 4) * pw(y2, 3)) -
           C(2835) * pw(y5, 4) * pw(y2, 4) +
           C(252) * pw(y5, 3) * y3 * pw(y2, 2) * (C(9) * y4 * y2 - C(136) * pw(y3, 2)) -
           C(35840) * pw(y5, 2) * pw(y3, 6) -
           C(630) * pw(y5, 2) * y4 * y2 *
               (C(69) * pw(y4, 2) * pw(y2, 2) - C(160) * pw(y3, 4) -
                C(153) * y4 * pw(y3, 2) * y2) +
           C(2100) * y5 * pw(y4, 2) * y3 *
               (C(72) * pw(y3, 4) + C(63) * pw(y4, 2) * pw(y2, 2) -
                C(193) * y4 * pw(y3, 2) * y2) -
           C(7875) * pw(y4, 4) *
               (C(8) * pw(y4, 2) * pw(y2, 2) - C(22) * y4 * pw(y3, 2) * y2 +
                C(9) * pw(y3, 4));
}

// ---------------------------------------------------------------------------
// Numerator recursions.
// ---------------------------------------------------------------------------

JetNumerators jet_numerators(const Poly& p, const Poly& q, const Poly& d, Sym t, int kmax) {
    if (kmax < 1) throw std::invalid_argument("jet_numerators: kmax must be >= 1");
    if (d.is_zero()) throw std::invalid_argument("jet_numerators: zero denominator");
    JetNumerators jn;
    Poly dp = d.derivative(t);
    jn.a = p.derivative(t) * d - p * dp;
    jn.d = d;
    Poly ap = jn.a.derivative(t);
    jn.n.assign(static_cast<std::size_t>(kmax) + 1, Poly(0L));
    jn.n[1] = q.derivative(t) * d - q * dp;
    for (int k = 1; k < kmax; ++k) {
        const Poly& nk = jn.n[static_cast<std::size_t>(k)];
        jn.n[static_cast<std::size_t>(k) + 1] =
            nk.derivative(t) * d * jn.a + Rat(k - 1) * (nk * dp * jn.a) -
            Rat(2 * k - 1) * (nk * d * ap);
    }
    return jn;
}

JetNumerators jet_numerators_implicit(const Poly& f, int kmax) {
    if (kmax < 1) throw std::invalid_argument("jet_numerators_implicit: kmax must be >= 1");
    Poly fx = f.derivative(Sym::x);
    Poly fy = f.derivative(Sym::y);
    Poly fyx = fy.derivative(Sym::x);
    Poly fyy = fy.derivative(Sym::y);
    JetNumerators jn;
    jn.a = fy;
    jn.d = Poly(1L);
    jn.n.assign(static_cast<std::size_t>(kmax) + 1, Poly(0L));
    jn.n[1] = Rat(-1) * fx;
    for (int k = 1; k < kmax; ++k) {
        const Poly& uk = jn.n[static_cast<std::size_t>(k)];
        jn.n[static_cast<std::size_t>(k) + 1] =
            fy * (uk.derivative(Sym::x) * fy - Rat(2 * k - 1) * (uk * fyx) -
                  uk.derivative(Sym::y) * fx) +
            Rat(2 * k - 1) * (uk * fyy * fx);
    }
    return jn;
}

// ---------------------------------------------------------------------------
// Restriction: strip structural factors, then combine with bookkeeping.
// ---------------------------------------------------------------------------

namespace {

std::vector<Poly> slots(const JetNumerators& jn, int kmax) {
    std::vector<Poly> s(static_cast<std::size_t>(kmax) + 1, Poly(0L));
    for (int k = 2; k <= kmax; ++k) s[static_cast<std::size_t>(k)] = jn.at(k);
    return s;
}

struct Stripped {
    Poly core;     // primitive, positive leading coefficient
    Rat scale = 0; // signed content
    int ea = 0, ed = 0;
    bool zero = true;
};

Stripped strip_bracket(Poly raw, const Poly& a, const Poly& d) {
    Stripped s;
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

Rat rat_pow(const Rat& q, int e) {
    if (e == 0) return Rat(1);
    Rat base = e > 0 ? q : Rat(1) / q;
    Rat acc(1);
    for (int i = 0; i < (e > 0 ? e : -e); ++i) acc *= base;
    return acc;
}

// Product of stripped cores and structural factors with signed exponents.
struct Assembly {
    Rat scale{1};
    Poly num = Poly(1L);
    Poly den = Poly(1L);

    void mul_stripped(const Stripped& s, int e) {
        scale *= rat_pow(s.scale, e);
        mul_poly(s.core, e);
    }
    void mul_structural(const Poly& f, int e) {
        if (e == 0) return;
        if (f.is_constant()) {
            scale *= rat_pow(f.constant_value(), e);
            return;
        }
        mul_poly(f, e);
    }
    RatFun finish() const { return RatFun(num * scale, den); }

private:
    void mul_poly(const Poly& f, int e) {
        if (e > 0)
            num = num * f.pow(static_cast<unsigned>(e));
        else if (e < 0)
            den = den * f.pow(static_cast<unsigned>(-e));
    }
};

using VanishTest = std::function<bool(const Poly&)>;

[[noreturn]] void throw_exceptional(Invariant which, CurveClass cls) {
    throw ExceptionalCurveError(
        cls, std::string(invariant_name(which)) + " is undefined on a " +
                 std::string(curve_class_name(cls)) +
                 ": its denominator discriminant vanishes along the curve");
}

} // namespace

Classification classify_numerators(const JetNumerators& jn, const VanishTest& vanishes) {
    Classification r;
    if (jn.a.is_zero() || vanishes(jn.at(2)))
        r.cls = CurveClass::Line;
    else if (vanishes(bracket_w6(slots(jn, 4))))
        r.cls = CurveClass::Parabola;
    else if (vanishes(bracket_w9(slots(jn, 5))))
        r.cls = CurveClass::Conic;
    else
        r.cls = CurveClass::Generic;
    r.affine_exceptional = r.cls == CurveClass::Line || r.cls == CurveClass::Parabola;
    r.projective_exceptional = r.cls != CurveClass::Generic;
    return r;
}

RatFun assemble_invariant(Invariant which, const JetNumerators& jn, const VanishTest& vanishes) {
    if (jn.a.is_zero())
        throw ExceptionalCurveError(CurveClass::Line,
                                    "vertical line: the curve has no graph chart");

    switch (which) {
    case Invariant::Delta1: {
        // delta1 restricted = w6 * d^4 / a^10
        Stripped s6 = strip_bracket(bracket_w6(slots(jn, 4)), jn.a, jn.d);
        if (s6.zero) return RatFun();
        Assembly as;
        as.mul_stripped(s6, 1);
        as.mul_structural(jn.a, s6.ea - 10);
        as.mul_structural(jn.d, s6.ed + 4);
        return as.finish();
    }
    case Invariant::Delta2: {
        // delta2 restricted = w9 * d^6 / a^15
        Stripped s9 = strip_bracket(bracket_w9(slots(jn, 5)), jn.a, jn.d);
        if (s9.zero) return RatFun();
        Assembly as;
        as.mul_stripped(s9, 1);
        as.mul_structural(jn.a, s9.ea - 15);
        as.mul_structural(jn.d, s9.ed + 6);
        return as.finish();
    }
    case Invariant::KAffine:
    case Invariant::TAffine: {
        Poly w6 = bracket_w6(slots(jn, 4));
        if (vanishes(w6))
            throw_exceptional(which, vanishes(jn.at(2)) ? CurveClass::Line
                                                        : CurveClass::Parabola);
        Stripped s6 = strip_bracket(w6, jn.a, jn.d);
        if (which == Invariant::KAffine) {
            // K_affine = w9^2 / w6^3 (structural powers cancel identically)
            Stripped s9 = strip_bracket(bracket_w9(slots(jn, 5)), jn.a, jn.d);
            if (s9.zero) return RatFun();
            Assembly as;
            as.mul_stripped(s9, 2);
            as.mul_stripped(s6, -3);
            as.mul_structural(jn.a, 2 * s9.ea - 3 * s6.ea);
            as.mul_structural(jn.d, 2 * s9.ed - 3 * s6.ed);
            return as.finish();
        }
        // T_affine = w12 / w6^2
        Stripped s12 = strip_bracket(bracket_w12(slots(jn, 6)), jn.a, jn.d);
        if (s12.zero) return RatFun();
        Assembly as;
        as.mul_stripped(s12, 1);
        as.mul_stripped(s6, -2);
        as.mul_structural(jn.a, s12.ea - 2 * s6.ea);
        as.mul_structural(jn.d, s12.ed - 2 * s6.ed);
        return as.finish();
    }
    case Invariant::KProjective:
    case Invariant::TProjective: {
        Poly w9 = bracket_w9(slots(jn, 5));
        if (vanishes(w9)) {
            CurveClass cls = CurveClass::Conic;
            if (vanishes(jn.at(2)))
                cls = CurveClass::Line;
            else if (vanishes(bracket_w6(slots(jn, 4))))
                cls = CurveClass::Parabola;
            throw_exceptional(which, cls);
        }
        Stripped s9 = strip_bracket(w9, jn.a, jn.d);
        if (which == Invariant::KProjective) {
            // K_projective = (729/8) w24^3 / w9^8
            Stripped s24 = strip_bracket(bracket_w24(slots(jn, 7)), jn.a, jn.d);
            if (s24.zero) return RatFun();
            Assembly as;
            as.scale = Rat(729, 8);
            as.mul_stripped(s24, 3);
            as.mul_stripped(s9, -8);
            as.mul_structural(jn.a, 3 * s24.ea - 8 * s9.ea);
            as.mul_structural(jn.d, 3 * s24.ed - 8 * s9.ed);
            return as.finish();
        }
        // T_projective = (243/2) n2^4 w28 / w9^4
        Stripped s28 = strip_bracket(bracket_w28(slots(jn, 8)), jn.a, jn.d);
        if (s28.zero) return RatFun();
        Stripped s2 = strip_bracket(jn.at(2), jn.a, jn.d);
        Assembly as;
        as.scale = Rat(243, 2);
        as.mul_stripped(s2, 4);
        as.mul_stripped(s28, 1);
        as.mul_stripped(s9, -4);
        as.mul_structural(jn.a, 4 * s2.ea + s28.ea - 4 * s9.ea);
        as.mul_structural(jn.d, 4 * s2.ed + s28.ed - 4 * s9.ed);
        return as.finish();
    }
    }
    throw std::logic_error("assemble_invariant: unknown invariant");
}

// ---------------------------------------------------------------------------
// Curve-level entry points.
// ---------------------------------------------------------------------------

namespace {

int order_needed(Invariant which) {
    switch (which) {
    case Invariant::Delta1: return 4;
    case Invariant::Delta2: return 5;
    case Invariant::KAffine: return 5;
    case Invariant::TAffine: return 6;
    case Invariant::KProjective: return 7;
    case Invariant::TProjective: return 8;
    }
    return 8;
}

JetNumerators numerators_of(const PlanarParametricCurve& c, int kmax) {
    // Put both components over one denominator (no reduction required).
    Poly p = c.x().num() * c.y().den();
    Poly q = c.y().num() * c.x().den();
    Poly d = c.x().den() * c.y().den();
    return jet_numerators(p, q, d, c.param(), kmax);
}

bool poly_is_zero(const Poly& p) { return p.is_zero(); }

} // namespace

Classification classify(const PlanarParametricCurve& c) {
    return classify_numerators(numerators_of(c, 5), poly_is_zero);
}

Classification classify(const PlanarImplicitCurve& c) {
    const Poly& f = c.f();
    if (f.total_degree() == 1 || f.degree(Sym::y) == 0) {
        // Degree one, or no y at all (vertical lines).
        return {CurveClass::Line, true, true};
    }
    JetNumerators jn = jet_numerators_implicit(f, 5);
    auto vanishes = [&f](const Poly& p) {
        return p.is_zero() || prem(p, f, Sym::y).is_zero();
    };
    return classify_numerators(jn, vanishes);
}

RatFun restrict_invariant(Invariant which, const PlanarParametricCurve& c) {
    int kmax = std::max(order_needed(which), 5);
    return assemble_invariant(which, numerators_of(c, kmax), poly_is_zero);
}

RatFun restrict_invariant(Invariant which, const PlanarImplicitCurve& c) {
    const Poly& f = c.f();
    if (f.degree(Sym::y) == 0)
        throw ExceptionalCurveError(CurveClass::Line,
                                    "vertical line: the curve has no graph chart");
    int kmax = std::max(order_needed(which), 5);
    JetNumerators jn = jet_numerators_implicit(f, kmax);
    auto vanishes = [&f](const Poly& p) {
        return p.is_zero() || prem(p, f, Sym::y).is_zero();
    };
    return assemble_invariant(which, jn, vanishes);
}

// ---------------------------------------------------------------------------
// Explicit jet-space expressions.
// ---------------------------------------------------------------------------

namespace {

std::array<JetExpression, 6> build_jet_expressions() {
    std::vector<Poly> yk(9, Poly(0L));
    for (int k = 2; k <= 8; ++k) yk[static_cast<std::size_t>(k)] = Poly::variable(jet_sym(k));
    Poly w6 = bracket_w6(yk), w9 = bracket_w9(yk), w12 = bracket_w12(yk),
         w24 = bracket_w24(yk), w28 = bracket_w28(yk);

    // The powered fractions below are huge, so a direct gcd of numerator and
    // denominator is far too expensive. Instead: each denominator base is
    // linear in its top jet variable with coprime coefficients, hence
    // irreducible, so the fraction is reduced iff the base does not divide
    // the numerator base -- a cheap exact-division check.
    auto irreducible_linear = [](const Poly& w, Sym top) {
        return w.degree(top) == 1 && content_in(w, top).is_constant();
    };
    auto reduced_ratio = [&](Poly n, const Poly& nb, Poly d, const Poly& db, Sym top) {
        if (irreducible_linear(db, top) && !divide_exact(nb, db).has_value())
            return RatFun::from_coprime(std::move(n), std::move(d));
        return RatFun(n, d); // fallback: full reduction
    };

    Poly y2 = yk[2];
    RatFun ka = reduced_ratio(w9.pow(2), w9, w6.pow(3), w6, Sym::y4);
    RatFun ta = reduced_ratio(w12, w12, w6.pow(2), w6, Sym::y4);
    RatFun kp = reduced_ratio(w24.pow(3) * Rat(729, 8), w24, w9.pow(8), w9, Sym::y5);
    Poly tp_num = y2.pow(4) * w28 * Rat(243, 2);
    RatFun tp = irreducible_linear(w9, Sym::y5) && !divide_exact(w28, w9).has_value() &&
                        !divide_exact(y2, w9).has_value()
                    ? RatFun::from_coprime(std::move(tp_num), w9.pow(4))
                    : RatFun(tp_num, w9.pow(4));

    return {JetExpression{Invariant::Delta1, 4, RatFun(w6)},
            JetExpression{Invariant::Delta2, 5, RatFun(w9)},
            JetExpression{Invariant::KAffine, 5, ka},
            JetExpression{Invariant::TAffine, 6, ta},
            JetExpression{Invariant::KProjective, 7, kp},
            JetExpression{Invariant::TProjective, 8, tp}};
}

} // namespace

const JetExpression& jet_expression(Invariant which) {
    static const std::array<JetExpression, 6> table = build_jet_expressions();
    return table.at(static_cast<std::size_t>(which));
}

} // namespace projsig
