#include "doctest.h"

#include "projsig/signatures.hpp"

#include <array>

using namespace projsig;

namespace {

const Poly T = Poly::variable(Sym::t);
const Poly X = Poly::variable(Sym::x);
const Poly Y = Poly::variable(Sym::y);
const Poly ONE = Poly(1L);

RatFun rf(const Poly& p) { return RatFun(p); }

PlanarParametricCurve curve2(const RatFun& x, const RatFun& y) {
    return PlanarParametricCurve(Sym::t, x, y);
}

Rat rq(long n, long d) {
    Rat r(n, d);
    r.canonicalize();
    return r;
}

// (x, y) -> (a11 x + a12 y + b1, a21 x + a22 y + b2) applied to a curve.
PlanarParametricCurve apply_affine(const PlanarParametricCurve& c,
                                   const std::array<Rat, 6>& m) {
    RatFun x = RatFun(m[0]) * c.x() + RatFun(m[1]) * c.y() + RatFun(m[2]);
    RatFun y = RatFun(m[3]) * c.x() + RatFun(m[4]) * c.y() + RatFun(m[5]);
    return PlanarParametricCurve(c.param(), x, y);
}

// Fractional-linear map with rows (numerator x, numerator y, denominator).
PlanarParametricCurve apply_projective(const PlanarParametricCurve& c,
                                       const std::array<Rat, 9>& m) {
    RatFun den = RatFun(m[6]) * c.x() + RatFun(m[7]) * c.y() + RatFun(m[8]);
    RatFun x = (RatFun(m[0]) * c.x() + RatFun(m[1]) * c.y() + RatFun(m[2])) / den;
    RatFun y = (RatFun(m[3]) * c.x() + RatFun(m[4]) * c.y() + RatFun(m[5])) / den;
    return PlanarParametricCurve(c.param(), x, y);
}

// Checks S(K(t), T(t)) = 0 at many exact sample parameters; together with the
// degree bound this pins the substitution identity.
void check_on_image(const Poly& S, const SignatureMap& m) {
    int hits = 0;
    for (long i = 1; i <= 40 && hits < 12; ++i) {
        Rat t0(i, 1);
        std::map<Sym, Rat> pt = {{m.var, t0}};
        auto kv = m.k.eval(pt), tv = m.t.eval(pt);
        if (!kv || !tv) continue;
        ++hits;
        CHECK(S.eval({{Sym::kappa, *kv}, {Sym::tau, *tv}}) == 0);
    }
    CHECK(hits >= 12);
}

} // namespace

TEST_CASE("signature maps restrict the invariant pair") {
    auto c = curve2(rf(T), rf(T.pow(4) + T.pow(2)));
    auto m = signature_map(c, Group::Affine);
    CHECK(m.parametric);
    CHECK(m.group == Group::Affine);
    CHECK(m.k == restrict_invariant(Invariant::KAffine, c));
    CHECK(m.t == restrict_invariant(Invariant::TAffine, c));

    auto parab = curve2(rf(T), rf(T * T));
    CHECK_THROWS_AS(signature_map(parab, Group::Affine), ExceptionalCurveError);
    CHECK_THROWS_AS(signature_map(parab, Group::Projective), ExceptionalCurveError);
}

TEST_CASE("point-valued projective signatures") {
    Poly den = T + ONE;
    auto cusp = curve2(RatFun(T.pow(3), den), RatFun(T.pow(2), den));
    auto s = implicit_signature(signature_map(cusp, Group::Projective));
    CHECK(s.kind == SignatureKind::Point);
    CHECK(s.point_k == rq(250047, 12800));
    CHECK(s.point_t == 0);
    CHECK(s.str() == "Point(250047/12800, 0)");

    auto quintic = curve2(rf(T), rf(T.pow(5)));
    auto s5 = implicit_signature(signature_map(quintic, Group::Projective));
    CHECK(s5.kind == SignatureKind::Point);
    CHECK(s5.point_k == rq(1029, 128));
    CHECK(s5.point_t == 0);
}

TEST_CASE("synthetic elimination recovers the cusp relation") {
    SignatureMap m{Group::Affine, true, Sym::t, RatFun(T * T), RatFun(T.pow(3)), Poly()};
    auto s = implicit_signature(m);
    CHECK(s.kind == SignatureKind::Curve);
    Poly expect = Poly::variable(Sym::kappa).pow(3) - Poly::variable(Sym::tau).pow(2);
    CHECK(s.equation == expect);
}

TEST_CASE("one constant restriction yields the line closure") {
    SignatureMap m{Group::Affine, true, Sym::t, RatFun(rq(2, 3)), RatFun(T.pow(3)), Poly()};
    auto s = implicit_signature(m);
    CHECK(s.kind == SignatureKind::Curve);
    CHECK(s.equation == Rat(3) * Poly::variable(Sym::kappa) - Poly(2L));
}

TEST_CASE("curve-valued projective signature satisfies the substitution identity") {
    Poly den = T.pow(3) + ONE;
    auto c = curve2(RatFun(T, den), RatFun(T.pow(2), den));
    auto m = signature_map(c, Group::Projective);
    auto s = implicit_signature(m);
    CHECK(s.kind == SignatureKind::Curve);
    CHECK_FALSE(s.equation.is_constant());
    CHECK(s.equation == s.equation.normalized_sign());
    CHECK(squarefree_part(s.equation) == s.equation);
    check_on_image(s.equation, m);
}

TEST_CASE("affine signature of the quartic graph is a curve through its samples") {
    auto c = curve2(rf(T), rf(T.pow(4) + T.pow(2)));
    auto m = signature_map(c, Group::Affine);
    auto s = implicit_signature(m);
    CHECK(s.kind == SignatureKind::Curve);
    check_on_image(s.equation, m);
}

TEST_CASE("implicit circle has its affine signature at the origin") {
    PlanarImplicitCurve circ(X * X + Y * Y - ONE);
    auto s = implicit_signature(signature_map(circ, Group::Affine));
    CHECK(s.kind == SignatureKind::Point);
    CHECK(s.point_k == 0);
    CHECK(s.point_t == 0);
}

TEST_CASE("parametric and implicit routes produce one signature object") {
    auto par = curve2(rf(T), rf(T.pow(4) + T.pow(2)));
    PlanarImplicitCurve imp(Y - X.pow(4) - X * X);
    auto sp = implicit_signature(signature_map(par, Group::Affine));
    auto si = implicit_signature(signature_map(imp, Group::Affine));
    CHECK(sp.kind == SignatureKind::Curve);
    CHECK(si.kind == SignatureKind::Curve);
    CHECK(sp.equation == si.equation);
}

TEST_CASE("signature object comparison") {
    Poly cuspy = Poly::variable(Sym::kappa).pow(3) - Poly::variable(Sym::tau).pow(2);
    SignatureObject p1{Group::Affine, SignatureKind::Point, rq(1, 2), rq(-3, 1), Poly()};
    SignatureObject p2 = p1;
    SignatureObject p3{Group::Affine, SignatureKind::Point, rq(1, 2), rq(3, 1), Poly()};
    SignatureObject c1{Group::Affine, SignatureKind::Curve, Rat(0), Rat(0), cuspy};
    SignatureObject c2{Group::Affine, SignatureKind::Curve, Rat(0), Rat(0),
                       (Rat(2) * cuspy).normalized_sign()};

    CHECK(signatures_equal(p1, p2) == Equivalence::Equivalent);
    CHECK(signatures_equal(p1, p3) == Equivalence::NotEquivalent);
    CHECK(signatures_equal(c1, c2) == Equivalence::EquivalentOverComplexOnly);
    CHECK(signatures_equal(p1, c1) == Equivalence::NotEquivalent);

    SignatureObject other{Group::Projective, SignatureKind::Point, rq(1, 2), rq(-3, 1),
                          Poly()};
    CHECK_THROWS_AS(signatures_equal(p1, other), std::invalid_argument);
}

TEST_CASE("conic types from the quadratic classification") {
    CHECK(conic_type(X * X + Y * Y - ONE) == ConicType::RealEllipse);
    CHECK(conic_type(X * X + Rat(2) * Y * Y - ONE) == ConicType::RealEllipse);
    CHECK(conic_type(X * X + Y * Y + ONE) == ConicType::ImaginaryEllipse);
    CHECK(conic_type(X * X - Y * Y - ONE) == ConicType::Hyperbola);
    CHECK(conic_type(X * Y - ONE) == ConicType::Hyperbola);
    CHECK(conic_type(Y * Y - X) == ConicType::ParabolaArc);
    CHECK(conic_type(X * X - Y * Y) == ConicType::Degenerate);
    CHECK_THROWS_AS(conic_type(X.pow(3) - Y), std::invalid_argument);
}

TEST_CASE("equivalence routing for exceptional classes") {
    PlanarCurve line1 = curve2(rf(T), rf(Rat(2) * T + ONE));
    PlanarCurve line2 = PlanarImplicitCurve(X + Y - Poly(3L));
    PlanarCurve parab1 = curve2(rf(T), rf(T * T));
    PlanarCurve parab2 =
        curve2(rf(T), rf(T * T + Rat(3) * T + ONE));
    PlanarCurve circ = PlanarImplicitCurve(X * X + Y * Y - ONE);

    for (Group g : {Group::Affine, Group::Projective})
        CHECK(equivalent(line1, line2, g).verdict == Equivalence::Equivalent);

    CHECK(equivalent(line1, parab1, Group::Affine).verdict == Equivalence::NotEquivalent);
    CHECK(equivalent(line1, circ, Group::Projective).verdict == Equivalence::NotEquivalent);
    CHECK(equivalent(parab1, parab2, Group::Affine).verdict == Equivalence::Equivalent);
    CHECK(equivalent(parab1, circ, Group::Projective).verdict == Equivalence::Equivalent);
    // Affine: the parabola is exceptional, the circle is not.
    CHECK(equivalent(parab1, circ, Group::Affine).verdict == Equivalence::NotEquivalent);
}

TEST_CASE("affine equivalence separates real conic types") {
    PlanarCurve ellipse = PlanarImplicitCurve(X * X + Rat(2) * Y * Y - ONE);
    PlanarCurve circle = PlanarImplicitCurve(X * X + Y * Y - ONE);
    PlanarCurve hyper = PlanarImplicitCurve(X * X - Y * Y - ONE);
    PlanarCurve imag = PlanarImplicitCurve(X * X + Y * Y + ONE);
    Poly den = ONE + T * T;
    PlanarCurve circle_par = curve2(RatFun(Poly(2L) * (ONE - T * T), den),
                                    RatFun(Poly(4L) * T, den));
    PlanarCurve hyper_par = curve2(rf(T), RatFun(ONE, T));

    CHECK(equivalent(ellipse, hyper, Group::Affine).verdict == Equivalence::NotEquivalent);
    CHECK(equivalent(ellipse, circle, Group::Affine).verdict == Equivalence::Equivalent);
    CHECK(equivalent(imag, circle, Group::Affine).verdict == Equivalence::NotEquivalent);
    CHECK(equivalent(circle_par, ellipse, Group::Affine).verdict == Equivalence::Equivalent);
    CHECK(equivalent(hyper_par, hyper, Group::Affine).verdict == Equivalence::Equivalent);
    CHECK(equivalent(hyper_par, circle, Group::Affine).verdict == Equivalence::NotEquivalent);
    // Projectively all of these conics collapse into one class.
    CHECK(equivalent(ellipse, hyper, Group::Projective).verdict == Equivalence::Equivalent);
    CHECK(equivalent(imag, circle, Group::Projective).verdict == Equivalence::Equivalent);
}

TEST_CASE("curves moved by a group element stay equivalent") {
    auto quartic = curve2(rf(T), rf(T.pow(4) + T.pow(2)));

    SUBCASE("affine image") {
        auto moved = apply_affine(quartic, {rq(2, 1), rq(-1, 1), rq(1, 1), rq(1, 1),
                                            rq(3, 1), rq(-2, 1)});
        auto d = equivalent(PlanarCurve(quartic), PlanarCurve(moved), Group::Affine);
        CHECK(d.verdict == Equivalence::Equivalent);
    }
    SUBCASE("affine image of a reparametrized copy") {
        auto moved = apply_affine(quartic, {rq(1, 2), rq(1, 1), rq(0, 1), rq(-1, 1),
                                            rq(1, 1), rq(5, 1)});
        Poly tv = Poly::variable(Sym::t);
        RatFun mob(tv + ONE, tv - Poly(2L));
        PlanarParametricCurve repar(Sym::t, moved.x().subst_ratfun(Sym::t, mob),
                                    moved.y().subst_ratfun(Sym::t, mob));
        auto d = equivalent(PlanarCurve(quartic), PlanarCurve(repar), Group::Affine);
        CHECK(d.verdict == Equivalence::Equivalent);
    }
    SUBCASE("projective image") {
        Poly den = T.pow(3) + ONE;
        auto c3 = curve2(RatFun(T, den), RatFun(T.pow(2), den));
        auto moved = apply_projective(
            c3, {rq(1, 1), rq(-2, 1), rq(1, 1), rq(2, 1), rq(1, 1), rq(-1, 1), rq(1, 1),
                 rq(1, 1), rq(3, 1)});
        auto d = equivalent(PlanarCurve(c3), PlanarCurve(moved), Group::Projective);
        CHECK(d.verdict == Equivalence::Equivalent);
    }
}

TEST_CASE("signature objects are invariant under group elements") {
    auto quartic = curve2(rf(T), rf(T.pow(4) + T.pow(2)));
    auto base_aff = implicit_signature(signature_map(quartic, Group::Affine));
    const std::array<std::array<Rat, 6>, 2> affs = {
        std::array<Rat, 6>{rq(1, 1), rq(2, 1), rq(-1, 1), rq(0, 1), rq(1, 2), rq(3, 1)},
        std::array<Rat, 6>{rq(-2, 1), rq(1, 1), rq(0, 1), rq(1, 1), rq(1, 1), rq(-1, 2)}};
    for (const auto& m : affs) {
        auto s = implicit_signature(signature_map(apply_affine(quartic, m), Group::Affine));
        CHECK(s.kind == base_aff.kind);
        CHECK(s.equation == base_aff.equation);
    }

    Poly den = T + ONE;
    auto cusp = curve2(RatFun(T.pow(3), den), RatFun(T.pow(2), den));
    auto base_proj = implicit_signature(signature_map(cusp, Group::Projective));
    const std::array<std::array<Rat, 9>, 2> projs = {
        std::array<Rat, 9>{rq(1, 1), rq(1, 1), rq(-1, 1), rq(0, 1), rq(2, 1), rq(1, 1),
                           rq(1, 1), rq(-1, 1), rq(2, 1)},
        std::array<Rat, 9>{rq(2, 1), rq(0, 1), rq(1, 1), rq(1, 1), rq(1, 1), rq(0, 1),
                           rq(0, 1), rq(1, 1), rq(1, 1)}};
    for (const auto& m : projs) {
        auto s = implicit_signature(
            signature_map(apply_projective(cusp, m), Group::Projective));
        CHECK(s.kind == SignatureKind::Point);
        CHECK(s.point_k == base_proj.point_k);
        CHECK(s.point_t == base_proj.point_t);
    }
}

TEST_CASE("inequivalent generic pairs") {
    // Quartic and the two cubics: pairwise distinct projective classes.
    Poly den3 = T.pow(3) + ONE;
    PlanarCurve c2 = curve2(RatFun(T.pow(3), T + ONE), RatFun(T.pow(2), T + ONE));
    PlanarCurve c3 = curve2(RatFun(T, den3), RatFun(T.pow(2), den3));
    PlanarCurve c4 = curve2(rf(T), rf(T.pow(5)));
    PlanarCurve c1 = curve2(rf(T * T), rf(T));

    CHECK(equivalent(c1, c2, Group::Projective).verdict == Equivalence::NotEquivalent);
    CHECK(equivalent(c1, c3, Group::Projective).verdict == Equivalence::NotEquivalent);
    CHECK(equivalent(c2, c3, Group::Projective).verdict == Equivalence::NotEquivalent);
    CHECK(equivalent(c2, c4, Group::Projective).verdict == Equivalence::NotEquivalent);

    // Two spatial-projection images that are not affinely equivalent.
    PlanarCurve p1 = curve2(rf(T.pow(4) + T), rf(T * T));
    PlanarCurve p2 = curve2(rf(T.pow(3) - T), rf(T.pow(3) + T * T));
    CHECK(equivalent(p1, p2, Group::Affine).verdict == Equivalence::NotEquivalent);
}

TEST_CASE("equivalence decision is symmetric") {
    PlanarCurve quartic = curve2(rf(T), rf(T.pow(4) + T.pow(2)));
    PlanarCurve imp(PlanarImplicitCurve(Y - X.pow(4) - X * X));
    PlanarCurve cubic = curve2(rf(T.pow(3) - T), rf(T.pow(3) + T * T));
    PlanarCurve circ(PlanarImplicitCurve(X * X + Y * Y - ONE));

    auto pairs = {std::pair{&quartic, &imp}, std::pair{&quartic, &cubic},
                  std::pair{&quartic, &circ}};
    for (auto [a, b] : pairs) {
        CHECK(equivalent(*a, *b, Group::Affine).verdict ==
              equivalent(*b, *a, Group::Affine).verdict);
    }
}

TEST_CASE("cross-representation equivalence with a real witness") {
    PlanarCurve par = curve2(rf(T), rf(T.pow(4) + T.pow(2)));
    PlanarCurve imp(PlanarImplicitCurve(Y - X.pow(4) - X * X));
    auto d = equivalent(par, imp, Group::Affine);
    CHECK(d.verdict == Equivalence::Equivalent);
}
