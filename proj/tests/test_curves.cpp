#include "doctest.h"

#include "projsig/curves.hpp"

using namespace projsig;

namespace {

Poly var(Sym v) { return Poly::variable(v); }
RatFun rf(const Poly& p) { return RatFun(p); }

const Poly T = var(Sym::t);
const Poly X = var(Sym::x);
const Poly Y = var(Sym::y);

PlanarParametricCurve curve2(const RatFun& x, const RatFun& y) {
    return PlanarParametricCurve(Sym::t, x, y);
}

} // namespace

TEST_CASE("curve constructors validate their input") {
    CHECK_THROWS_AS(curve2(RatFun(1L), RatFun(2L)), CurveError);
    CHECK_THROWS_AS(curve2(rf(var(Sym::s)), rf(T)), CurveError); // wrong parameter
    CHECK_THROWS_AS(PlanarImplicitCurve(Poly(3L)), CurveError);
    CHECK_THROWS_AS(PlanarImplicitCurve(X + T), CurveError);
    CHECK_THROWS_AS(
        SpatialParametricCurve(Sym::s, RatFun(0L), RatFun(1L), RatFun(2L)), CurveError);

    // Non-squarefree input is canonicalized to the same zero set.
    Poly circle = X * X + Y * Y - Poly(1L);
    PlanarImplicitCurve doubled(circle * circle);
    CHECK(doubled.f() == circle);
}

TEST_CASE("parametric jets match hand-computed derivatives") {
    // gamma(t) = (t, t^3): y' = 3t^2, y'' = 6t, y''' = 6, y'''' = 0.
    auto c = curve2(rf(T), rf(T * T * T));
    auto j = jets_parametric(c, 4);
    CHECK(j.y(1) == rf(Poly(3L) * T * T));
    CHECK(j.y(2) == rf(Poly(6L) * T));
    CHECK(j.y(3) == RatFun(6L));
    CHECK(j.y(4).is_zero());

    // gamma(t) = (t^2, t^3): y' = 3t/2, y'' = 3/(4t), y''' = -3/(8t^3).
    auto cusp = curve2(rf(T * T), rf(T * T * T));
    auto jc = jets_parametric(cusp, 3);
    CHECK(jc.y(1) == RatFun(Poly(3L) * T, Poly(2L)));
    CHECK(jc.y(2) == RatFun(Poly(3L), Poly(4L) * T));
    CHECK(jc.y(3) == RatFun(Poly(-3L), Poly(8L) * T * T * T));

    CHECK_THROWS_AS(jets_parametric(curve2(RatFun(1L), rf(T)), 2), CurveError);
}

TEST_CASE("implicit jets match hand-computed derivatives") {
    // Parabola y = x^2.
    PlanarImplicitCurve par(X * X - Y);
    auto j = jets_implicit(par, 3);
    CHECK(j.y(1) == rf(Poly(2L) * X));
    CHECK(j.y(2) == RatFun(2L));
    CHECK(j.y(3).is_zero());

    // Circle x^2 + y^2 = 1: y' = -x/y, y'' = -(x^2 + y^2)/y^3.
    PlanarImplicitCurve circ(X * X + Y * Y - Poly(1L));
    auto jy = jets_implicit(circ, 2);
    CHECK(jy.y(1) == RatFun(Poly(0L) - X, Y));
    CHECK(jy.y(2) == RatFun(Poly(0L) - (X * X + Y * Y), Y * Y * Y));

    CHECK_THROWS_AS(jets_implicit(PlanarImplicitCurve(X - Poly(5L)), 1), CurveError);
}

TEST_CASE("parametric and implicit jets agree point-by-point on the circle") {
    // Rational parametrization of the unit circle.
    Poly den = T * T + Poly(1L);
    auto c = curve2(RatFun(Poly(1L) - T * T, den), RatFun(Poly(2L) * T, den));
    PlanarImplicitCurve circ(X * X + Y * Y - Poly(1L));

    auto jp = jets_parametric(c, 4);
    auto ji = jets_implicit(circ, 4);

    for (long num : {1L, 2L, 3L}) {
        Rat tv = rat(num, 2); // t = 1/2, 1, 3/2
        Rat xv = *c.x().eval({{Sym::t, tv}});
        Rat yv = *c.y().eval({{Sym::t, tv}});
        for (int k = 1; k <= 4; ++k) {
            auto lhs = jp.y(k).eval({{Sym::t, tv}});
            auto rhs = ji.y(k).eval({{Sym::x, xv}, {Sym::y, yv}});
            REQUIRE(lhs.has_value());
            REQUIRE(rhs.has_value());
            CHECK(*lhs == *rhs);
        }
    }
}

TEST_CASE("line detection for planar curves") {
    CHECK(is_line(curve2(rf(T), rf(Poly(2L) * T + Poly(1L)))));
    CHECK(is_line(curve2(rf(T * T), rf(T * T)))); // reparametrized diagonal
    CHECK(is_line(curve2(RatFun(1L), rf(T))));    // vertical
    CHECK_FALSE(is_line(curve2(rf(T), rf(T * T))));

    CHECK(is_line(PlanarImplicitCurve(X + Y - Poly(1L))));
    CHECK_FALSE(is_line(PlanarImplicitCurve(X * X - Y)));
}

TEST_CASE("spatial line, coplanarity, and containing plane") {
    Poly S = var(Sym::s);
    auto mk = [&](const RatFun& a, const RatFun& b, const RatFun& c) {
        return SpatialParametricCurve(Sym::s, a, b, c);
    };

    auto line = mk(rf(S), rf(Poly(2L) * S - Poly(1L)), rf(Poly(3L) * S + Poly(4L)));
    CHECK(is_line(line));
    CHECK(is_coplanar(line));
    CHECK_THROWS_AS(containing_plane(line), CurveError);

    auto twisted = mk(rf(S), rf(S * S), rf(S * S * S));
    CHECK_FALSE(is_line(twisted));
    CHECK_FALSE(is_coplanar(twisted));
    CHECK_THROWS_AS(containing_plane(twisted), CurveError);

    // z3 = 1 + 2 z1 + 3 z2, i.e. 2 z1 + 3 z2 - z3 + 1 = 0.
    auto planar = mk(rf(S), rf(S * S), rf(Poly(3L) * S * S + Poly(2L) * S + Poly(1L)));
    CHECK_FALSE(is_line(planar));
    CHECK(is_coplanar(planar));
    auto pl = containing_plane(planar);
    CHECK(pl == std::array<Rat, 4>{Rat(2), Rat(3), Rat(-1), Rat(1)});

    auto wall = mk(RatFun(5L), rf(S), rf(S * S));
    auto pw = containing_plane(wall);
    CHECK(pw == std::array<Rat, 4>{Rat(1), Rat(0), Rat(0), Rat(-5)});
}

TEST_CASE("implicitize recovers known equations") {
    CHECK(implicitize(curve2(rf(T * T), rf(T * T * T))) == X * X * X - Y * Y);

    Poly den = T * T + Poly(1L);
    auto circle = curve2(RatFun(Poly(1L) - T * T, den), RatFun(Poly(2L) * T, den));
    CHECK(implicitize(circle) == X * X + Y * Y - Poly(1L));

    // Axis-parallel and slanted lines.
    CHECK(implicitize(curve2(RatFun(1L), rf(T))) == X - Poly(1L));
    CHECK(implicitize(curve2(rf(T), RatFun(3L))) == Y - Poly(3L));
    auto slanted = implicitize(curve2(rf(T), rf(Poly(2L) * T + Poly(1L))));
    CHECK(slanted == (Poly(2L) * X - Y + Poly(1L)).normalized_sign());

    // Improper (2:1) parametrization of a parabola.
    CHECK(implicitize(curve2(rf(T * T), rf(T * T * T * T))) == X * X - Y);

    // Denominators: x = t/(1+t^2), y = t^2/(1+t^2) lies on x^2 + y^2 = y.
    auto folium = curve2(RatFun(T, den), RatFun(T * T, den));
    CHECK(implicitize(folium) == X * X + Y * Y - Y);
}

TEST_CASE("implicitization is verified and memoized") {
    auto c = curve2(RatFun(T * T * T, T + Poly(1L)), rf(T * T));
    const Poly& f = c.implicit_equation();
    CHECK_FALSE(f.is_constant());
    CHECK(f.depends_on(Sym::x));
    CHECK(f.depends_on(Sym::y));

    // Vanishes along the curve at sample parameter values.
    for (long k : {1L, 2L, 5L}) {
        Rat tv(k);
        Rat xv = *c.x().eval({{Sym::t, tv}});
        Rat yv = *c.y().eval({{Sym::t, tv}});
        CHECK(f.eval({{Sym::x, xv}, {Sym::y, yv}}) == 0);
    }

    // Copies share the memoized equation.
    PlanarParametricCurve d = c;
    CHECK(&d.implicit_equation() == &c.implicit_equation());
}
