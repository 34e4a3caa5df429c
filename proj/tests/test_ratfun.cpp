#include "doctest.h"

#include "projsig/ratfun.hpp"

using namespace projsig;

namespace {
RatFun tf() { return RatFun::variable(Sym::t); }
} // namespace

TEST_CASE("construction reduces and normalizes") {
    Poly t = Poly::variable(Sym::t);
    // (t^2-1)/(t-1) -> t+1
    RatFun f(t * t - Poly(1L), t - Poly(1L));
    CHECK(f.num() == t + Poly(1L));
    CHECK(f.den() == Poly(1L));
    CHECK(f.is_polynomial());

    // Denominator sign canonicalization: x/(-t+1) has den t-1 styled positive.
    RatFun g(Poly(1L), -t + Poly(1L));
    CHECK(g.den() == t - Poly(1L));
    CHECK(g.num() == Poly(-1L));

    // Rational content moves to the numerator.
    RatFun h(Poly(1L), Rat(2) * t);
    CHECK(h.den() == t);
    CHECK(h.num() == Poly(rat(1, 2)));

    CHECK_THROWS_AS(RatFun(t, Poly()), std::domain_error);
}

TEST_CASE("field arithmetic") {
    RatFun t = tf();
    RatFun one(1L);
    RatFun f = one / (t + one);      // 1/(t+1)
    RatFun g = t / (t + one);        // t/(t+1)
    CHECK(f + g == one);             // (1+t)/(t+1) = 1
    CHECK(f * (t + one) == one);
    CHECK((f - f).is_zero());
    CHECK(f / f == one);
    CHECK_THROWS_AS(f / RatFun(), std::domain_error);

    // a/b + c/d == (ad+cb)/(bd) on a nontrivial case, checked by evaluation.
    RatFun expr = (t * t - one) / (t * t + one) + one / t;
    auto v = expr.eval({{Sym::t, Rat(2)}});
    REQUIRE(v.has_value());
    CHECK(*v == rat(3, 5) + rat(1, 2));
}

TEST_CASE("derivative quotient rule") {
    RatFun t = tf();
    RatFun f = RatFun(1L) / t; // 1/t -> -1/t^2
    RatFun df = f.derivative(Sym::t);
    CHECK(df == -(RatFun(1L) / (t * t)));

    // d/dt [t^2/(t+1)] = (t^2 + 2t)/(t+1)^2
    RatFun g = (t * t) / (t + RatFun(1L));
    RatFun dg = g.derivative(Sym::t);
    RatFun expect = (t * t + RatFun(2L) * t) / ((t + RatFun(1L)) * (t + RatFun(1L)));
    CHECK(dg == expect);

    // Leibniz on a product.
    RatFun h = f * g;
    CHECK(h.derivative(Sym::t) == df * g + f * dg);
}

TEST_CASE("substitution and poles") {
    RatFun t = tf();
    RatFun f = RatFun(1L) / (t - RatFun(1L));
    CHECK(f.subst(Sym::t, Rat(3)).constant_value() == rat(1, 2));
    CHECK_THROWS_AS(f.subst(Sym::t, Rat(1)), std::domain_error);
    CHECK(!f.eval({{Sym::t, Rat(1)}}).has_value());

    // Composition: f(t -> 1/t) = t/(1-t)
    RatFun comp = f.subst_ratfun(Sym::t, RatFun(1L) / t);
    RatFun expect = -t / (t - RatFun(1L));
    CHECK(comp == expect);

    // Composition identity checked by evaluation at several points.
    RatFun g = (t * t + RatFun(1L)) / (t - RatFun(2L));
    RatFun r = (t + RatFun(3L)) / (t - RatFun(1L));
    RatFun gr = g.subst_ratfun(Sym::t, r);
    for (long k : {0L, 6L, 7L}) { // avoid t=5 where r(t)=2 is a pole of g
        Rat tk(k);
        auto rv = r.eval({{Sym::t, tk}});
        REQUIRE(rv.has_value());
        auto direct = g.eval({{Sym::t, *rv}});
        auto composed = gr.eval({{Sym::t, tk}});
        REQUIRE(direct.has_value());
        REQUIRE(composed.has_value());
        CHECK(*direct == *composed);
    }
}

TEST_CASE("subst_fraction clears denominators correctly") {
    // p(x) = x^2 + 3, x -> u/w gives u^2 + 3w^2.
    Poly x = Poly::variable(Sym::x);
    Poly u = Poly::variable(Sym::t) + Poly(1L);
    Poly w = Poly::variable(Sym::t) - Poly(1L);
    Poly p = x * x + Poly(3L);
    Poly r = subst_fraction(p, Sym::x, u, w);
    CHECK(r == u * u + Poly(3L) * w * w);
}
