#include "doctest.h"

#include "projsig/chain.hpp"
#include "projsig/invariants.hpp"

#include <cmath>
#include <vector>

using namespace projsig;

namespace {

const Poly T = Poly::variable(Sym::t);
const Poly ONE = Poly(1L);

PlanarParametricCurve curve2(const RatFun& x, const RatFun& y) {
    return PlanarParametricCurve(Sym::t, x, y);
}

Rat rq(long n, long d) {
    Rat r(n, d);
    r.canonicalize();
    return r;
}

double rel_err(double got, double want) {
    if (want == 0.0) return std::fabs(got);
    return std::fabs(got - want) / std::fabs(want);
}

const std::vector<Rat> SAMPLE_TS = {
    rq(1, 5), rq(1, 3), rq(2, 5), rq(1, 2), rq(3, 5), rq(2, 3),
    rq(3, 4), rq(1, 1), rq(5, 4), rq(4, 3), rq(3, 2), rq(2, 1),
};

// Compares the numeric chain against the exact closed-form restrictions at
// every sample point where both are defined; requires at least `min_points`
// usable points and 1e-6 relative agreement at each.
void cross_validate(const PlanarParametricCurve& c, int min_points) {
    RatFun ka = restrict_invariant(Invariant::KAffine, c);
    RatFun ta = restrict_invariant(Invariant::TAffine, c);
    RatFun kp = restrict_invariant(Invariant::KProjective, c);
    RatFun tp = restrict_invariant(Invariant::TProjective, c);

    int used = 0;
    for (const Rat& t0 : SAMPLE_TS) {
        ChainValues cv;
        try {
            cv = chain_invariants(c, t0);
        } catch (const std::domain_error&) {
            continue; // chain-irregular point; try the next one
        }
        std::map<Sym, Rat> pt = {{Sym::t, t0}};
        auto eka = ka.eval(pt), eta = ta.eval(pt);
        auto ekp = kp.eval(pt), etp = tp.eval(pt);
        if (!eka || !eta || !ekp || !etp) continue;
        ++used;
        CHECK(rel_err(cv.k_affine, eka->get_d()) <= 1e-6);
        CHECK(rel_err(cv.t_affine, eta->get_d()) <= 1e-6);
        CHECK(rel_err(cv.k_projective, ekp->get_d()) <= 1e-6);
        CHECK(rel_err(cv.t_projective, etp->get_d()) <= 1e-6);
    }
    CHECK(used >= min_points);
}

} // namespace

TEST_CASE("chain on a circle: curvature exact, affine pair vanishes") {
    // Counterclockwise circle of radius 2: (2(1-t^2), 4t) / (1+t^2).
    Poly den = ONE + T * T;
    auto circ = curve2(RatFun(Poly(2L) * (ONE - T * T), den),
                       RatFun(Poly(4L) * T, den));

    for (const Rat& t0 : {rq(0, 1), rq(1, 3), rq(1, 1), rq(-2, 5)}) {
        auto cv = chain_invariants(circ, t0, ChainDepth::Affine);
        CHECK(rel_err(cv.kappa, 0.5) <= 1e-15);
        // Constant equi-affine curvature kappa^(4/3) = 2^(-4/3).
        CHECK(rel_err(cv.mu, std::pow(2.0, -4.0 / 3.0)) <= 1e-15);
        CHECK(std::fabs(cv.k_affine) <= 1e-12);
        CHECK(std::fabs(cv.t_affine) <= 1e-12);
    }
    // The projective pair divides by the derivative of the equi-affine
    // curvature, which is identically zero on conics.
    CHECK_THROWS_AS(chain_invariants(circ, rq(1, 3), ChainDepth::Projective),
                    std::domain_error);
}

TEST_CASE("chain on an ellipse: affine pair vanishes") {
    // (3(1-t^2), 2t) / (1+t^2) traces an ellipse with semi-axes 3 and 1.
    Poly den = ONE + T * T;
    auto ell = curve2(RatFun(Poly(3L) * (ONE - T * T), den),
                      RatFun(Poly(2L) * T, den));
    for (const Rat& t0 : {rq(1, 4), rq(1, 2), rq(1, 1), rq(7, 5)}) {
        auto cv = chain_invariants(ell, t0, ChainDepth::Affine);
        CHECK(std::fabs(cv.k_affine) <= 1e-12);
        CHECK(std::fabs(cv.t_affine) <= 1e-12);
    }
}

TEST_CASE("chain on a parabola: zero equi-affine curvature blocks deeper stages") {
    auto par = curve2(RatFun(T), RatFun(T * T));
    auto cv = chain_invariants(par, rq(1, 3), ChainDepth::Curvature);
    // kappa = 2 / (1 + 4 t^2)^(3/2) at t = 1/3.
    double expected = 2.0 / std::pow(1.0 + 4.0 / 9.0, 1.5);
    CHECK(rel_err(cv.kappa, expected) <= 1e-15);
    CHECK(std::fabs(cv.mu) <= 1e-12);
    CHECK_THROWS_AS(chain_invariants(par, rq(1, 3), ChainDepth::Affine),
                    std::domain_error);
}

TEST_CASE("chain matches exact constants on the cubic graph") {
    // (t, t^3) has constant affine pair (-64/5, -32/5).
    auto c = curve2(RatFun(T), RatFun(T.pow(3)));
    for (const Rat& t0 : {rq(1, 2), rq(1, 1), rq(3, 2), rq(-2, 3), rq(5, 7)}) {
        auto cv = chain_invariants(c, t0, ChainDepth::Affine);
        CHECK(rel_err(cv.k_affine, -12.8) <= 1e-9);
        CHECK(rel_err(cv.t_affine, -6.4) <= 1e-9);
    }
}

TEST_CASE("chain matches exact constants of projectively flat curves") {
    // (t^3, t^2) / (t+1) has constant projective pair (250047/12800, 0).
    Poly den = T + ONE;
    auto c = curve2(RatFun(T.pow(3), den), RatFun(T.pow(2), den));
    for (const Rat& t0 : {rq(1, 2), rq(1, 1), rq(2, 1), rq(1, 4)}) {
        auto cv = chain_invariants(c, t0);
        CHECK(rel_err(cv.k_projective, 250047.0 / 12800.0) <= 1e-9);
        CHECK(std::fabs(cv.t_projective) <= 1e-9);
    }

    // (t, t^5) has constant projective pair (1029/128, 0).
    auto q = curve2(RatFun(T), RatFun(T.pow(5)));
    for (const Rat& t0 : {rq(1, 2), rq(1, 1), rq(-3, 2)}) {
        auto cv = chain_invariants(q, t0);
        CHECK(rel_err(cv.k_projective, 1029.0 / 128.0) <= 1e-9);
        CHECK(std::fabs(cv.t_projective) <= 1e-9);
    }
}

TEST_CASE("chain agrees with exact restrictions on generic curves") {
    SUBCASE("quartic graph") {
        cross_validate(curve2(RatFun(T), RatFun(T.pow(4) + T.pow(2))), 5);
    }
    SUBCASE("rational cubic") {
        Poly den = T + ONE;
        cross_validate(curve2(RatFun(T.pow(3), den), RatFun(T.pow(2), den)), 5);
    }
    SUBCASE("rational curve with cubic denominator") {
        Poly den = T.pow(3) + ONE;
        cross_validate(curve2(RatFun(T, den), RatFun(T.pow(2), den)), 5);
    }
    SUBCASE("cubic graph") {
        cross_validate(curve2(RatFun(T), RatFun(T.pow(3))), 5);
    }
    SUBCASE("quintic graph") {
        cross_validate(curve2(RatFun(T), RatFun(T.pow(5))), 5);
    }
}

TEST_CASE("chain precision control") {
    Poly den = T + ONE;
    auto c = curve2(RatFun(T.pow(3), den), RatFun(T.pow(2), den));
    auto cv = chain_invariants(c, rq(1, 2), ChainDepth::Projective, 128);
    CHECK(rel_err(cv.k_projective, 250047.0 / 12800.0) <= 1e-9);
    CHECK_THROWS_AS(chain_invariants(c, rq(1, 2), ChainDepth::Projective, 32),
                    std::invalid_argument);
    CHECK_THROWS_AS(chain_invariants(c, rq(1, 2), ChainDepth::Projective, 1 << 20),
                    std::invalid_argument);
}

TEST_CASE("chain rejects evaluation at a pole") {
    Poly den = T + ONE;
    auto c = curve2(RatFun(T.pow(3), den), RatFun(T.pow(2), den));
    CHECK_THROWS_AS(chain_invariants(c, rq(-1, 1)), std::domain_error);
}
