#include "doctest.h"

#include "projsig/polyops.hpp"

#include <random>

using namespace projsig;

namespace {

Poly X() { return Poly::variable(Sym::x); }
Poly Y() { return Poly::variable(Sym::y); }

Poly random_poly(std::mt19937& rng, int nvars, int max_deg, int nterms,
                 bool nonzero = false) {
    std::uniform_int_distribution<int> coef(-5, 5);
    std::uniform_int_distribution<int> expo(0, max_deg);
    static const Sym pool[] = {Sym::x, Sym::y, Sym::t};
    Poly p;
    do {
        p = Poly();
        for (int i = 0; i < nterms; ++i) {
            Mono m;
            for (int v = 0; v < nvars; ++v) m.e[idx(pool[v])] = uint16_t(expo(rng));
            p += Poly::term(Rat(coef(rng)), m);
        }
    } while (nonzero && p.is_zero());
    return p;
}

// Univariate in x with given exact rational roots (times a leading factor).
Poly with_roots(const std::vector<Rat>& roots, const Poly& extra) {
    Poly p = extra;
    for (const Rat& r : roots) {
        Poly factor = Poly(Rat(r.get_den())) * X() - Poly(Rat(r.get_num()));
        p *= factor;
    }
    return p;
}

} // namespace

TEST_CASE("exact division") {
    std::mt19937 rng(2024);
    for (int iter = 0; iter < 20; ++iter) {
        Poly f = random_poly(rng, 3, 3, 4, true);
        Poly g = random_poly(rng, 3, 3, 4, true);
        auto q = divide_exact(f * g, g);
        REQUIRE(q.has_value());
        CHECK(*q == f);
    }
    // Non-divisible case.
    CHECK(!divide_exact(X() + Poly(1L), X() + Poly(2L)).has_value());
    CHECK(!divide_exact(X(), Y()).has_value());
    CHECK(!divide_exact(X(), Poly()).has_value());
    CHECK(divide_exact(Poly(), X()).value().is_zero());
}

TEST_CASE("strip_factor") {
    Poly f = (X() + Y()).pow(3) * (X() - Poly(1L));
    auto [core, mult] = strip_factor(f, X() + Y());
    CHECK(mult == 3);
    CHECK(core == X() - Poly(1L));
    // Constant factors are never stripped.
    auto [core2, mult2] = strip_factor(f, Poly(2L));
    CHECK(mult2 == 0);
    CHECK(core2 == f);
}

TEST_CASE("pseudo-division identity") {
    std::mt19937 rng(555);
    for (int iter = 0; iter < 20; ++iter) {
        Poly f = random_poly(rng, 2, 4, 5, true);
        Poly g = random_poly(rng, 2, 3, 4, true);
        if (g.degree(Sym::x) < 1) continue;
        int m = f.degree(Sym::x), n = g.degree(Sym::x);
        auto [q, r] = pseudo_divide(f, g, Sym::x);
        CHECK(r.degree(Sym::x) < n);
        if (m >= n) {
            Poly lc = g.coeff_of(Sym::x, n);
            CHECK(lc.pow(unsigned(m - n + 1)) * f == q * g + r);
        } else {
            CHECK(q.is_zero());
            CHECK(r == f);
        }
    }
}

TEST_CASE("gcd basics") {
    Poly x = X(), y = Y();
    CHECK(poly_gcd(Poly(), Poly()).is_zero());
    CHECK(poly_gcd(x, Poly()) == x);
    CHECK(poly_gcd(Poly(6L), Poly(4L)) == Poly(1L));
    CHECK(poly_gcd(x * y, x * x) == x);
    // Common factor across disjoint variable sets is constant.
    CHECK(poly_gcd(x + Poly(1L), y + Poly(1L)) == Poly(1L));
}

TEST_CASE("gcd divides and recovers planted factors") {
    std::mt19937 rng(31337);
    for (int iter = 0; iter < 12; ++iter) {
        Poly h = random_poly(rng, 2, 2, 3, true);
        Poly a = random_poly(rng, 2, 2, 3, true);
        Poly b = random_poly(rng, 2, 2, 3, true);
        Poly g = poly_gcd(a * h, b * h);
        // gcd divides both inputs and the planted factor divides the gcd.
        CHECK(divide_exact(a * h, g).has_value());
        CHECK(divide_exact(b * h, g).has_value());
        CHECK(divide_exact(g, h.normalized_sign()).has_value());
        // Normalization: positive leading coefficient, integer-primitive.
        if (!g.is_zero()) {
            CHECK(sign(g.leading_coeff()) > 0);
            Rat c = g.content();
            CHECK(c == 1);
        }
    }
}

TEST_CASE("resultant matches the Sylvester determinant") {
    std::mt19937 rng(777);
    int done = 0;
    while (done < 16) {
        Poly f = random_poly(rng, 2, 3, 4, true);
        Poly g = random_poly(rng, 2, 3, 4, true);
        if (f.degree(Sym::x) < 1 || g.degree(Sym::x) < 1) continue;
        CHECK(resultant(f, g, Sym::x) == resultant_sylvester(f, g, Sym::x));
        ++done;
    }
    // Higher degrees in a single variable.
    done = 0;
    while (done < 8) {
        Poly f = random_poly(rng, 1, 6, 5, true);
        Poly g = random_poly(rng, 1, 5, 4, true);
        if (f.degree(Sym::x) < 2 || g.degree(Sym::x) < 2) continue;
        CHECK(resultant(f, g, Sym::x) == resultant_sylvester(f, g, Sym::x));
        ++done;
    }
}

TEST_CASE("resultant hand values and conventions") {
    Poly x = X();
    // res(x^2 - 2, x + 1) = (x+1) evaluated at +-sqrt(2), product = -1.
    CHECK(resultant(x * x - Poly(2L), x + Poly(1L), Sym::x) == Poly(-1L));
    // res(x + 1, x) = det [[1,1],[1,0]] = -1; orientation matters.
    CHECK(resultant(x + Poly(1L), x, Sym::x) == Poly(-1L));
    CHECK(resultant(x, x + Poly(1L), Sym::x) == Poly(1L));
    // Common root makes it vanish.
    CHECK(resultant((x - Poly(3L)) * (x + Poly(1L)), x - Poly(3L), Sym::x).is_zero());
    // Degree-zero conventions.
    CHECK(resultant(Poly(5L), x * x + Poly(1L), Sym::x) == Poly(25L));
    CHECK(resultant(x * x + Poly(1L), Poly(5L), Sym::x) == Poly(25L));
    CHECK_THROWS_AS(resultant(Poly(), x, Sym::x), DegenerateInput);
}

TEST_CASE("resultant multiplicativity") {
    std::mt19937 rng(31415);
    int done = 0;
    while (done < 8) {
        Poly f = random_poly(rng, 1, 3, 3, true);
        Poly g = random_poly(rng, 1, 3, 3, true);
        Poly h = random_poly(rng, 1, 2, 3, true);
        if (f.degree(Sym::x) < 1 || g.degree(Sym::x) < 1 || h.degree(Sym::x) < 1)
            continue;
        // res(f*g, h) = res(f,h) * res(g,h)
        CHECK(resultant(f * g, h, Sym::x) ==
              resultant(f, h, Sym::x) * resultant(g, h, Sym::x));
        ++done;
    }
}

TEST_CASE("elimination property on a parametric curve") {
    // Implicitize (x, y) = (t^2, t^3): res_t(x - t^2, y - t^3) = y^2 - x^3 up to sign.
    Poly t = Poly::variable(Sym::t);
    Poly f = X() - t * t;
    Poly g = Y() - t * t * t;
    Poly r = resultant(f, g, Sym::t).normalized_sign();
    Poly expect = (X().pow(3) - Y().pow(2)).normalized_sign();
    CHECK(r == expect);
}

TEST_CASE("squarefree part") {
    Poly x = X();
    Poly f = (x + Poly(1L)).pow(2) * (x - Poly(2L)).pow(3) * Poly(6L);
    Poly sf = squarefree_part(f);
    CHECK(sf == ((x + Poly(1L)) * (x - Poly(2L))).normalized_sign());
    // Multivariate: (x+y)^2 * x -> x*(x+y)
    Poly g = (x + Y()).pow(2) * x;
    CHECK(squarefree_part(g) == (x * (x + Y())).normalized_sign());
    CHECK(squarefree_part(Poly(7L)) == Poly(1L));
}

TEST_CASE("sturm root counting") {
    Poly x = X();
    // (x^2 - 2)(x^2 - 3): four real roots.
    Poly f = (x * x - Poly(2L)) * (x * x - Poly(3L));
    CHECK(real_root_count(f, Sym::x) == 4);
    // x^2 + 1: none.
    CHECK(real_root_count(x * x + Poly(1L), Sym::x) == 0);
    // Repeated roots counted once.
    CHECK(real_root_count((x - Poly(1L)).pow(4), Sym::x) == 1);
    // Counting in an interval: roots of x^2-2 in (0, 2].
    auto seq = sturm_sequence(x * x - Poly(2L), Sym::x);
    CHECK(sturm_count(seq, Sym::x, Rat(0), Rat(2)) == 1);
    CHECK(sturm_count(seq, Sym::x, Rat(-2), Rat(2)) == 2);
}

TEST_CASE("root isolation and rational recognition") {
    // Roots: 1/2, -2/3, 5 and an irrational pair from x^2 - 2.
    Poly x = X();
    Poly f = with_roots({rat(1, 2), rat(-2, 3), Rat(5)}, Poly(1L)) * (x * x - Poly(2L));
    auto roots = isolate_real_roots(f, Sym::x);
    REQUIRE(roots.size() == 5);
    std::vector<Rat> exact;
    int irrational = 0;
    for (const auto& r : roots) {
        if (r.exact)
            exact.push_back(*r.exact);
        else {
            ++irrational;
            CHECK(r.lo < r.hi);
        }
    }
    CHECK(irrational == 2);
    REQUIRE(exact.size() == 3);
    CHECK(exact[0] == rat(-2, 3));
    CHECK(exact[1] == rat(1, 2));
    CHECK(exact[2] == Rat(5));

    auto rr = rational_roots(f, Sym::x);
    REQUIRE(rr.size() == 3);
    CHECK(rr[0] == rat(-2, 3));

    // Isolating intervals separate the irrational roots from each other.
    for (std::size_t i = 0; i + 1 < roots.size(); ++i) CHECK(roots[i].hi <= roots[i + 1].lo);
}

TEST_CASE("root isolation randomized round-trip") {
    std::mt19937 rng(808);
    std::uniform_int_distribution<int> num(-12, 12);
    std::uniform_int_distribution<int> den(1, 9);
    for (int iter = 0; iter < 10; ++iter) {
        std::vector<Rat> planted;
        for (int k = 0; k < 3; ++k) planted.push_back(rat(num(rng), den(rng)));
        std::sort(planted.begin(), planted.end());
        planted.erase(std::unique(planted.begin(), planted.end()), planted.end());
        Poly f = with_roots(planted, Poly(3L));
        auto rr = rational_roots(f, Sym::x);
        CHECK(rr == std::vector<Rat>(planted.begin(), planted.end()));
    }
}

TEST_CASE("no real roots means empty isolation") {
    Poly x = X();
    Poly f = x * x + x + Poly(1L);
    CHECK(isolate_real_roots(f, Sym::x).empty());
    CHECK(rational_roots(f, Sym::x).empty());
}
