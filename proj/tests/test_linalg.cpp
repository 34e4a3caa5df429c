#include "doctest.h"

#include "projsig/linalg.hpp"

using namespace projsig;

namespace {
RatMat m3(std::initializer_list<std::initializer_list<long>> rows) {
    RatMat m;
    for (auto& r : rows) {
        RatVec v;
        for (long x : r) v.push_back(Rat(x));
        m.push_back(v);
    }
    return m;
}
} // namespace

TEST_CASE("determinant and inverse") {
    RatMat a = m3({{2, 0, 0}, {0, 3, 0}, {0, 0, 4}});
    CHECK(det(a) == Rat(24));
    RatMat b = m3({{1, 2}, {2, 4}});
    CHECK(det(b) == Rat(0));
    CHECK(!inverse(b).has_value());

    RatMat c = m3({{1, 2, 3}, {0, 1, 4}, {5, 6, 0}});
    auto inv = inverse(c);
    REQUIRE(inv.has_value());
    RatMat prod = mat_mul(c, *inv);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) CHECK(prod[i][j] == (i == j ? Rat(1) : Rat(0)));
}

TEST_CASE("rank and nullspace") {
    RatMat a = m3({{1, 2, 3}, {2, 4, 6}, {1, 0, 1}});
    CHECK(rank(a) == 2);
    auto ns = nullspace(a, 3);
    REQUIRE(ns.size() == 1);
    // Verify A * v = 0.
    RatVec v = ns[0];
    RatVec av = mat_apply(a, v);
    for (const auto& x : av) CHECK(x == Rat(0));

    // Full-rank square matrix: trivial nullspace.
    CHECK(nullspace(m3({{1, 0}, {0, 1}}), 2).empty());
}

TEST_CASE("linear solve") {
    RatMat a = m3({{1, 1}, {1, -1}});
    auto x = solve_linear(a, {Rat(3), Rat(1)});
    REQUIRE(x.has_value());
    CHECK((*x)[0] == Rat(2));
    CHECK((*x)[1] == Rat(1));

    // Inconsistent system.
    RatMat b = m3({{1, 1}, {2, 2}});
    CHECK(!solve_linear(b, {Rat(1), Rat(3)}).has_value());
    // Consistent underdetermined system returns some solution.
    auto y = solve_linear(b, {Rat(1), Rat(2)});
    REQUIRE(y.has_value());
    CHECK((*y)[0] + (*y)[1] == Rat(1));
}
