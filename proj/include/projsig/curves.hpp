#pragma once

#include <array>
#include <memory>
#include <stdexcept>
#include <vector>

#include "projsig/ratfun.hpp"

namespace projsig {

// Raised when a curve construction or elimination step receives input the
// algorithms cannot handle (constant maps, reducible data, failed
// implicitization, ...). The message explains which precondition failed.
struct CurveError : std::invalid_argument {
    explicit CurveError(const std::string& what) : std::invalid_argument(what) {}
};

struct EliminationFailed : std::runtime_error {
    explicit EliminationFailed(const std::string& what) : std::runtime_error(what) {}
};

class PlanarImplicitCurve;

// A planar curve given parametrically by rational component functions
//   gamma(t) = (x(t), y(t)).
// Invariants: both components depend only on the declared parameter, and the
// map is non-constant (its image is a genuine curve, not a point).
// The implicit equation of the image is computed on first demand and shared
// between copies.
class PlanarParametricCurve {
public:
    PlanarParametricCurve(Sym param, RatFun x, RatFun y);

    Sym param() const { return param_; }
    const RatFun& x() const { return x_; }
    const RatFun& y() const { return y_; }

    // Squarefree implicit equation F(x,y) = 0 of the image (memoized).
    const Poly& implicit_equation() const;

    std::string str() const;

private:
    Sym param_;
    RatFun x_, y_;
    mutable std::shared_ptr<Poly> implicit_memo_; // shared across copies
};

// A planar curve given by a polynomial equation F(x, y) = 0.
// Invariants: F is squarefree, integer-primitive with positive leading
// coefficient, non-constant, and involves no symbols besides x and y.
class PlanarImplicitCurve {
public:
    explicit PlanarImplicitCurve(Poly f);

    const Poly& f() const { return f_; }

    std::string str() const;

private:
    Poly f_;
};

// A spatial curve given parametrically by rational component functions
//   Gamma(s) = (z1(s), z2(s), z3(s)).
// Invariants: components depend only on the declared parameter and the map
// is non-constant. Straight lines are allowed (projection of a line is
// decided by a dedicated coplanarity route, not by signatures).
class SpatialParametricCurve {
public:
    SpatialParametricCurve(Sym param, RatFun z1, RatFun z2, RatFun z3);

    Sym param() const { return param_; }
    const RatFun& z(int i) const; // i in {1,2,3}

    std::string str() const;

private:
    Sym param_;
    RatFun z_[3];
};

// Derivatives y^(k) = d^k y / dx^k of a planar curve, as rational functions
// of the curve's own variable (the parameter t for parametric curves; the
// coordinates x,y for implicit curves). ys[k-1] holds y^(k), k = 1..order.
struct JetFunctions {
    int order = 0;
    std::vector<RatFun> ys;

    const RatFun& y(int k) const { return ys.at(static_cast<std::size_t>(k) - 1); }
};

// Jets of a parametric curve: y^(1) = y'/x', y^(k+1) = (y^(k))'/x'.
// Requires x' not identically zero (otherwise the image is a vertical line
// and has no graph chart; CurveError).
JetFunctions jets_parametric(const PlanarParametricCurve& c, int order);

// Jets of an implicit curve along F = 0: y^(1) = -F_x/F_y and
// y^(k+1) = (d/dx + y^(1) d/dy) y^(k), as rational functions in x, y.
// Requires F_y not identically zero modulo F (CurveError).
JetFunctions jets_implicit(const PlanarImplicitCurve& c, int order);

// True iff the image of the parametric curve is a straight line
// (includes vertical lines).
bool is_line(const PlanarParametricCurve& c);

// True iff F has total degree 1.
bool is_line(const PlanarImplicitCurve& c);

// True iff the image of the spatial curve is a straight line.
bool is_line(const SpatialParametricCurve& c);

// True iff the image of the spatial curve lies in some plane (affine plane
// in 3-space). Lines are coplanar by convention.
bool is_coplanar(const SpatialParametricCurve& c);

// For a coplanar non-line spatial curve: a plane e1*z1+e2*z2+e3*z3+e0 = 0
// containing the image, as exact coefficients {e1,e2,e3,e0} with (e1,e2,e3)
// nonzero. CurveError if the curve is not coplanar or is a line.
std::array<Rat, 4> containing_plane(const SpatialParametricCurve& c);

// The squarefree implicit equation of the image of a parametric curve:
// eliminates the parameter, removes extraneous factors supported in only
// one coordinate, and verifies F(x(t), y(t)) == 0 exactly.
// Throws EliminationFailed when no verified equation is found.
Poly implicitize(const PlanarParametricCurve& c);

} // namespace projsig
