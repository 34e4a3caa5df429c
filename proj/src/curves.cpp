#include "projsig/curves.hpp"

#include "projsig/linalg.hpp"

namespace projsig {

namespace {

void check_symbols(const RatFun& r, Sym param, const char* what) {
    for (std::size_t i = 0; i < NVARS; ++i) {
        Sym v = static_cast<Sym>(i);
        if (v != param && r.depends_on(v))
            throw CurveError(std::string(what) + " may depend only on '" +
                             std::string(name(param)) + "' but uses '" +
                             std::string(name(v)) + "'");
    }
}

// F composed with the curve map, cleared of denominators; zero iff F
// vanishes identically along the curve.
Poly pullback(const Poly& f, const PlanarParametricCurve& c) {
    Poly z = subst_fraction(f, Sym::x, c.x().num(), c.x().den());
    return subst_fraction(z, Sym::y, c.y().num(), c.y().den());
}

} // namespace

PlanarParametricCurve::PlanarParametricCurve(Sym param, RatFun x, RatFun y)
    : param_(param), x_(std::move(x)), y_(std::move(y)) {
    check_symbols(x_, param_, "x-component");
    check_symbols(y_, param_, "y-component");
    if (x_.is_constant() && y_.is_constant())
        throw CurveError("parametric map is constant: its image is a point, not a curve");
}

const Poly& PlanarParametricCurve::implicit_equation() const {
    if (!implicit_memo_) implicit_memo_ = std::make_shared<Poly>(implicitize(*this));
    return *implicit_memo_;
}

std::string PlanarParametricCurve::str() const {
    return "(" + x_.str() + ", " + y_.str() + ") in " + std::string(name(param_));
}

PlanarImplicitCurve::PlanarImplicitCurve(Poly f) {
    if (f.is_zero() || f.is_constant())
        throw CurveError("implicit equation must be a non-constant polynomial");
    for (std::size_t i = 0; i < NVARS; ++i) {
        Sym v = static_cast<Sym>(i);
        if (v != Sym::x && v != Sym::y && f.depends_on(v))
            throw CurveError("implicit equation may use only x and y, found '" +
                             std::string(name(v)) + "'");
    }
    // Same zero set, canonical representative.
    f_ = squarefree_part(f);
}

std::string PlanarImplicitCurve::str() const { return f_.str() + " = 0"; }

SpatialParametricCurve::SpatialParametricCurve(Sym param, RatFun z1, RatFun z2, RatFun z3)
    : param_(param), z_{std::move(z1), std::move(z2), std::move(z3)} {
    check_symbols(z_[0], param_, "z1-component");
    check_symbols(z_[1], param_, "z2-component");
    check_symbols(z_[2], param_, "z3-component");
    if (z_[0].is_constant() && z_[1].is_constant() && z_[2].is_constant())
        throw CurveError("parametric map is constant: its image is a point, not a curve");
}

const RatFun& SpatialParametricCurve::z(int i) const {
    if (i < 1 || i > 3) throw std::out_of_range("spatial component index must be 1, 2 or 3");
    return z_[i - 1];
}

std::string SpatialParametricCurve::str() const {
    return "(" + z_[0].str() + ", " + z_[1].str() + ", " + z_[2].str() + ") in " +
           std::string(name(param_));
}

JetFunctions jets_parametric(const PlanarParametricCurve& c, int order) {
    if (order < 1) throw CurveError("jet order must be at least 1");
    Sym t = c.param();
    RatFun xd = c.x().derivative(t);
    if (xd.is_zero())
        throw CurveError("x-component is constant: a vertical line has no graph jets");
    JetFunctions out;
    out.order = order;
    RatFun cur = c.y().derivative(t) / xd;
    out.ys.push_back(cur);
    for (int k = 2; k <= order; ++k) {
        cur = cur.derivative(t) / xd;
        out.ys.push_back(cur);
    }
    return out;
}

JetFunctions jets_implicit(const PlanarImplicitCurve& c, int order) {
    if (order < 1) throw CurveError("jet order must be at least 1");
    const Poly& f = c.f();
    Poly fy = f.derivative(Sym::y);
    if (fy.is_zero())
        throw CurveError("equation does not involve y: vertical lines have no graph jets");
    RatFun y1 = -RatFun(f.derivative(Sym::x), fy);
    JetFunctions out;
    out.order = order;
    out.ys.push_back(y1);
    RatFun cur = y1;
    for (int k = 2; k <= order; ++k) {
        // Total derivative along the curve: d/dx + y' d/dy.
        cur = cur.derivative(Sym::x) + y1 * cur.derivative(Sym::y);
        out.ys.push_back(cur);
    }
    return out;
}

bool is_line(const PlanarParametricCurve& c) {
    Sym t = c.param();
    RatFun xd = c.x().derivative(t), yd = c.y().derivative(t);
    return (xd.derivative(t) * yd - yd.derivative(t) * xd).is_zero();
}

bool is_line(const PlanarImplicitCurve& c) { return c.f().total_degree() == 1; }

bool is_line(const SpatialParametricCurve& c) {
    Sym t = c.param();
    RatFun d1[3], d2[3];
    for (int i = 0; i < 3; ++i) {
        d1[i] = c.z(i + 1).derivative(t);
        d2[i] = d1[i].derivative(t);
    }
    // The velocity and acceleration stay parallel exactly on lines.
    return (d2[1] * d1[2] - d2[2] * d1[1]).is_zero() &&
           (d2[2] * d1[0] - d2[0] * d1[2]).is_zero() &&
           (d2[0] * d1[1] - d2[1] * d1[0]).is_zero();
}

bool is_coplanar(const SpatialParametricCurve& c) {
    Sym t = c.param();
    RatFun d1[3], d2[3], d3[3];
    for (int i = 0; i < 3; ++i) {
        d1[i] = c.z(i + 1).derivative(t);
        d2[i] = d1[i].derivative(t);
        d3[i] = d2[i].derivative(t);
    }
    // Wronskian of the three component derivatives: vanishes identically iff
    // z1', z2', z3' are linearly dependent over the constants, i.e. iff some
    // fixed vector e has e . Gamma(s) constant -- a containing plane.
    RatFun w = d1[0] * (d2[1] * d3[2] - d2[2] * d3[1]) -
               d1[1] * (d2[0] * d3[2] - d2[2] * d3[0]) +
               d1[2] * (d2[0] * d3[1] - d2[1] * d3[0]);
    return w.is_zero();
}

std::array<Rat, 4> containing_plane(const SpatialParametricCurve& c) {
    if (is_line(c)) throw CurveError("containing plane of a line is not unique");
    if (!is_coplanar(c)) throw CurveError("curve is not coplanar");
    Sym t = c.param();

    // Solve e1 z1' + e2 z2' + e3 z3' == 0 exactly: clear to a common
    // denominator and match coefficients of each power of the parameter.
    RatFun d[3];
    for (int i = 0; i < 3; ++i) d[i] = c.z(i + 1).derivative(t);
    Poly cleared[3];
    cleared[0] = d[0].num() * d[1].den() * d[2].den();
    cleared[1] = d[1].num() * d[0].den() * d[2].den();
    cleared[2] = d[2].num() * d[0].den() * d[1].den();

    int maxdeg = 0;
    for (const Poly& p : cleared) maxdeg = std::max(maxdeg, p.degree(t));
    RatMat rows;
    for (int k = 0; k <= maxdeg; ++k) {
        RatVec row(3);
        for (int i = 0; i < 3; ++i) row[i] = cleared[i].coeff_of(t, k).constant_value();
        rows.push_back(std::move(row));
    }
    std::vector<RatVec> basis = nullspace(rows, 3);
    if (basis.size() != 1)
        throw CurveError("containing plane is not unique; curve data degenerate");

    RatVec e = basis[0];
    // e . Gamma has zero derivative, hence is the constant -e0.
    RatFun dot = RatFun(e[0]) * c.z(1) + RatFun(e[1]) * c.z(2) + RatFun(e[2]) * c.z(3);
    if (!dot.is_constant()) throw CurveError("containing plane verification failed");

    std::array<Rat, 4> plane{e[0], e[1], e[2], -dot.constant_value()};
    // Normalize: integer-primitive with first nonzero coefficient positive.
    Int num_gcd = 0, den_lcm = 1;
    for (const Rat& q : plane) {
        if (q == 0) continue;
        num_gcd = gcd(num_gcd, Int(q.get_num()));
        den_lcm = lcm(den_lcm, Int(q.get_den()));
    }
    Rat scale = rat(den_lcm, num_gcd == 0 ? Int(1) : num_gcd);
    for (int i = 0; i < 3; ++i)
        if (plane[static_cast<std::size_t>(i)] != 0) {
            if (plane[static_cast<std::size_t>(i)] < 0) scale = -scale;
            break;
        }
    for (Rat& q : plane) q *= scale;
    return plane;
}

namespace {

// Parameter elimination for one parametrization of the curve: resultant of
// the two cleared component equations, made squarefree, with factors
// supported in a single coordinate removed. Only valid when the image is
// not an axis-parallel line (those equations live in a single coordinate).
Poly eliminate_parameter(const RatFun& xf, const RatFun& yf, Sym t) {
    Poly c1 = Poly::variable(Sym::x) * xf.den() - xf.num();
    Poly c2 = Poly::variable(Sym::y) * yf.den() - yf.num();
    Poly r = resultant(c1, c2, t);
    if (r.is_zero()) throw EliminationFailed("component equations share a factor");
    r = squarefree_part(r);
    for (Sym v : {Sym::x, Sym::y}) {
        Poly cont = content_in(r, v);
        if (!cont.is_constant()) {
            auto q = divide_exact(r, cont);
            if (!q) throw EliminationFailed("content removal failed");
            r = *q;
        }
    }
    if (r.is_constant()) throw EliminationFailed("elimination left no curve equation");
    return r.normalized_sign();
}

} // namespace

Poly implicitize(const PlanarParametricCurve& c) {
    const Poly X = Poly::variable(Sym::x);
    const Poly Y = Poly::variable(Sym::y);

    // Axis-parallel lines first: the generic pipeline strips one-coordinate
    // factors, which is exactly what these equations are.
    if (c.x().is_constant()) return (X - Poly(c.x().constant_value())).normalized_sign();
    if (c.y().is_constant()) return (Y - Poly(c.y().constant_value())).normalized_sign();

    if (is_line(c)) {
        // Slanted line through two distinct sample points.
        std::vector<std::pair<Rat, Rat>> pts;
        for (long k = 0; pts.size() < 2 && k < 64; ++k) {
            Rat v = (k % 2 == 0) ? Rat(k / 2) : Rat(-(k + 1) / 2);
            auto px = c.x().eval({{c.param(), v}});
            auto py = c.y().eval({{c.param(), v}});
            if (!px || !py) continue;
            std::pair<Rat, Rat> p{*px, *py};
            if (pts.empty() || pts[0] != p) pts.push_back(p);
        }
        if (pts.size() < 2) throw EliminationFailed("could not sample two points on line");
        Poly l = (X - Poly(pts[0].first)) * Poly(pts[1].second - pts[0].second) -
                 (Y - Poly(pts[0].second)) * Poly(pts[1].first - pts[0].first);
        l = l.normalized_sign();
        if (!pullback(l, c).is_zero()) throw EliminationFailed("line equation failed verification");
        return l;
    }

    Poly r1 = eliminate_parameter(c.x(), c.y(), c.param());

    // Repeat after a Moebius change of parameter and intersect: artifacts of
    // the elimination are tied to one chart of the parameter line and drop
    // out of the gcd, while the true equation survives.
    Poly tp = Poly::variable(c.param());
    RatFun moebius(tp * Poly(2L) + Poly(1L), tp - Poly(1L));
    RatFun x2 = c.x().subst_ratfun(c.param(), moebius);
    RatFun y2 = c.y().subst_ratfun(c.param(), moebius);
    Poly f;
    try {
        Poly r2 = eliminate_parameter(x2, y2, c.param());
        f = poly_gcd(r1, r2);
    } catch (const EliminationFailed&) {
        f = Poly(1L); // fall through to the unreduced candidate
    }

    for (const Poly* cand : {&f, &r1}) {
        if (cand->is_constant()) continue;
        if (pullback(*cand, c).is_zero()) return cand->normalized_sign();
    }
    throw EliminationFailed("no verified implicit equation found");
}

} // namespace projsig
