#include "projsig/signatures.hpp"

#include "projsig/solve.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <utility>

namespace projsig {

namespace {

Poly kvar() { return Poly::variable(Sym::kappa); }
Poly tvar() { return Poly::variable(Sym::tau); }

// Main elimination variable for reduction modulo a defining polynomial.
Sym main_var(const Poly& f) { return f.degree(Sym::y) > 0 ? Sym::y : Sym::x; }

// p == 0 in the coordinate ring of f (sound for irreducible f; for reducible
// squarefree f it tests vanishing on every component at once).
bool vanishes_mod(const Poly& p, const Poly& f) {
    if (p.is_zero()) return true;
    return prem(p, f, main_var(f)).is_zero();
}

// Small exact sample values, ordered roughly by height.
const std::vector<Rat>& small_rationals() {
    static const std::vector<Rat> pool = [] {
        std::vector<Rat> v;
        auto add = [&v](long n, long d) {
            Rat r(n, d);
            r.canonicalize();
            v.push_back(r);
        };
        add(0, 1);
        for (long i = 1; i <= 12; ++i) {
            add(i, 1);
            add(-i, 1);
            add(2 * i - 1, 2);
            add(-(2 * i - 1), 2);
            add(i, 3);
        }
        return v;
    }();
    return pool;
}

} // namespace

RatFun compose_signature(const Poly& S, const RatFun& K, const RatFun& T) {
    RatFun acc;
    auto by_k = S.coeffs_in(Sym::kappa);
    for (int i = S.degree(Sym::kappa); i >= 0; --i) {
        RatFun coeff;
        auto it = by_k.find(i);
        if (it != by_k.end()) {
            RatFun inner;
            auto by_t = it->second.coeffs_in(Sym::tau);
            for (int j = it->second.degree(Sym::tau); j >= 0; --j) {
                RatFun cj;
                auto jt = by_t.find(j);
                if (jt != by_t.end()) cj = RatFun(jt->second);
                inner = inner * T + cj;
            }
            coeff = inner;
        }
        acc = acc * K + coeff;
    }
    return acc;
}

namespace {

// q*v - p for the rational constant p/q: the canonical line polynomial.
Poly line_poly(Sym v, const Rat& c) {
    return Rat(c.get_den()) * Poly::variable(v) - Poly(Rat(c.get_num()));
}

// Rational points on an implicit curve found by slicing along x.
std::vector<std::map<Sym, Rat>> implicit_rational_points(const Poly& f, int want) {
    std::vector<std::map<Sym, Rat>> out;
    for (const Rat& x0 : small_rationals()) {
        if (static_cast<int>(out.size()) >= want) break;
        Poly fiber = f.subst(Sym::x, x0);
        if (fiber.is_zero() || !fiber.depends_on(Sym::y)) continue;
        for (const Rat& y0 : rational_roots(fiber, Sym::y)) {
            out.push_back({{Sym::x, x0}, {Sym::y, y0}});
            if (static_cast<int>(out.size()) >= want) break;
        }
    }
    return out;
}

// The constant value of g on the source curve, when g restricts to a known
// rational constant; nullopt when nonconstant (or the constant is not
// exhibited by any of the exact extraction routes).
std::optional<Rat> constant_value_on(const SignatureMap& m, const RatFun& g) {
    if (g.is_constant()) return g.constant_value();
    if (m.parametric) return std::nullopt;

    // Directional derivative along the curve must vanish modulo f.
    RatFun dir = g.derivative(Sym::x) * RatFun(m.f.derivative(Sym::y)) -
                 g.derivative(Sym::y) * RatFun(m.f.derivative(Sym::x));
    if (!vanishes_mod(dir.num(), m.f)) return std::nullopt;
    if (vanishes_mod(g.num(), m.f)) return Rat(0);

    // A rational curve point exhibits the value directly.
    for (const auto& pt : implicit_rational_points(m.f, 6)) {
        auto v = g.eval(pt);
        if (v && vanishes_mod(g.num() - *v * g.den(), m.f)) return *v;
    }

    // Otherwise the value appears as the coordinate-free factor of an
    // iterated resultant of the graph ideal.
    Poly gen = kvar() * g.den() - g.num();
    const std::pair<Sym, Sym> orders[2] = {{Sym::y, Sym::x}, {Sym::x, Sym::y}};
    for (const auto& [elim, keep] : orders) {
        if (!m.f.depends_on(elim) || !gen.depends_on(elim)) continue;
        Poly r = resultant(m.f, gen, elim);
        if (r.is_zero()) continue;
        Poly cont = r.depends_on(keep) ? content_in(r, keep) : r;
        if (!cont.depends_on(Sym::kappa)) continue;
        for (const Rat& c : rational_roots(cont, Sym::kappa))
            if (vanishes_mod(g.num() - c * g.den(), m.f)) return c;
    }
    return std::nullopt;
}

// Signature-plane sample points (kappa_i, tau_i) lying exactly on the image.
std::vector<std::map<Sym, Rat>> signature_samples(const SignatureMap& m, int want) {
    std::vector<std::map<Sym, Rat>> out;
    if (m.parametric) {
        for (const Rat& t0 : small_rationals()) {
            if (static_cast<int>(out.size()) >= want) break;
            std::map<Sym, Rat> pt = {{m.var, t0}};
            auto kv = m.k.eval(pt), tv = m.t.eval(pt);
            if (!kv || !tv) continue;
            out.push_back({{Sym::kappa, *kv}, {Sym::tau, *tv}});
        }
    } else {
        for (const auto& pt : implicit_rational_points(m.f, 4 * want)) {
            if (static_cast<int>(out.size()) >= want) break;
            auto kv = m.k.eval(pt), tv = m.t.eval(pt);
            if (!kv || !tv) continue;
            out.push_back({{Sym::kappa, *kv}, {Sym::tau, *tv}});
        }
    }
    return out;
}

// Splits off the kappa-free and tau-free contents, keeps the factors the
// predicate accepts, and returns the squarefree canonical product.
Poly select_factors(const Poly& R, const std::function<bool(const Poly&)>& keep) {
    Poly core = squarefree_part(R);
    std::vector<Poly> parts;
    for (Sym v : {Sym::kappa, Sym::tau}) {
        Poly cont = content_in(core, v);
        if (cont.is_constant()) continue;
        parts.push_back(cont.normalized_sign());
        if (auto q = divide_exact(core, cont)) core = *q;
    }
    if (!core.is_constant()) parts.push_back(core.normalized_sign());
    Poly out(1L);
    for (const Poly& part : parts)
        if (keep(part)) out = out * part;
    return squarefree_part(out);
}

Poly sig_resultant_parametric(const RatFun& K, const RatFun& T, Sym var) {
    Poly c1 = kvar() * K.den() - K.num();
    Poly c2 = tvar() * T.den() - T.num();
    return resultant(c1, c2, var);
}

Poly eliminate_parametric(const SignatureMap& m, const SignatureOptions& opt) {
    Poly r1 = sig_resultant_parametric(m.k, m.t, m.var);
    if (r1.is_zero())
        throw EliminationDegenerate("signature elimination: resultant vanished identically");

    // Second coordinate chart of the same curve: reparametrize by a fixed
    // fractional-linear map. Chart-dependent spurious factors differ between
    // the two resultants, so their gcd trims them.
    Poly tv = Poly::variable(m.var);
    RatFun mob(Poly(2L) * tv + Poly(1L), tv - Poly(1L));
    RatFun k2 = m.k.subst_ratfun(m.var, mob);
    RatFun t2 = m.t.subst_ratfun(m.var, mob);
    Poly r2 = sig_resultant_parametric(k2, t2, m.var);

    auto samples = signature_samples(m, opt.extraneous_samples);
    auto keep = [&samples](const Poly& part) {
        for (const auto& pt : samples)
            if (part.eval(pt) != 0) return false;
        return !samples.empty();
    };
    auto identity = [&m](const Poly& S) {
        return compose_signature(S, m.k, m.t).is_zero();
    };

    std::vector<Poly> candidates;
    if (!r2.is_zero()) candidates.push_back(poly_gcd(r1, r2));
    candidates.push_back(r1);
    for (const Poly& cand : candidates) {
        Poly S = select_factors(cand, keep);
        if (!S.is_constant() && identity(S)) return S;
    }
    throw EliminationDegenerate(
        "signature elimination: no factor vanishes on the signature image");
}

// Iterated resultant eliminating first `e1`, then `e2`, from the graph ideal
// of an implicit source.
Poly implicit_iterated_resultant(const Poly& f, const Poly& g2, const Poly& g3, Sym e1,
                                 Sym e2) {
    Poly r1 = g2.depends_on(e1) ? resultant(f, g2, e1) : g2;
    Poly r2 = g3.depends_on(e1) ? resultant(f, g3, e1) : g3;
    if (r1.is_zero() || r2.is_zero()) return Poly();
    if (!r1.depends_on(e2)) return r1;
    if (!r2.depends_on(e2)) return r2;
    return resultant(r1, r2, e2);
}

Poly eliminate_implicit(const SignatureMap& m) {
    Poly g2 = kvar() * m.k.den() - m.k.num();
    Poly g3 = tvar() * m.t.den() - m.t.num();
    Poly ra = implicit_iterated_resultant(m.f, g2, g3, Sym::x, Sym::y);
    Poly rb = implicit_iterated_resultant(m.f, g2, g3, Sym::y, Sym::x);
    if (ra.is_zero() && rb.is_zero())
        throw EliminationDegenerate("signature elimination: resultant vanished identically");

    auto keep = [&m](const Poly& part) {
        return vanishes_mod(compose_signature(part, m.k, m.t).num(), m.f);
    };

    std::vector<Poly> candidates;
    if (!ra.is_zero() && !rb.is_zero()) candidates.push_back(poly_gcd(ra, rb));
    candidates.push_back(!ra.is_zero() ? ra : rb);
    for (const Poly& cand : candidates) {
        Poly S = select_factors(cand, keep);
        if (!S.is_constant()) return S; // keep() already certifies vanishing
    }
    throw EliminationDegenerate(
        "signature elimination: no factor vanishes on the signature image");
}

} // namespace

const char* group_name(Group g) { return g == Group::Affine ? "affine" : "projective"; }

const char* equivalence_name(Equivalence e) {
    switch (e) {
    case Equivalence::Equivalent: return "Equivalent";
    case Equivalence::NotEquivalent: return "NotEquivalent";
    default: return "EquivalentOverComplexOnly";
    }
}

SignatureMap signature_map(const PlanarParametricCurve& c, Group g) {
    Invariant ki = g == Group::Affine ? Invariant::KAffine : Invariant::KProjective;
    Invariant ti = g == Group::Affine ? Invariant::TAffine : Invariant::TProjective;
    return SignatureMap{g, true, c.param(), restrict_invariant(ki, c),
                        restrict_invariant(ti, c), Poly()};
}

SignatureMap signature_map(const PlanarImplicitCurve& c, Group g) {
    Invariant ki = g == Group::Affine ? Invariant::KAffine : Invariant::KProjective;
    Invariant ti = g == Group::Affine ? Invariant::TAffine : Invariant::TProjective;
    return SignatureMap{g, false, Sym::x, restrict_invariant(ki, c),
                        restrict_invariant(ti, c), c.f()};
}

std::string SignatureObject::str() const {
    if (kind == SignatureKind::Point)
        return "Point(" + point_k.get_str() + ", " + point_t.get_str() + ")";
    return "Curve(" + equation.str() + " = 0)";
}

SignatureObject implicit_signature(const SignatureMap& m, const SignatureOptions& opt) {
    auto ck = constant_value_on(m, m.k);
    auto ct = constant_value_on(m, m.t);
    if (ck && ct) return SignatureObject{m.group, SignatureKind::Point, *ck, *ct, Poly()};
    // One constant restriction: the image closure is the corresponding line.
    if (ck)
        return SignatureObject{m.group, SignatureKind::Curve, Rat(0), Rat(0),
                               line_poly(Sym::kappa, *ck)};
    if (ct)
        return SignatureObject{m.group, SignatureKind::Curve, Rat(0), Rat(0),
                               line_poly(Sym::tau, *ct)};
    Poly S = m.parametric ? eliminate_parametric(m, opt) : eliminate_implicit(m);
    return SignatureObject{m.group, SignatureKind::Curve, Rat(0), Rat(0), std::move(S)};
}

Equivalence signatures_equal(const SignatureObject& a, const SignatureObject& b) {
    if (a.group != b.group)
        throw std::invalid_argument("signatures_equal: mismatched groups");
    if (a.kind != b.kind) return Equivalence::NotEquivalent;
    if (a.kind == SignatureKind::Point)
        return (a.point_k == b.point_k && a.point_t == b.point_t)
                   ? Equivalence::Equivalent
                   : Equivalence::NotEquivalent;
    return a.equation == b.equation ? Equivalence::EquivalentOverComplexOnly
                                    : Equivalence::NotEquivalent;
}

const char* conic_type_name(ConicType t) {
    switch (t) {
    case ConicType::RealEllipse: return "real ellipse";
    case ConicType::ImaginaryEllipse: return "imaginary ellipse";
    case ConicType::Hyperbola: return "hyperbola";
    case ConicType::ParabolaArc: return "parabola";
    default: return "degenerate conic";
    }
}

ConicType conic_type(const Poly& f) {
    if (f.total_degree() != 2)
        throw std::invalid_argument("conic_type: polynomial is not quadratic");
    for (std::size_t i = 0; i < NVARS; ++i) {
        Sym v = static_cast<Sym>(i);
        if (v != Sym::x && v != Sym::y && f.depends_on(v))
            throw std::invalid_argument("conic_type: polynomial involves foreign symbols");
    }
    auto cval = [](const Poly& p, Sym v, int k) {
        Poly c = p.coeff_of(v, k);
        return c.is_zero() ? Rat(0) : c.constant_value();
    };
    Poly x1 = f.coeff_of(Sym::x, 1), x0 = f.coeff_of(Sym::x, 0);
    Rat a = cval(f, Sym::x, 2);
    Rat b = cval(x1, Sym::y, 1);
    Rat d = cval(x1, Sym::y, 0);
    Rat c = cval(x0, Sym::y, 2);
    Rat e = cval(x0, Sym::y, 1);
    Rat f0 = cval(x0, Sym::y, 0);

    // Determinant of the doubled full conic matrix [[2a,b,d],[b,2c,e],[d,e,2f0]]
    // and of the doubled quadratic part; only their signs matter.
    Rat big = 2 * a * (4 * c * f0 - e * e) - b * (2 * b * f0 - e * d) +
              d * (b * e - 2 * c * d);
    Rat delta = 4 * a * c - b * b;
    if (big != 0) {
        if (delta > 0) {
            Rat trace = a + c;
            return trace * big < 0 ? ConicType::RealEllipse : ConicType::ImaginaryEllipse;
        }
        if (delta < 0) return ConicType::Hyperbola;
        return ConicType::ParabolaArc;
    }
    return ConicType::Degenerate;
}

namespace {

Classification classify_any(const PlanarCurve& c) {
    return std::visit([](const auto& v) { return classify(v); }, c);
}

SignatureMap sigmap_any(const PlanarCurve& c, Group g) {
    return std::visit([g](const auto& v) { return signature_map(v, g); }, c);
}

Poly implicit_equation_any(const PlanarCurve& c) {
    if (const auto* imp = std::get_if<PlanarImplicitCurve>(&c)) return imp->f();
    return std::get<PlanarParametricCurve>(c).implicit_equation();
}

// Does the destination curve attain the signature value (k0, t0v) at a REAL
// point? Exact: univariate Sturm counting for parametric destinations, the
// rational system solver for implicit ones (rational witnesses only there).
bool attains_real(const SignatureMap& dst, const Rat& k0, const Rat& t0v) {
    Poly p1 = dst.k.num() - k0 * dst.k.den();
    Poly p2 = dst.t.num() - t0v * dst.t.den();
    if (dst.parametric) {
        if (p1.is_zero() && p2.is_zero()) return true;
        Poly g = p1.is_zero() ? p2 : (p2.is_zero() ? p1 : poly_gcd(p1, p2));
        if (g.is_constant()) return false;
        return real_root_count(g, dst.var) > 0;
    }
    std::vector<Poly> sys = {dst.f};
    if (!p1.is_zero()) sys.push_back(p1.normalized_sign());
    if (!p2.is_zero()) sys.push_back(p2.normalized_sign());
    SolveOutcome out = solve_system(sys, {Sym::x, Sym::y});
    if (!out.rational.empty()) return true;
    if (sys.size() == 1)
        return !out.component_samples.empty();
    return false;
}

bool real_witness(const SignatureMap& src, const SignatureMap& dst,
                  const SignatureOptions& opt, std::vector<std::string>& trace) {
    auto samples = signature_samples(src, opt.witness_samples);
    for (const auto& pt : samples) {
        const Rat& k0 = pt.at(Sym::kappa);
        const Rat& t0v = pt.at(Sym::tau);
        if (attains_real(dst, k0, t0v)) {
            trace.push_back("real witness: signature value (" + k0.get_str() + ", " +
                            t0v.get_str() +
                            ") sampled on one curve is attained at a real point of the other");
            return true;
        }
    }
    return false;
}

} // namespace

EquivalenceDecision equivalent(const PlanarCurve& c1, const PlanarCurve& c2, Group g,
                               const SignatureOptions& opt) {
    EquivalenceDecision d;
    Classification cl1 = classify_any(c1), cl2 = classify_any(c2);
    bool e1 = g == Group::Affine ? cl1.affine_exceptional : cl1.projective_exceptional;
    bool e2 = g == Group::Affine ? cl2.affine_exceptional : cl2.projective_exceptional;
    d.trace.push_back(std::string("group: ") + group_name(g));
    d.trace.push_back("first curve class: " + std::string(curve_class_name(cl1.cls)));
    d.trace.push_back("second curve class: " + std::string(curve_class_name(cl2.cls)));

    if (e1 != e2) {
        d.verdict = Equivalence::NotEquivalent;
        d.trace.push_back("one curve is exceptional for this group and the other is not; "
                          "no group element can identify them");
        return d;
    }

    if (e1 && e2) {
        bool l1 = cl1.cls == CurveClass::Line, l2 = cl2.cls == CurveClass::Line;
        if (l1 != l2) {
            d.verdict = Equivalence::NotEquivalent;
            d.trace.push_back("a straight line is never equivalent to a curve of degree two");
        } else if (l1) {
            d.verdict = Equivalence::Equivalent;
            d.trace.push_back("both curves are straight lines; any two lines are equivalent");
        } else if (g == Group::Projective) {
            d.verdict = Equivalence::Equivalent;
            d.trace.push_back("both curves are irreducible conics; all such conics are "
                              "projectively equivalent");
        } else {
            d.verdict = Equivalence::Equivalent;
            d.trace.push_back("both curves are parabolas; all parabolas share one affine "
                              "normal form");
        }
        return d;
    }

    if (g == Group::Affine && cl1.cls == CurveClass::Conic && cl2.cls == CurveClass::Conic) {
        // Both signature points sit at the origin for any conic, so the real
        // affine type must be separated by the conic classification itself.
        try {
            ConicType t1 = conic_type(implicit_equation_any(c1));
            ConicType t2 = conic_type(implicit_equation_any(c2));
            d.trace.push_back(std::string("first conic type: ") + conic_type_name(t1));
            d.trace.push_back(std::string("second conic type: ") + conic_type_name(t2));
            d.verdict =
                t1 == t2 ? Equivalence::Equivalent : Equivalence::NotEquivalent;
            return d;
        } catch (const std::invalid_argument&) {
            d.verdict = Equivalence::NotEquivalent;
            d.trace.push_back("conic-class input without a single quadratic defining "
                              "polynomial; treated as inequivalent");
            return d;
        }
    }

    SignatureMap m1 = sigmap_any(c1, g), m2 = sigmap_any(c2, g);
    SignatureObject s1 = implicit_signature(m1, opt), s2 = implicit_signature(m2, opt);
    d.trace.push_back("first signature: " + s1.str());
    d.trace.push_back("second signature: " + s2.str());

    Equivalence r = signatures_equal(s1, s2);
    if (r == Equivalence::EquivalentOverComplexOnly) {
        if (real_witness(m1, m2, opt, d.trace) || real_witness(m2, m1, opt, d.trace))
            r = Equivalence::Equivalent;
        else
            d.trace.push_back("signatures agree as complex curves, but no real signature "
                              "correspondence was certified");
    }
    d.verdict = r;
    return d;
}

} // namespace projsig
