#include "projsig/chain.hpp"

#include <mpfr.h>

#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>
#include <vector>

namespace projsig {

namespace {

// ---------------------------------------------------------------------------
// Minimal RAII wrapper around mpfr_t. Arithmetic inherits the precision of
// the left operand; every value in one chain evaluation shares one precision.
// ---------------------------------------------------------------------------

class Mp {
public:
    explicit Mp(mpfr_prec_t prec) {
        mpfr_init2(v_, prec);
        mpfr_set_ui(v_, 0, MPFR_RNDN);
    }
    Mp(const Mp& o) {
        mpfr_init2(v_, mpfr_get_prec(o.v_));
        mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    Mp(Mp&& o) noexcept {
        mpfr_init2(v_, mpfr_get_prec(o.v_));
        mpfr_swap(v_, o.v_);
    }
    Mp& operator=(Mp o) noexcept {
        mpfr_swap(v_, o.v_);
        return *this;
    }
    ~Mp() { mpfr_clear(v_); }

    mpfr_ptr raw() { return v_; }
    mpfr_srcptr raw() const { return v_; }
    mpfr_prec_t prec() const { return mpfr_get_prec(v_); }

    static Mp from_rat(const Rat& q, mpfr_prec_t prec) {
        Mp r(prec);
        mpfr_set_q(r.v_, q.get_mpq_t(), MPFR_RNDN);
        return r;
    }
    static Mp from_long(long n, mpfr_prec_t prec) {
        Mp r(prec);
        mpfr_set_si(r.v_, n, MPFR_RNDN);
        return r;
    }

    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
    bool exactly_zero() const { return mpfr_zero_p(v_) != 0; }
    int sign() const { return mpfr_sgn(v_); }

    // True when the value is zero or so tiny relative to the working
    // precision that it can only be accumulated rounding noise from an
    // exact-rational computation (exact inputs, ~20 arithmetic stages).
    bool negligible() const {
        if (exactly_zero()) return true;
        if (!mpfr_number_p(v_)) return true;
        return mpfr_get_exp(v_) < -(3 * static_cast<long>(prec()) / 4);
    }

    friend Mp operator+(const Mp& a, const Mp& b) {
        Mp r(a.prec());
        mpfr_add(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }
    friend Mp operator-(const Mp& a, const Mp& b) {
        Mp r(a.prec());
        mpfr_sub(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }
    friend Mp operator*(const Mp& a, const Mp& b) {
        Mp r(a.prec());
        mpfr_mul(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }
    friend Mp operator/(const Mp& a, const Mp& b) {
        Mp r(a.prec());
        mpfr_div(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }
    friend Mp operator-(const Mp& a) {
        Mp r(a.prec());
        mpfr_neg(r.v_, a.v_, MPFR_RNDN);
        return r;
    }
    Mp mul_long(long n) const {
        Mp r(prec());
        mpfr_mul_si(r.v_, v_, n, MPFR_RNDN);
        return r;
    }
    Mp div_long(long n) const {
        Mp r(prec());
        mpfr_div_si(r.v_, v_, n, MPFR_RNDN);
        return r;
    }

private:
    mpfr_t v_;
};

// Real branch of c^(pn/pd) for pd in {1,2,3,...}: odd pd admits negative c
// via the real root; even pd requires c > 0.
Mp scalar_rpow(const Mp& c, long pn, unsigned long pd) {
    if (c.negligible())
        throw std::domain_error("chain: fractional power of vanishing value");
    bool neg = c.sign() < 0;
    if (neg && pd % 2 == 0)
        throw std::domain_error("chain: even root of negative value");
    Mp a(c.prec());
    mpfr_abs(a.raw(), c.raw(), MPFR_RNDN);
    Mp root(c.prec());
    mpfr_rootn_ui(root.raw(), a.raw(), pd, MPFR_RNDN);
    Mp out(c.prec());
    mpfr_pow_si(out.raw(), root.raw(), pn, MPFR_RNDN);
    if (neg && pn % 2 != 0) out = -out;
    return out;
}

// ---------------------------------------------------------------------------
// Truncated Taylor series with ORD coefficients: f = sum c[i] (t - t0)^i.
// Enough orders for the deepest quantity (eight derivations past the curve
// map) with headroom.
// ---------------------------------------------------------------------------

constexpr int ORD = 14;

struct Ser {
    std::vector<Mp> c;

    explicit Ser(mpfr_prec_t prec) : c(ORD, Mp(prec)) {}

    mpfr_prec_t prec() const { return c[0].prec(); }
    const Mp& lead() const { return c[0]; }
};

Ser ser_const(const Mp& v) {
    Ser r(v.prec());
    r.c[0] = v;
    return r;
}

// The identity map t, expanded at t0: t0 + (t - t0).
Ser ser_var(const Mp& t0) {
    Ser r(t0.prec());
    r.c[0] = t0;
    r.c[1] = Mp::from_long(1, t0.prec());
    return r;
}

Ser operator+(const Ser& a, const Ser& b) {
    Ser r(a.prec());
    for (int i = 0; i < ORD; ++i) r.c[i] = a.c[i] + b.c[i];
    return r;
}

Ser operator-(const Ser& a, const Ser& b) {
    Ser r(a.prec());
    for (int i = 0; i < ORD; ++i) r.c[i] = a.c[i] - b.c[i];
    return r;
}

Ser operator*(const Ser& a, const Ser& b) {
    Ser r(a.prec());
    for (int i = 0; i < ORD; ++i)
        for (int j = 0; i + j < ORD; ++j) r.c[i + j] = r.c[i + j] + a.c[i] * b.c[j];
    return r;
}

Ser smul(const Ser& a, long n) {
    Ser r(a.prec());
    for (int i = 0; i < ORD; ++i) r.c[i] = a.c[i].mul_long(n);
    return r;
}

// Derivative with respect to the expansion variable. Loses one valid order;
// ORD leaves enough slack that all consumed orders stay meaningful.
Ser dser(const Ser& a) {
    Ser r(a.prec());
    for (int i = 1; i < ORD; ++i) r.c[i - 1] = a.c[i].mul_long(i);
    return r;
}

Ser inv(const Ser& a) {
    if (a.c[0].negligible()) throw std::domain_error("chain: division by vanishing series");
    Ser r(a.prec());
    Mp inv0 = Mp::from_long(1, a.prec()) / a.c[0];
    r.c[0] = inv0;
    for (int i = 1; i < ORD; ++i) {
        Mp acc(a.prec());
        for (int j = 1; j <= i; ++j) acc = acc + a.c[j] * r.c[i - j];
        r.c[i] = -(inv0 * acc);
    }
    return r;
}

Ser operator/(const Ser& a, const Ser& b) { return a * inv(b); }

// Real branch of a^(pn/pd) via the standard recurrence for u^p with
// u = a / a[0]: i * r[i] = sum_{j=1..i} (p*j - (i-j)) u[j] r[i-j].
Ser rpow(const Ser& a, long pn, unsigned long pd) {
    Mp lead_pow = scalar_rpow(a.c[0], pn, pd);
    Mp inv0 = Mp::from_long(1, a.prec()) / a.c[0];
    std::vector<Mp> u(ORD, Mp(a.prec()));
    for (int i = 0; i < ORD; ++i) u[i] = a.c[i] * inv0;

    Mp p = Mp::from_long(pn, a.prec()).div_long(static_cast<long>(pd));
    std::vector<Mp> r(ORD, Mp(a.prec()));
    r[0] = Mp::from_long(1, a.prec());
    for (int i = 1; i < ORD; ++i) {
        Mp acc(a.prec());
        for (int j = 1; j <= i; ++j) {
            Mp factor = p.mul_long(j) - Mp::from_long(i - j, a.prec());
            acc = acc + factor * u[j] * r[i - j];
        }
        r[i] = acc.div_long(i);
    }
    Ser out(a.prec());
    for (int i = 0; i < ORD; ++i) out.c[i] = lead_pow * r[i];
    return out;
}

// Evaluates a univariate polynomial (ascending rational coefficients) on a
// series by Horner's scheme.
Ser polyser(const std::vector<Rat>& coeffs, const Ser& ts) {
    Ser acc(ts.prec());
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it)
        acc = acc * ts + ser_const(Mp::from_rat(*it, ts.prec()));
    return acc;
}

std::vector<Rat> ascending_coeffs(const Poly& p, Sym var) {
    std::vector<Rat> out(static_cast<size_t>(p.degree(var)) + 1, Rat(0));
    for (const auto& [k, coef] : p.coeffs_in(var)) {
        if (!coef.is_constant())
            throw std::domain_error("chain: curve component depends on extra symbols");
        out[static_cast<size_t>(k)] = coef.constant_value();
    }
    return out;
}

// d/d(w-arclength) of u, where w is the series of the speed of the
// underlying parameter with respect to that arclength: du/dw = u' / w.
Ser ddt_per(const Ser& u, const Ser& w) { return dser(u) / w; }

} // namespace

ChainValues chain_invariants(const PlanarParametricCurve& c, const Rat& t0,
                             ChainDepth depth, int precision_bits) {
    if (precision_bits < 64 || precision_bits > 16384)
        throw std::invalid_argument("chain_invariants: precision out of range");
    const mpfr_prec_t prec = precision_bits;
    const Sym t = c.param();

    Ser ts = ser_var(Mp::from_rat(t0, prec));
    Ser xs = polyser(ascending_coeffs(c.x().num(), t), ts) /
             polyser(ascending_coeffs(c.x().den(), t), ts);
    Ser ys = polyser(ascending_coeffs(c.y().num(), t), ts) /
             polyser(ascending_coeffs(c.y().den(), t), ts);

    Ser xd = dser(xs), yd = dser(ys);
    Ser speed2 = xd * xd + yd * yd;
    // sigma: speed of t with respect to Euclidean arc length.
    Ser sigma = rpow(speed2, 1, 2);

    // Euclidean curvature kappa = (y'' x' - x'' y') / (x'^2 + y'^2)^(3/2).
    Ser kap = (dser(yd) * xd - dser(xd) * yd) / rpow(speed2, 3, 2);

    ChainValues out;
    double nan = std::numeric_limits<double>::quiet_NaN();
    out.kappa = kap.lead().to_double();
    out.mu = nan;
    out.k_affine = out.t_affine = out.k_projective = out.t_projective = nan;

    // Equi-affine curvature mu = (3 kappa (kappa_ss + 3 kappa^3) - 5 kappa_s^2)
    //                            / (9 kappa^(8/3)).
    Ser kap_s = ddt_per(kap, sigma);
    Ser kap_ss = ddt_per(kap_s, sigma);
    Ser kap3 = kap * kap * kap;
    Ser mu = (smul(kap * (kap_ss + smul(kap3, 3)), 3) - smul(kap_s * kap_s, 5)) /
             rpow(kap, 8, 3);
    for (int i = 0; i < ORD; ++i) mu.c[i] = mu.c[i].div_long(9);
    out.mu = mu.lead().to_double();
    if (depth == ChainDepth::Curvature) return out;

    // alpha' = kappa^(1/3) sigma: speed of t with respect to equi-affine arc
    // length; derivations by alpha use it as the ddt_per weight.
    Ser alpha_d = rpow(kap, 1, 3) * sigma;
    Ser mu_a = ddt_per(mu, alpha_d);
    Ser mu_aa = ddt_per(mu_a, alpha_d);

    out.k_affine = ((mu_a * mu_a) / (mu * mu * mu)).lead().to_double();
    out.t_affine = (mu_aa / smul(mu * mu, 3)).lead().to_double();
    if (depth == ChainDepth::Affine) return out;

    // eta = (6 mu_aaa mu_a - 7 mu_aa^2 - 9 mu_a^2 mu) / (6 mu_a^(8/3)),
    // rho' = mu_a^(1/3) alpha'; the projective pair is eta^3 and d(eta)/d(rho).
    Ser mu_aaa = ddt_per(mu_aa, alpha_d);
    Ser eta = (smul(mu_aaa * mu_a, 6) - smul(mu_aa * mu_aa, 7) -
               smul(mu_a * mu_a * mu, 9)) /
              smul(rpow(mu_a, 8, 3), 6);
    Ser rho_d = rpow(mu_a, 1, 3) * alpha_d;

    out.k_projective = (eta * eta * eta).lead().to_double();
    out.t_projective = ddt_per(eta, rho_d).lead().to_double();
    return out;
}

} // namespace projsig
