#include "projsig/ratfun.hpp"

namespace projsig {

RatFun::RatFun(const Poly& n, const Poly& d) : num_(n), den_(d) {
    if (den_.is_zero()) throw std::domain_error("RatFun: zero denominator");
    reduce();
}

void RatFun::reduce() {
    if (!num_.is_zero() && !den_.is_constant()) {
        Poly g = poly_gcd(num_, den_);
        if (!g.is_constant()) {
            num_ = *divide_exact(num_, g);
            den_ = *divide_exact(den_, g);
        }
    }
    normalize_den();
}

void RatFun::normalize_den() {
    if (num_.is_zero()) {
        den_ = Poly(1L);
        return;
    }
    Rat cd = den_.content();
    if (cd != 1) {
        Rat inv = Rat(1) / cd;
        num_ = num_ * inv;
        den_ = den_ * inv;
    }
}

RatFun RatFun::from_coprime(Poly n, Poly d) {
    if (d.is_zero()) throw std::domain_error("RatFun: zero denominator");
    RatFun r;
    r.num_ = std::move(n);
    r.den_ = std::move(d);
    r.normalize_den();
    return r;
}

RatFun RatFun::operator-() const {
    RatFun r = *this;
    r.num_ = -r.num_;
    return r;
}

RatFun operator+(const RatFun& a, const RatFun& b) {
    return RatFun(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

RatFun operator-(const RatFun& a, const RatFun& b) {
    return RatFun(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
}

RatFun operator*(const RatFun& a, const RatFun& b) {
    return RatFun(a.num_ * b.num_, a.den_ * b.den_);
}

RatFun operator/(const RatFun& a, const RatFun& b) {
    if (b.is_zero()) throw std::domain_error("RatFun: division by zero");
    return RatFun(a.num_ * b.den_, a.den_ * b.num_);
}

RatFun RatFun::derivative(Sym v) const {
    return RatFun(num_.derivative(v) * den_ - num_ * den_.derivative(v), den_ * den_);
}

RatFun RatFun::subst(Sym v, const Rat& value) const {
    Poly d = den_.subst(v, value);
    if (d.is_zero()) throw std::domain_error("RatFun::subst: pole");
    return RatFun(num_.subst(v, value), d);
}

RatFun RatFun::subst_ratfun(Sym v, const RatFun& r) const {
    if (!depends_on(v)) return *this;
    int dn = std::max(num_.degree(v), 0), dd = std::max(den_.degree(v), 0);
    int m = std::max(dn, dd);
    Poly n2 = subst_fraction(num_, v, r.num_, r.den_) * r.den_.pow(unsigned(m - dn));
    Poly d2 = subst_fraction(den_, v, r.num_, r.den_) * r.den_.pow(unsigned(m - dd));
    if (d2.is_zero()) throw std::domain_error("RatFun::subst_ratfun: degenerate composition");
    return RatFun(n2, d2);
}

std::optional<Rat> RatFun::eval(const std::map<Sym, Rat>& point) const {
    Rat d = den_.eval(point);
    if (d == 0) return std::nullopt;
    return num_.eval(point) / d;
}

std::string RatFun::str() const {
    if (den_ == Poly(1L)) return num_.str();
    std::string n = num_.str(), d = den_.str();
    if (num_.term_count() > 1) n = "(" + n + ")";
    if (den_.term_count() > 1) d = "(" + d + ")";
    return n + " / " + d;
}

Poly subst_fraction(const Poly& p, Sym v, const Poly& u, const Poly& w) {
    if (!p.depends_on(v)) return p;
    auto cs = p.coeffs_in(v);
    int d = cs.rbegin()->first;
    // Horner: result = sum c_k u^k w^(d-k).
    Poly r;
    for (int k = d; k >= 0; --k) {
        r = r * u;
        auto it = cs.find(k);
        if (it != cs.end()) r += it->second * w.pow(unsigned(d - k));
    }
    return r;
}

} // namespace projsig
