#pragma once

#include "projsig/polyops.hpp"

#include <map>
#include <optional>
#include <stdexcept>
#include <string>

namespace projsig {

// Exact rational function num/den over Q[symbols].
// Invariants: den is never the zero polynomial; gcd(num, den) is constant;
// den is integer-primitive with positive graded-lex leading coefficient.
// Under these the representation is unique, so operator== is semantic equality.
class RatFun {
public:
    RatFun() : den_(Poly(1L)) {}
    explicit RatFun(Poly p) : num_(std::move(p)), den_(Poly(1L)) {}
    explicit RatFun(const Rat& c) : num_(Poly(c)), den_(Poly(1L)) {}
    explicit RatFun(long c) : num_(Poly(c)), den_(Poly(1L)) {}
    RatFun(const Poly& n, const Poly& d); // reduces

    static RatFun variable(Sym v) { return RatFun(Poly::variable(v)); }

    // Fraction the caller certifies is already fully cancelled; skips the
    // gcd step of reduction (denominator normalization still applies).
    // Only for pairs whose coprimality is established, e.g. via a prior
    // poly_gcd check on their bases.
    static RatFun from_coprime(Poly n, Poly d);

    const Poly& num() const { return num_; }
    const Poly& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_polynomial() const { return den_.is_constant(); }
    bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
    Rat constant_value() const { return num_.constant_value() / den_.constant_value(); }
    bool depends_on(Sym v) const { return num_.depends_on(v) || den_.depends_on(v); }

    RatFun operator-() const;
    friend RatFun operator+(const RatFun& a, const RatFun& b);
    friend RatFun operator-(const RatFun& a, const RatFun& b);
    friend RatFun operator*(const RatFun& a, const RatFun& b);
    friend RatFun operator/(const RatFun& a, const RatFun& b); // throws on /0
    RatFun& operator+=(const RatFun& o) { return *this = *this + o; }
    RatFun& operator-=(const RatFun& o) { return *this = *this - o; }
    RatFun& operator*=(const RatFun& o) { return *this = *this * o; }
    RatFun& operator/=(const RatFun& o) { return *this = *this / o; }
    bool operator==(const RatFun& o) const { return num_ == o.num_ && den_ == o.den_; }

    RatFun derivative(Sym v) const;

    // Substitutions. subst throws domain_error when the point is a pole of
    // the written denominator; eval returns nullopt there instead.
    RatFun subst(Sym v, const Rat& value) const;
    RatFun subst_ratfun(Sym v, const RatFun& r) const;
    std::optional<Rat> eval(const std::map<Sym, Rat>& point) const;

    std::string str() const;

private:
    Poly num_, den_;
    void reduce();
    void normalize_den();
};

// p with v := u/w substituted and the result cleared by w^deg_v(p).
Poly subst_fraction(const Poly& p, Sym v, const Poly& u, const Poly& w);

} // namespace projsig
