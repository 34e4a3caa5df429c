#pragma once

#include "projsig/rat.hpp"
#include "projsig/symbols.hpp"

#include <array>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace projsig {

// Exponent vector over the global symbol table.
struct Mono {
    std::array<uint16_t, NVARS> e{};

    unsigned total() const {
        unsigned d = 0;
        for (auto k : e) d += k;
        return d;
    }
    bool operator==(const Mono&) const = default;
};

// Graded lexicographic order: total degree first, ties broken by the symbol
// table order (earlier symbols weigh more).
struct GrlexLess {
    bool operator()(const Mono& a, const Mono& b) const {
        unsigned da = a.total(), db = b.total();
        if (da != db) return da < db;
        for (std::size_t i = 0; i < NVARS; ++i)
            if (a.e[i] != b.e[i]) return a.e[i] < b.e[i];
        return false;
    }
};

// Sparse multivariate polynomial over Rat.
// Invariants: no stored term has a zero coefficient; the zero polynomial has
// an empty term map. Canonical printing is by descending graded lex.
class Poly {
public:
    using Terms = std::map<Mono, Rat, GrlexLess>;

    Poly() = default;
    explicit Poly(const Rat& c) {
        if (c != 0) terms_[Mono{}] = c;
    }
    explicit Poly(long c) : Poly(Rat(c)) {}

    static Poly variable(Sym v, unsigned power = 1) {
        Poly p;
        if (power == 0) return Poly(1L);
        Mono m;
        m.e[idx(v)] = static_cast<uint16_t>(power);
        p.terms_[m] = 1;
        return p;
    }
    static Poly term(const Rat& c, const Mono& m) {
        Poly p;
        if (c != 0) p.terms_[m] = c;
        return p;
    }

    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const {
        return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == Mono{});
    }
    Rat constant_value() const {
        if (terms_.empty()) return Rat(0);
        if (!is_constant()) throw std::domain_error("constant_value: non-constant");
        return terms_.begin()->second;
    }
    std::size_t term_count() const { return terms_.size(); }

    int degree(Sym v) const {
        int d = -1;
        for (const auto& [m, c] : terms_) d = std::max(d, int(m.e[idx(v)]));
        return d; // -1 for the zero polynomial
    }
    int total_degree() const {
        int d = -1;
        for (const auto& [m, c] : terms_) d = std::max(d, int(m.total()));
        return d;
    }
    bool depends_on(Sym v) const { return degree(v) > 0; }
    std::vector<Sym> variables() const {
        std::vector<Sym> out;
        for (std::size_t i = 0; i < NVARS; ++i) {
            Sym v = static_cast<Sym>(i);
            if (depends_on(v)) out.push_back(v);
        }
        return out;
    }

    // Leading data in graded lex.
    const Mono& leading_mono() const {
        if (terms_.empty()) throw std::domain_error("leading_mono: zero polynomial");
        return terms_.rbegin()->first;
    }
    const Rat& leading_coeff() const {
        if (terms_.empty()) throw std::domain_error("leading_coeff: zero polynomial");
        return terms_.rbegin()->second;
    }

    Poly operator-() const {
        Poly r = *this;
        for (auto& [m, c] : r.terms_) c = -c;
        return r;
    }
    Poly& operator+=(const Poly& o);
    Poly& operator-=(const Poly& o);
    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator*(const Poly& a, const Poly& b);
    Poly& operator*=(const Poly& o) { return *this = *this * o; }
    Poly& mul_scalar(const Rat& k);
    friend Poly operator*(const Rat& k, Poly p) { return p.mul_scalar(k); }
    friend Poly operator*(Poly p, const Rat& k) { return p.mul_scalar(k); }
    bool operator==(const Poly& o) const { return terms_ == o.terms_; }

    Poly pow(unsigned n) const;
    Poly derivative(Sym v) const;

    // Univariate view in v: degree -> coefficient polynomial (v-free).
    std::map<int, Poly> coeffs_in(Sym v) const;
    static Poly from_coeffs_in(Sym v, const std::map<int, Poly>& coeffs);
    Poly coeff_of(Sym v, int k) const;

    // Substitution. subst_poly uses Horner in v and may be expensive for
    // large replacements; eval_rat is exact evaluation at a rational point.
    Poly subst(Sym v, const Rat& value) const;
    Poly subst_poly(Sym v, const Poly& replacement) const;
    Rat eval(const std::map<Sym, Rat>& point) const;

    // Canonical normalization: integer-primitive with positive graded-lex
    // leading coefficient. content() returns the rational cont with
    // *this == cont * primitive_part() (zero polynomial: cont = 0).
    Rat content() const;
    Poly primitive_part() const;
    Poly normalized_sign() const; // primitive part with positive leading coeff

    std::string str() const; // canonical text, e.g. "3*x^2*y - 1/2"

private:
    Terms terms_;
    void add_term(const Mono& m, const Rat& c);
    friend class PolyBuilder;
};

// Accumulates terms without intermediate normalization; used by hot loops.
class PolyBuilder {
public:
    void add(const Mono& m, const Rat& c) {
        if (c == 0) return;
        auto [it, fresh] = acc_.try_emplace(m, c);
        if (!fresh) {
            it->second += c;
            if (it->second == 0) acc_.erase(it);
        }
    }
    void add_product(const Mono& ma, const Rat& ca, const Mono& mb, const Rat& cb);
    Poly take();

private:
    Poly::Terms acc_;
};

} // namespace projsig
