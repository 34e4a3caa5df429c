#include "projsig/poly.hpp"

#include <sstream>

namespace projsig {

void Poly::add_term(const Mono& m, const Rat& c) {
    if (c == 0) return;
    auto [it, fresh] = terms_.try_emplace(m, c);
    if (!fresh) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

Poly& Poly::operator+=(const Poly& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
}

Poly& Poly::operator-=(const Poly& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return Poly();
    // Iterate the smaller operand outside; accumulate into a builder map.
    const Poly& outer = a.term_count() <= b.term_count() ? a : b;
    const Poly& inner = a.term_count() <= b.term_count() ? b : a;
    PolyBuilder acc;
    for (const auto& [ma, ca] : outer.terms())
        for (const auto& [mb, cb] : inner.terms())
            acc.add_product(ma, ca, mb, cb);
    return acc.take();
}

Poly& Poly::mul_scalar(const Rat& k) {
    if (k == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& [m, c] : terms_) c *= k;
    return *this;
}

Poly Poly::pow(unsigned n) const {
    Poly r(1L);
    Poly base = *this;
    while (n) {
        if (n & 1) r *= base;
        n >>= 1;
        if (n) base *= base;
    }
    return r;
}

Poly Poly::derivative(Sym v) const {
    const std::size_t i = idx(v);
    Poly r;
    for (const auto& [m, c] : terms_) {
        if (m.e[i] == 0) continue;
        Mono d = m;
        d.e[i] -= 1;
        r.add_term(d, c * Rat(long(m.e[i])));
    }
    return r;
}

std::map<int, Poly> Poly::coeffs_in(Sym v) const {
    const std::size_t i = idx(v);
    std::map<int, Poly> out;
    for (const auto& [m, c] : terms_) {
        Mono rest = m;
        int k = rest.e[i];
        rest.e[i] = 0;
        out[k].add_term(rest, c);
    }
    return out;
}

Poly Poly::from_coeffs_in(Sym v, const std::map<int, Poly>& coeffs) {
    const std::size_t i = idx(v);
    Poly r;
    for (const auto& [k, p] : coeffs)
        for (const auto& [m, c] : p.terms()) {
            Mono m2 = m;
            m2.e[i] = static_cast<uint16_t>(m2.e[i] + k);
            r.add_term(m2, c);
        }
    return r;
}

Poly Poly::coeff_of(Sym v, int k) const {
    const std::size_t i = idx(v);
    Poly r;
    for (const auto& [m, c] : terms_) {
        if (int(m.e[i]) != k) continue;
        Mono rest = m;
        rest.e[i] = 0;
        r.add_term(rest, c);
    }
    return r;
}

Poly Poly::subst(Sym v, const Rat& value) const {
    const std::size_t i = idx(v);
    Poly r;
    std::map<unsigned, Rat> powers; // value^k cache
    powers[0] = 1;
    for (const auto& [m, c] : terms_) {
        unsigned k = m.e[i];
        auto it = powers.find(k);
        if (it == powers.end()) {
            Rat p = powers.rbegin()->second;
            for (unsigned j = powers.rbegin()->first; j < k; ++j) p *= value;
            it = powers.emplace(k, p).first;
        }
        Mono rest = m;
        rest.e[i] = 0;
        r.add_term(rest, c * it->second);
    }
    return r;
}

Poly Poly::subst_poly(Sym v, const Poly& replacement) const {
    if (!depends_on(v)) return *this;
    auto cs = coeffs_in(v);
    int dmax = cs.rbegin()->first;
    Poly r; // Horner from the top coefficient down
    for (int k = dmax; k >= 0; --k) {
        r = r * replacement;
        auto it = cs.find(k);
        if (it != cs.end()) r += it->second;
    }
    return r;
}

Rat Poly::eval(const std::map<Sym, Rat>& point) const {
    Rat total(0);
    for (const auto& [m, c] : terms_) {
        Rat v = c;
        for (std::size_t i = 0; i < NVARS; ++i) {
            for (unsigned k = 0; k < m.e[i]; ++k) {
                auto it = point.find(static_cast<Sym>(i));
                if (it == point.end())
                    throw std::domain_error("eval: unbound symbol " + std::string(name(static_cast<Sym>(i))));
                v *= it->second;
            }
        }
        total += v;
    }
    return total;
}

Rat Poly::content() const {
    if (terms_.empty()) return Rat(0);
    // gcd of numerators over lcm of denominators, signed by the leading term.
    Int num_gcd(0), den_lcm(1);
    for (const auto& [m, c] : terms_) {
        mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), c.get_num().get_mpz_t());
        mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.get_den().get_mpz_t());
    }
    Rat cont = rat(num_gcd, den_lcm);
    if (sign(leading_coeff()) < 0) cont = -cont;
    return cont;
}

Poly Poly::primitive_part() const {
    if (terms_.empty()) return Poly();
    Rat cont = content();
    Poly r = *this;
    Rat inv = Rat(1) / cont;
    for (auto& [m, c] : r.terms_) c *= inv;
    return r;
}

Poly Poly::normalized_sign() const { return primitive_part(); }

std::string Poly::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream out;
    bool first = true;
    // Descending graded lex.
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const auto& [m, c] = *it;
        Rat a = c;
        if (first) {
            if (sign(a) < 0) {
                out << "-";
                a = -a;
            }
        } else {
            out << (sign(a) < 0 ? " - " : " + ");
            if (sign(a) < 0) a = -a;
        }
        first = false;
        bool has_vars = m.total() > 0;
        bool coeff_shown = (a != 1) || !has_vars;
        if (coeff_shown) out << to_string(a);
        bool lead = !coeff_shown;
        for (std::size_t i = 0; i < NVARS; ++i) {
            if (m.e[i] == 0) continue;
            if (!lead) out << "*";
            lead = false;
            out << name(static_cast<Sym>(i));
            if (m.e[i] > 1) out << "^" << m.e[i];
        }
    }
    return out.str();
}

void PolyBuilder::add_product(const Mono& ma, const Rat& ca, const Mono& mb, const Rat& cb) {
    Mono m;
    for (std::size_t i = 0; i < NVARS; ++i)
        m.e[i] = static_cast<uint16_t>(ma.e[i] + mb.e[i]);
    add(m, ca * cb);
}

Poly PolyBuilder::take() {
    Poly p;
    p.terms_ = std::move(acc_);
    acc_.clear();
    return p;
}

} // namespace projsig
