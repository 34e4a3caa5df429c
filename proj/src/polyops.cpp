#include "projsig/polyops.hpp"

#include <algorithm>
#include <cassert>
#include <deque>

namespace projsig {

std::optional<Poly> divide_exact(const Poly& f, const Poly& g) {
    if (g.is_zero()) return std::nullopt;
    if (f.is_zero()) return Poly();
    Poly r = f, q;
    const Mono& gm = g.leading_mono();
    const Rat& gc = g.leading_coeff();
    while (!r.is_zero()) {
        const Mono& rm = r.leading_mono();
        Mono d;
        for (std::size_t i = 0; i < NVARS; ++i) {
            if (rm.e[i] < gm.e[i]) return std::nullopt;
            d.e[i] = static_cast<uint16_t>(rm.e[i] - gm.e[i]);
        }
        Poly t = Poly::term(r.leading_coeff() / gc, d);
        q += t;
        r -= t * g;
    }
    return q;
}

std::pair<Poly, unsigned> strip_factor(Poly f, const Poly& g) {
    unsigned e = 0;
    if (g.is_constant()) return {std::move(f), 0};
    while (!f.is_zero()) {
        auto q = divide_exact(f, g);
        if (!q) break;
        f = std::move(*q);
        ++e;
    }
    return {std::move(f), e};
}

std::pair<Poly, Poly> pseudo_divide(const Poly& f, const Poly& g, Sym v) {
    int n = g.degree(v);
    if (n < 0) throw DegenerateInput("pseudo_divide: zero divisor");
    int m = f.degree(v);
    if (m < n) {
        // lc^(m-n+1) with negative exponent is taken as multiplier 1.
        return {Poly(), f};
    }
    Poly lc_g = g.coeff_of(v, n);
    Poly r = f, q;
    int steps_left = m - n + 1;
    while (!r.is_zero() && r.degree(v) >= n) {
        int d = r.degree(v);
        Poly lr = r.coeff_of(v, d);
        Poly shift = Poly::variable(v, unsigned(d - n));
        q = q * lc_g + lr * shift;
        r = r * lc_g - lr * shift * g;
        --steps_left;
    }
    // Pad so that lc_g^(m-n+1) * f = q*g + r holds exactly.
    for (; steps_left > 0; --steps_left) {
        q = q * lc_g;
        r = r * lc_g;
    }
    return {q, r};
}

Poly prem(const Poly& f, const Poly& g, Sym v) { return pseudo_divide(f, g, v).second; }

Poly content_in(const Poly& f, Sym v) {
    Poly c;
    for (const auto& [k, coeff] : f.coeffs_in(v)) {
        c = poly_gcd(c, coeff);
        if (!c.is_zero() && c.is_constant()) break;
    }
    return c;
}

namespace {

// Primitive PRS on polynomials already primitive with respect to v.
Poly gcd_primitive_prs(Poly A, Poly B, Sym v) {
    if (A.degree(v) < B.degree(v)) std::swap(A, B);
    while (true) {
        if (B.is_zero()) return A;
        if (B.degree(v) == 0) return Poly(1L);
        Poly r = prem(A, B, v);
        if (!r.is_zero()) {
            Poly cont = content_in(r, v);
            r = *divide_exact(r, cont);
            r = r.primitive_part();
        }
        A = std::move(B);
        B = std::move(r);
    }
}

} // namespace

Poly poly_gcd(const Poly& f, const Poly& g) {
    if (f.is_zero()) return g.is_zero() ? Poly() : g.normalized_sign();
    if (g.is_zero()) return f.normalized_sign();
    if (f.is_constant() || g.is_constant()) return Poly(1L);

    // Main variable: present in both if possible, else recurse on content.
    auto vf = f.variables(), vg = g.variables();
    Sym v = vf.front();
    bool shared = false;
    for (Sym a : vf)
        for (Sym b : vg)
            if (a == b) {
                v = a;
                shared = true;
                goto found;
            }
found:
    if (!shared) {
        // No common variable: gcd divides the coefficients of either side.
        return poly_gcd(content_in(f, vf.front()), g);
    }
    Poly cf = content_in(f, v), cg = content_in(g, v);
    Poly fp = *divide_exact(f, cf), gp = *divide_exact(g, cg);
    Poly c = poly_gcd(cf, cg);
    Poly h = gcd_primitive_prs(fp.primitive_part(), gp.primitive_part(), v);
    if (!h.is_constant()) {
        Poly hc = content_in(h, v);
        h = *divide_exact(h, hc);
    }
    return (c * h).normalized_sign();
}

Poly resultant(const Poly& f, const Poly& g, Sym v) {
    if (f.is_zero() || g.is_zero()) throw DegenerateInput("resultant: zero input");
    int m = f.degree(v), n = g.degree(v);
    if (m == 0 && n == 0) return Poly(1L);
    if (m == 0) return f.pow(unsigned(n));
    if (n == 0) return g.pow(unsigned(m));

    Poly A = f, B = g;
    int sign_flip = 1;
    if (m < n) {
        std::swap(A, B);
        if ((m & 1) && (n & 1)) sign_flip = -sign_flip;
    }
    Poly gcoef(1L), h(1L);
    while (true) {
        int dA = A.degree(v), dB = B.degree(v);
        int delta = dA - dB;
        if ((dA & 1) && (dB & 1)) sign_flip = -sign_flip;
        Poly R = prem(A, B, v);
        if (R.is_zero()) return Poly(); // positive-degree common factor
        A = std::move(B);
        Poly denom = gcoef * h.pow(unsigned(delta));
        auto Bq = divide_exact(R, denom);
        assert(Bq && "subresultant PRS: inexact division");
        B = std::move(*Bq);
        gcoef = A.coeff_of(v, A.degree(v));
        if (delta > 0) {
            auto hq = divide_exact(gcoef.pow(unsigned(delta)), h.pow(unsigned(delta - 1)));
            assert(hq && "subresultant PRS: inexact h update");
            h = std::move(*hq);
        }
        if (B.degree(v) == 0) {
            int d = A.degree(v);
            Poly res = B.pow(unsigned(d));
            if (d > 1) {
                auto rq = divide_exact(res, h.pow(unsigned(d - 1)));
                assert(rq && "subresultant PRS: inexact final division");
                res = std::move(*rq);
            }
            if (sign_flip < 0) res = -res;
            return res;
        }
    }
}

Poly resultant_sylvester(const Poly& f, const Poly& g, Sym v) {
    if (f.is_zero() || g.is_zero()) throw DegenerateInput("resultant: zero input");
    int m = f.degree(v), n = g.degree(v);
    if (m == 0 && n == 0) return Poly(1L);
    if (m == 0) return f.pow(unsigned(n));
    if (n == 0) return g.pow(unsigned(m));
    int size = m + n;
    std::vector<std::vector<Poly>> a(size, std::vector<Poly>(size));
    for (int r = 0; r < n; ++r)
        for (int k = 0; k <= m; ++k) a[r][r + m - k] = f.coeff_of(v, k);
    for (int r = 0; r < m; ++r)
        for (int k = 0; k <= n; ++k) a[n + r][r + n - k] = g.coeff_of(v, k);
    // Bareiss fraction-free elimination.
    Poly prev(1L);
    int sgn = 1;
    for (int k = 0; k + 1 < size; ++k) {
        if (a[k][k].is_zero()) {
            int p = -1;
            for (int r = k + 1; r < size; ++r)
                if (!a[r][k].is_zero()) {
                    p = r;
                    break;
                }
            if (p < 0) return Poly();
            std::swap(a[k], a[p]);
            sgn = -sgn;
        }
        for (int i = k + 1; i < size; ++i)
            for (int j = k + 1; j < size; ++j) {
                Poly num = a[k][k] * a[i][j] - a[i][k] * a[k][j];
                auto q = divide_exact(num, prev);
                assert(q && "Bareiss: inexact division");
                a[i][j] = std::move(*q);
            }
        for (int i = k + 1; i < size; ++i) a[i][k] = Poly();
        prev = a[k][k];
    }
    Poly det = a[size - 1][size - 1];
    if (sgn < 0) det = -det;
    return det;
}

Poly squarefree_part(const Poly& f) {
    if (f.is_zero()) return Poly();
    if (f.is_constant()) return Poly(1L);
    auto vars = f.variables();
    Sym v = vars.front();
    Poly cont = content_in(f, v);
    Poly p = *divide_exact(f, cont);
    Poly g = poly_gcd(p, p.derivative(v));
    Poly core = *divide_exact(p, g);
    return (squarefree_part(cont) * core).normalized_sign();
}

// ---- univariate tools ----

namespace {

Rat eval_univariate(const Poly& f, Sym v, const Rat& a) {
    auto cs = f.coeffs_in(v);
    Rat r(0);
    int prev = -1;
    for (auto it = cs.rbegin(); it != cs.rend(); ++it) {
        if (prev >= 0)
            for (int k = it->first; k < prev; ++k) r *= a;
        r += it->second.constant_value();
        prev = it->first;
    }
    for (int k = 0; k < prev; ++k) r *= a;
    return r;
}

int sign_at(const Poly& f, Sym v, const Rat& a) { return sign(eval_univariate(f, v, a)); }

int variations(const std::vector<Poly>& seq, Sym v, const Rat& a) {
    int count = 0, last = 0;
    for (const auto& p : seq) {
        int s = sign_at(p, v, a);
        if (s == 0) continue;
        if (last != 0 && s != last) ++count;
        last = s;
    }
    return count;
}

} // namespace

std::vector<Poly> sturm_sequence(const Poly& f, Sym v) {
    std::vector<Poly> seq;
    Poly p0 = squarefree_part(f);
    if (p0.degree(v) <= 0) return seq;
    seq.push_back(p0);
    seq.push_back(p0.derivative(v).primitive_part());
    while (true) {
        const Poly& a = seq[seq.size() - 2];
        const Poly& b = seq.back();
        if (b.is_zero() || b.degree(v) < 0) break;
        int da = a.degree(v), db = b.degree(v);
        Poly r = prem(a, b, v);
        // prem multiplies by lc(b)^(da-db+1); compensate its sign so the
        // sequence keeps the Sturm property, then drop positive content.
        Rat lcb = b.coeff_of(v, db).constant_value();
        int mult_sign = (sign(lcb) < 0 && ((da - db + 1) & 1)) ? -1 : 1;
        Poly next = -r;
        if (mult_sign < 0) next = -next;
        if (next.is_zero()) break;
        Rat cont = next.content();
        if (sign(cont) < 0) cont = -cont; // strip positive content only
        next = *divide_exact(next, Poly(cont));
        seq.push_back(next);
        if (next.degree(v) == 0) break;
    }
    return seq;
}

int sturm_count(const std::vector<Poly>& seq, Sym v, const Rat& a, const Rat& b) {
    if (seq.empty()) return 0;
    return variations(seq, v, a) - variations(seq, v, b);
}

int real_root_count(const Poly& f, Sym v) {
    if (f.degree(v) <= 0) return 0;
    Rat bound = root_bound(f, v);
    auto seq = sturm_sequence(f, v);
    return sturm_count(seq, v, -bound, bound);
}

Rat root_bound(const Poly& f, Sym v) {
    int d = f.degree(v);
    if (d <= 0) return Rat(1);
    Rat lc = f.coeff_of(v, d).constant_value();
    Rat maxq(0);
    for (const auto& [k, c] : f.coeffs_in(v)) {
        if (k == d) continue;
        Rat q = abs(c.constant_value() / lc);
        if (q > maxq) maxq = q;
    }
    return maxq + 2;
}

namespace {

// Simplest rational strictly inside (lo, hi) via a Stern-Brocot descent.
Rat simplest_between(const Rat& lo, const Rat& hi) {
    assert(lo < hi);
    if (lo < 0 && hi > 0) return Rat(0);
    if (hi <= 0) return -simplest_between(-hi, -lo);
    // 0 <= lo < hi: walk continued-fraction style.
    Int lo_n = lo.get_num(), lo_d = lo.get_den();
    Int hi_n = hi.get_num(), hi_d = hi.get_den();
    Rat shift(0);
    Int whole;
    // Reduce to fractional parts: if an integer lies inside, take it.
    mpz_fdiv_q(whole.get_mpz_t(), lo_n.get_mpz_t(), lo_d.get_mpz_t());
    Rat w(whole);
    if (w + 1 < hi) return w + 1; // w <= lo, so w+1 lies strictly inside
    Rat flo = lo - w, fhi = hi - w; // 0 <= flo < fhi <= 1
    if (flo == 0) {
        // (0, fhi): simplest is 1/ceil(1/fhi + 1)-ish; pick 1/(floor(1/fhi)+1)
        Rat inv = Rat(1) / fhi;
        Int fl;
        mpz_fdiv_q(fl.get_mpz_t(), inv.get_num().get_mpz_t(), inv.get_den().get_mpz_t());
        return w + Rat(1) / (Rat(fl) + 1);
    }
    // Recurse on reciprocals: simplest in (flo, fhi) = 1/simplest in (1/fhi, 1/flo).
    return w + Rat(1) / simplest_between(Rat(1) / fhi, Rat(1) / flo);
}

} // namespace

std::vector<IsolatedRoot> isolate_real_roots(const Poly& f, Sym v, const Int& den_bound) {
    std::vector<IsolatedRoot> roots;
    Poly p = squarefree_part(f);
    if (p.degree(v) <= 0) return roots;
    auto seq = sturm_sequence(p, v);
    Rat bound = root_bound(p, v);

    auto count_open = [&](const Rat& a, const Rat& b) {
        int c = sturm_count(seq, v, a, b);
        if (sign_at(p, v, b) == 0) --c; // (a,b] -> (a,b)
        return c;
    };

    struct Box {
        Rat lo, hi;
        int count;
    };
    std::deque<Box> queue;
    // The Cauchy bound + margin guarantees p(+-bound) != 0.
    int total = count_open(-bound, bound);
    if (total > 0) queue.push_back({-bound, bound, total});

    while (!queue.empty()) {
        Box box = queue.front();
        queue.pop_front();
        if (box.count == 0) continue;
        if (box.count == 1) {
            // Try to recognize a rational root by repeated refinement.
            Rat lo = box.lo, hi = box.hi;
            std::optional<Rat> exact;
            for (int round = 0; round < 80; ++round) {
                Rat guess = simplest_between(lo, hi);
                if (eval_univariate(p, v, guess) == 0) {
                    exact = guess;
                    break;
                }
                if (guess.get_den() > den_bound) break;
                // Shrink toward the root: bisect at the guess.
                if (count_open(lo, guess) == 1)
                    hi = guess;
                else
                    lo = guess;
            }
            roots.push_back({lo, hi, exact});
            continue;
        }
        Rat mid = (box.lo + box.hi) / 2;
        if (sign_at(p, v, mid) == 0) {
            roots.push_back({mid, mid, mid});
            int below = count_open(box.lo, mid);
            int above = box.count - 1 - below;
            if (below > 0) queue.push_back({box.lo, mid, below});
            if (above > 0) queue.push_back({mid, box.hi, above});
        } else {
            int below = count_open(box.lo, mid);
            int above = box.count - below;
            if (below > 0) queue.push_back({box.lo, mid, below});
            if (above > 0) queue.push_back({mid, box.hi, above});
        }
    }
    std::sort(roots.begin(), roots.end(),
              [](const IsolatedRoot& a, const IsolatedRoot& b) { return a.lo < b.lo; });
    return roots;
}

std::vector<Rat> rational_roots(const Poly& f, Sym v) {
    std::vector<Rat> out;
    for (const auto& r : isolate_real_roots(f, v))
        if (r.exact) out.push_back(*r.exact);
    return out;
}

} // namespace projsig
