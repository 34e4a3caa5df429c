#include "projsig/solve.hpp"

#include <algorithm>
#include <set>

namespace projsig {

namespace {

struct Ctx {
    const SolverConfig& cfg;
    int depth = 0;
};

SolveOutcome solve_rec(std::vector<Poly> polys, std::vector<Sym> unknowns, Ctx ctx);

void merge_flags(SolveOutcome& into, const SolveOutcome& from) {
    into.certified_complete = into.certified_complete && from.certified_complete;
    into.nonrational_candidates |= from.nonrational_candidates;
    into.real_nonrational_roots |= from.real_nonrational_roots;
    into.positive_dimensional |= from.positive_dimensional;
    for (const auto& n : from.notes) into.notes.push_back(n);
}

void add_solution(std::vector<Assignment>& sols, const Assignment& a) {
    if (std::find(sols.begin(), sols.end(), a) == sols.end()) sols.push_back(a);
}

bool satisfies(const std::vector<Poly>& polys, const Assignment& a) {
    std::map<Sym, Rat> point(a.begin(), a.end());
    for (const auto& p : polys)
        if (p.eval(point) != 0) return false;
    return true;
}

// Remove zero polynomials; returns false (inconsistent) on a nonzero constant.
bool simplify(std::vector<Poly>& polys) {
    std::vector<Poly> out;
    for (auto& p : polys) {
        if (p.is_zero()) continue;
        if (p.is_constant()) return false;
        out.push_back(p.primitive_part());
    }
    // Dedupe for stability.
    std::sort(out.begin(), out.end(), [](const Poly& a, const Poly& b) {
        if (a.term_count() != b.term_count()) return a.term_count() < b.term_count();
        return a.str() < b.str();
    });
    out.erase(std::unique(out.begin(), out.end()), out.end());
    polys = std::move(out);
    return true;
}

int max_degree_in(const std::vector<Poly>& polys, Sym v) {
    int d = 0;
    for (const auto& p : polys) d = std::max(d, p.degree(v));
    return d;
}

// Single-unknown case: solution set is exactly the roots of the gcd.
SolveOutcome solve_univariate(const std::vector<Poly>& polys, Sym u, const Ctx& ctx) {
    SolveOutcome out;
    Poly g;
    for (const auto& p : polys) g = poly_gcd(g, p);
    if (g.is_zero()) {
        // All polynomials vanish identically: the whole line solves.
        out.positive_dimensional = true;
        out.notes.push_back(std::string("unknown ") + std::string(name(u)) + " is free");
        for (int k = 0; k < ctx.cfg.component_samples; ++k)
            out.component_samples.push_back({{u, Rat(k)}});
        return out;
    }
    if (g.is_constant()) return out; // certified empty
    Poly sf = squarefree_part(g);
    auto roots = isolate_real_roots(sf, u, ctx.cfg.den_bound);
    int rational_count = 0;
    int real_count = int(roots.size());
    for (const auto& r : roots)
        if (r.exact) {
            out.rational.push_back({{u, *r.exact}});
            ++rational_count;
        }
    int all_roots = sf.degree(u); // complex count of the squarefree part
    if (all_roots > rational_count) {
        out.nonrational_candidates = true;
        if (real_count > rational_count) out.real_nonrational_roots = true;
    }
    std::sort(out.rational.begin(), out.rational.end(),
              [u](const Assignment& a, const Assignment& b) { return a.at(u) < b.at(u); });
    return out;
}

// Substitute a partial assignment into p.
Poly subst_all(Poly p, const Assignment& a) {
    for (const auto& [v, val] : a) p = p.subst(v, val);
    return p;
}

// Try to peel off an unknown that appears linearly with a constant coefficient.
bool linear_substitution(std::vector<Poly>& polys, const std::vector<Sym>& unknowns,
                         Sym& out_var, Poly& out_expr) {
    for (const auto& p : polys) {
        for (Sym u : unknowns) {
            if (p.degree(u) != 1) continue;
            Poly c = p.coeff_of(u, 1);
            if (!c.is_constant()) continue;
            // u = -(p - c*u)/c, a polynomial in the other unknowns.
            Poly rest = p.coeff_of(u, 0);
            out_var = u;
            out_expr = rest * (Rat(-1) / c.constant_value());
            return true;
        }
    }
    return false;
}

SolveOutcome solve_rec(std::vector<Poly> polys, std::vector<Sym> unknowns, Ctx ctx) {
    SolveOutcome out;
    if (ctx.depth > 40) {
        out.certified_complete = false;
        out.nonrational_candidates = true;
        out.notes.push_back("recursion depth limit");
        return out;
    }
    ++ctx.depth;

    if (!simplify(polys)) return out; // nonzero constant: certified empty
    if (unknowns.empty()) {
        // No unknowns and all polynomials vanished: the empty assignment solves.
        out.rational.push_back({});
        return out;
    }
    if (polys.empty()) {
        out.positive_dimensional = true;
        out.notes.push_back("all constraints vanish; solution set is the full space");
        // Sample a small grid, not just the diagonal: callers intersect these
        // samples with outer constraints, and diagonal-only points would miss
        // axis-aligned components of the intersection.
        int base = std::max(1, ctx.cfg.component_samples);
        std::size_t total = 1;
        for (std::size_t i = 0; i < unknowns.size(); ++i) total *= (std::size_t)base;
        for (std::size_t idx = 0; idx < total; ++idx) {
            Assignment a;
            std::size_t rem = idx;
            for (Sym u : unknowns) {
                a[u] = Rat(long(rem % (std::size_t)base));
                rem /= (std::size_t)base;
            }
            out.component_samples.push_back(a);
        }
        return out;
    }

    // Peel linear unknowns first (u = expr in the others).
    {
        Sym var;
        Poly expr;
        if (linear_substitution(polys, unknowns, var, expr)) {
            std::vector<Poly> reduced;
            for (const auto& p : polys) {
                Poly q = p.subst_poly(var, expr);
                reduced.push_back(q);
            }
            std::vector<Sym> rest;
            for (Sym u : unknowns)
                if (u != var) rest.push_back(u);
            SolveOutcome sub = solve_rec(std::move(reduced), rest, ctx);
            merge_flags(out, sub);
            auto extend = [&](const Assignment& a) {
                Assignment full = a;
                full[var] = expr.eval(std::map<Sym, Rat>(a.begin(), a.end()));
                return full;
            };
            for (const auto& a : sub.rational) add_solution(out.rational, extend(a));
            for (const auto& a : sub.component_samples)
                out.component_samples.push_back(extend(a));
            return out;
        }
    }

    if (unknowns.size() == 1) {
        SolveOutcome uni = solve_univariate(polys, unknowns[0], ctx);
        return uni;
    }

    // Choose the unknown to eliminate and a pivot of minimal positive degree.
    Sym u = unknowns.back();
    {
        int best = -1;
        for (Sym cand : unknowns) {
            int d = max_degree_in(polys, cand);
            if (d > 0 && (best < 0 || d < best)) {
                best = d;
                u = cand;
            }
        }
        if (best <= 0) {
            // No polynomial involves any unknown we track... all involve none:
            // handled by polys.empty() above; involving other symbols only is a
            // caller error.
            out.certified_complete = false;
            out.notes.push_back("constraints do not involve the unknowns");
            out.nonrational_candidates = true;
            return out;
        }
    }
    std::vector<Sym> rest;
    for (Sym v : unknowns)
        if (v != u) rest.push_back(v);

    // If u does not appear, recurse directly and extend with a free u.
    if (max_degree_in(polys, u) == 0) {
        SolveOutcome sub = solve_rec(polys, rest, ctx);
        merge_flags(out, sub);
        if (!sub.rational.empty() || !sub.component_samples.empty()) {
            out.positive_dimensional = true;
            out.notes.push_back(std::string("unknown ") + std::string(name(u)) + " is free");
            for (const auto& a : sub.rational)
                for (int k = 0; k < ctx.cfg.component_samples; ++k) {
                    Assignment full = a;
                    full[u] = Rat(k);
                    out.component_samples.push_back(full);
                }
        }
        return out;
    }

    // Eliminate u by a pseudo-remainder chain: pick the u-dependent polynomial
    // of minimal degree in u as pivot and reduce every other u-dependent
    // polynomial modulo it.  Pseudo-remainders lie in the ideal generated by
    // the system, so each replacement preserves or enlarges the solution set;
    // the fiber extension below re-verifies every candidate against the
    // original polynomials, which restores exactness.  A nonzero constant
    // remainder certifies the system empty outright.
    std::vector<Poly> work = polys;
    for (;;) {
        std::size_t pivot = work.size();
        for (std::size_t i = 0; i < work.size(); ++i) {
            if (work[i].degree(u) <= 0) continue;
            if (pivot == work.size() || work[i].degree(u) < work[pivot].degree(u) ||
                (work[i].degree(u) == work[pivot].degree(u) &&
                 work[i].term_count() < work[pivot].term_count()))
                pivot = i;
        }
        bool reduced = false;
        for (std::size_t i = 0; i < work.size(); ++i) {
            if (i == pivot || work[i].degree(u) <= 0) continue;
            Poly r = pseudo_divide(work[i], work[pivot], u).second;
            if (!r.is_zero()) {
                if (r.is_constant()) return out; // certified empty
                r = r.primitive_part();
            }
            work[i] = std::move(r);
            reduced = true;
        }
        if (!reduced) break;
        std::vector<Poly> kept;
        for (auto& p : work)
            if (!p.is_zero()) kept.push_back(std::move(p));
        work = std::move(kept);
    }

    // All of u's content now sits in the single remaining pivot; the u-free
    // residue projects the system onto the other unknowns.
    std::vector<Poly> projected;
    for (const auto& p : work)
        if (p.degree(u) <= 0) projected.push_back(p);

    // Solve the projected system, then extend each partial solution through
    // its fiber in the original system.
    SolveOutcome sub = solve_rec(std::move(projected), rest, ctx);
    merge_flags(out, sub);

    auto extend = [&](const Assignment& partial, std::vector<Assignment>& into) {
        std::vector<Poly> fiber;
        for (const auto& p : polys) fiber.push_back(subst_all(p, partial));
        SolveOutcome fsol = solve_rec(std::move(fiber), {u}, ctx);
        merge_flags(out, fsol);
        for (const auto& fs : fsol.rational) {
            Assignment full = partial;
            full[u] = fs.at(u);
            if (satisfies(polys, full)) add_solution(into, full);
        }
        for (const auto& fs : fsol.component_samples) {
            Assignment full = partial;
            full[u] = fs.at(u);
            if (satisfies(polys, full)) out.component_samples.push_back(full);
        }
    };
    for (const auto& partial : sub.rational) extend(partial, out.rational);
    for (const auto& partial : sub.component_samples) extend(partial, out.component_samples);

    return out;
}

} // namespace

SolveOutcome solve_system(const std::vector<Poly>& polys, const std::vector<Sym>& unknowns,
                          const SolverConfig& cfg) {
    Ctx ctx{cfg, 0};
    SolveOutcome out = solve_rec(polys, unknowns, ctx);
    // Final paranoia: every reported solution satisfies the original system.
    std::vector<Assignment> checked;
    for (const auto& a : out.rational) {
        if (a.size() != unknowns.size()) continue;
        if (satisfies(polys, a)) add_solution(checked, a);
    }
    out.rational = std::move(checked);
    std::sort(out.rational.begin(), out.rational.end());
    std::vector<Assignment> sampled;
    for (const auto& a : out.component_samples) {
        if (a.size() != unknowns.size()) continue;
        if (satisfies(polys, a)) add_solution(sampled, a);
    }
    std::sort(sampled.begin(), sampled.end());
    out.component_samples = std::move(sampled);
    return out;
}

} // namespace projsig
