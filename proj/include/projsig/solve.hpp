#pragma once

#include "projsig/polyops.hpp"

#include <map>
#include <string>
#include <vector>

namespace projsig {

struct SolverConfig {
    int degree_cap = 24;          // max degree of any eliminant before giving up
    Int den_bound = Int(1000000); // rational-root reconstruction bound
    int component_samples = 3;    // points sampled per positive-dimensional component
};

// One exact rational solution: unknown -> value.
using Assignment = std::map<Sym, Rat>;

// Outcome of exact system solving over <=3 unknowns.
//
// `rational` lists every rational solution (complete when `certified_complete`)
// and each entry is re-verified against the full input system. The flags keep
// the three-valued downstream verdicts honest:
//   - certified_complete: no elimination branch was truncated by the degree cap;
//     together with empty candidate flags this certifies "no solutions at all".
//   - nonrational_candidates: some eliminant has roots beyond the recovered
//     rational ones (irrational real or complex); "no solutions" cannot be
//     certified, though the candidates may be spurious.
//   - real_nonrational_roots: moreover some of those candidate values are
//     provably real (Sturm count exceeded the rational-root count).
//   - positive_dimensional: a solution component of positive dimension was
//     detected; `component_samples` holds verified sample points from it.
struct SolveOutcome {
    std::vector<Assignment> rational;
    bool certified_complete = true;
    bool nonrational_candidates = false;
    bool real_nonrational_roots = false;
    bool positive_dimensional = false;
    std::vector<Assignment> component_samples;
    std::vector<std::string> notes;

    bool certified_empty() const {
        return rational.empty() && certified_complete && !nonrational_candidates &&
               !positive_dimensional;
    }
};

SolveOutcome solve_system(const std::vector<Poly>& polys, const std::vector<Sym>& unknowns,
                          const SolverConfig& cfg = {});

} // namespace projsig
