#pragma once

#include "projsig/curves.hpp"

namespace projsig {

// How far down the derivation chain to evaluate. Later stages require more
// regularity of the point: the affine pair needs nonzero curvature and
// nonvanishing equi-affine curvature denominator; the projective pair
// additionally needs a nonzero derivative of the equi-affine curvature.
enum class ChainDepth { Curvature, Affine, Projective };

// Invariant values at one curve point computed by the classical derivation
// chain (arc length -> curvature -> equi-affine arc length/curvature ->
// projective pair) in truncated Taylor arithmetic over high-precision
// floats. Entirely independent of the bracket calculus; used to
// cross-validate it. Entries beyond the requested depth are NaN.
struct ChainValues {
    double kappa = 0;        // Euclidean curvature
    double mu = 0;           // equi-affine curvature
    double k_affine = 0;     // mu_alpha^2 / mu^3
    double t_affine = 0;     // mu_alphaalpha / (3 mu^2)
    double k_projective = 0; // eta^3
    double t_projective = 0; // eta_rho
};

// Evaluates the chain at the exact parameter value t0. Throws
// std::domain_error when t0 is a pole of a component or the point is not
// regular enough for the requested depth.
ChainValues chain_invariants(const PlanarParametricCurve& c, const Rat& t0,
                             ChainDepth depth = ChainDepth::Projective,
                             int precision_bits = 256);

} // namespace projsig
