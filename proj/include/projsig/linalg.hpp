#pragma once

#include "projsig/rat.hpp"

#include <optional>
#include <vector>

namespace projsig {

using RatVec = std::vector<Rat>;
using RatMat = std::vector<std::vector<Rat>>; // row-major, rectangular

RatMat mat_mul(const RatMat& a, const RatMat& b);
RatVec mat_apply(const RatMat& a, const RatVec& v);
Rat det(RatMat m); // square only

// Reduced row echelon form in place; returns the pivot column of each pivot row.
std::vector<int> rref(RatMat& m);
int rank(RatMat m);

// Basis of the right nullspace of a (rows x cols) matrix.
std::vector<RatVec> nullspace(const RatMat& m, int cols);

// One solution of A x = b, or nullopt when inconsistent.
std::optional<RatVec> solve_linear(RatMat a, RatVec b);

// Inverse of a square matrix, or nullopt when singular.
std::optional<RatMat> inverse(RatMat m);

} // namespace projsig
