#pragma once

#include <optional>
#include <vector>

#include "ornstein/rational.hpp"

namespace ornstein {

using RatVector = std::vector<Rational>;
using RatMatrix = std::vector<RatVector>; // row major, possibly empty

// In-place reduced row echelon form. Returns the rank. Pivot columns are
// recorded in *pivots when non-null, in increasing column order.
int rref(RatMatrix& m, std::vector<int>* pivots = nullptr);

int rank(RatMatrix m);

// Particular solution of A x = b with all free variables set to zero.
// std::nullopt when the system is inconsistent.
std::optional<RatVector> solve(const RatMatrix& a, const RatVector& b);

// Basis of { x : A x = 0 }, one vector per row of the result. The basis is
// the canonical RREF one (free variable set to 1, pivots back-substituted).
RatMatrix nullspace(const RatMatrix& a);

// Smallest integer vector proportional to v with positive leading nonzero:
// clears denominators and divides by the content.
RatVector primitive_integer_direction(const RatVector& v);

} // namespace ornstein
