#pragma once

#include <cstdint>
#include <vector>

#include "ornstein/gradient_space.hpp"

namespace ornstein {

// Generalized rank-one vector e_x with real coordinates
//   (e_x)_alpha = (-1)^((|alpha| + |alpha0|) / 2) * x^alpha,
// defined when every |alpha| in A has the parity of |alpha0| (then the sign
// exponent is an integer). alpha0 must be a cell of the space; it only fixes
// the global sign. Throws DomainError on mixed parity or foreign alpha0.
std::vector<double> rank_one_vector(const GradientSpace& space,
                                    const std::vector<double>& x,
                                    const MultiIndex& alpha0);

RatVector rank_one_vector_exact(const GradientSpace& space,
                                const RatVector& x,
                                const MultiIndex& alpha0);

// Exact rank of { e_x : x one of `samples` integer points } inside E.
// Points are drawn deterministically from the seed with coordinates in
// [-coord_range, coord_range] \ {0}.
int rank_one_span_dim(const GradientSpace& space, int samples, std::uint64_t seed,
                      int coord_range = 9);

} // namespace ornstein
