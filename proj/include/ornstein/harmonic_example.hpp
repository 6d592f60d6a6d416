#pragma once

#include <cstdint>
#include <vector>

namespace ornstein {

// F(x) = (x1^2 + x2^2 + x3^2 - x4^2) / sqrt(x1^2 + x2^2 + x3^2) on R^4:
// even, positively 1-homogeneous, harmonic away from the axis r = 0, and
// negative at e.g. (0, 0, 1, 2). A separately convex function with these
// symmetries could not go negative, so F witnesses how far harmonicity is
// from separate convexity.
double harmonic_example_value(const std::vector<double>& x);

// Discrete 4D Laplacian of the example by centered stencils of the given
// accuracy per axis (order 8 uses 9 points per axis). The evaluation box
// must stay clear of the singular axis: |x_(1..3)| >= min_radius and
// h * stencil radius must not bridge the gap.
double harmonic_example_discrete_laplacian(const std::vector<double>& x, double h,
                                           int order = 8);

// Max |discrete Laplacian| over `count` points drawn uniformly from
// [-2, 2]^4, resampled until the 3D radius is at least min_radius.
// Deterministic in the seed.
double harmonic_example_laplacian_scan(int count, std::uint64_t seed, double h,
                                       double min_radius = 0.5, int order = 8);

} // namespace ornstein
