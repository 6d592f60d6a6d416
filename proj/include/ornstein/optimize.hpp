#pragma once

#include <cstdint>
#include <vector>

#include "ornstein/vfunction.hpp"

namespace ornstein {

struct OptimizeOptions {
    int order = 4;          // finite-difference accuracy
    int iterations = 1200;  // gradient evaluations per restart (split over stages)
    int stages = 5;         // smoothing continuation stages, mu_m = mu0 * 2^-m
    int restarts = 3;       // random starts in addition to the canonical one
    std::uint64_t seed = 1;
    double mu_factor = 0.1; // mu0 = mu_factor * median functional magnitude
    int threads = 1;        // restart-level worker pool
    int trace_stride = 25;  // iterations between trace samples
};

struct TracePoint {
    int iteration;
    double value;
};

struct FieldEstimate {
    ScalarField witness;
    double value = 0.0;            // exact (unsmoothed) objective at the witness
    double gap = 0.0;              // smoothing bias + tail-improvement estimate
    int iterations = 0;            // gradient evaluations actually spent
    std::vector<TracePoint> trace; // running best of the exact objective
};

// Upper estimate of the Bellman value at e: descends mean V(e + grad_A phi)
// over fields phi supported away from the wrap margin, starting from phi = 0
// (or `warm`). The reported value never exceeds the start's objective.
FieldEstimate bellman_upper(const VFunction& vf, const std::vector<double>& e,
                            const std::vector<int>& grid, const OptimizeOptions& opt,
                            const ScalarField* warm = nullptr);

// Best found value of
//   R(f) = mean |T_1 f|^p / sum_{j>=2} mean |T_j f|^p
// over supported fields on the grid; p = 1 is the L1 disproof ratio.
FieldEstimate maximize_ratio(const GradientSpace& space, const std::vector<int>& grid,
                             const OptimizeOptions& opt, double p = 1.0,
                             const ScalarField* warm = nullptr);

// Exact ratio of a given field (no optimization); used to audit witnesses.
double ratio_value(const GradientSpace& space, const ScalarField& f, double p = 1.0,
                   int order = 4);

// Refinement ladder: solve on each grid of `schedule`, warm-starting every
// level from the resampled previous witness and keeping the better of the
// warm continuation and a fresh search.
std::vector<FieldEstimate> ratio_over_grids(const GradientSpace& space,
                                            const std::vector<std::vector<int>>& schedule,
                                            const OptimizeOptions& opt, double p = 1.0);

} // namespace ornstein
