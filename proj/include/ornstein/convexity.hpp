#pragma once

#include <functional>
#include <vector>

namespace ornstein {

// Any evaluator on E; plug in V, an estimated Bellman value, or a synthetic
// function under test.
using EEvaluator = std::function<double(const std::vector<double>&)>;

// Residuals of convexity along one direction. A convex g keeps both maxima
// nonpositive: midpoint is g(e) - (g(e+l d) + g(e-l d))/2, cosine-mean is
// g(e) - mean_i g(e + l cos(2 pi i/T) d) over the equispaced full-period
// grid (whose cosine moments vanish exactly).
struct MidpointReport {
    std::vector<double> lambdas;
    std::vector<double> midpoint_residuals;
    std::vector<double> cosine_residuals;
    double max_midpoint_residual = 0.0;
    double max_cosine_residual = 0.0;
    double tolerance = 0.0;
    bool convex_within_tolerance = false; // both maxima <= tolerance
};

MidpointReport check_rank_one_midpoint(const EEvaluator& g, const std::vector<double>& e,
                                       const std::vector<double>& direction,
                                       const std::vector<double>& lambdas, double tol = 0.0,
                                       int cosine_samples = 16);

} // namespace ornstein
