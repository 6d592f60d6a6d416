#pragma once

#include <vector>

#include "ornstein/optimize.hpp"

namespace ornstein {

// One certified point of the p-power comparison: `bound` is the achieved
// ratio mean |T_1 f|^p / sum_{j>=2} mean |T_j f|^p of `witness`, hence a
// lower bound for the best constant at this p on the discrete grid.
struct CpPoint {
    double p = 0.0;
    double bound = 0.0;
    double audit = 0.0; // ratio recomputed independently on the witness
    std::vector<int> grid;
    int iterations = 0;
    double seconds = 0.0; // wall time spent on this power
    ScalarField witness;
};

struct CpScan {
    std::vector<CpPoint> points;
    // Least-squares slope/intercept of log(bound) against log(1/(p-1)),
    // reported as a descriptive trend only, never asserted.
    double trend_slope = 0.0;
    double trend_intercept = 0.0;
};

// Best found lower bound at a single power p > 1.
CpPoint cp_lower_bound(const GradientSpace& space, double p, const std::vector<int>& grid,
                       const OptimizeOptions& opt);

// Powers sorted strictly decreasing toward 1, each level warm-started from
// the previous witness (resampled when the grid changes) and kept only when
// it beats a fresh search. `grids` holds one grid per power, or a single
// grid shared by all levels.
CpScan cp_scan(const GradientSpace& space, const std::vector<double>& p_list,
               const std::vector<std::vector<int>>& grids, const OptimizeOptions& opt);

// Independent Plancherel oracle for p = 2: the supremum over a Fourier-box
// grid of |m_1(xi)|^2 / sum_{j>=2} |m_j(xi)|^2, where m_j is the continuum
// symbol of T_j. Requires a same-parity cell set so the symbols are real
// polynomials up to a common phase. Grid maxima are certified lower
// estimates of the supremum; for degree-homogeneous families the ratio is
// scale-invariant and the box loses nothing.
double p2_symbol_ratio_sup(const GradientSpace& space, double radius = 2.0,
                           int steps = 161);

} // namespace ornstein
