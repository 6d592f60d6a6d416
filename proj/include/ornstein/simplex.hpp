#pragma once

#include <cstdint>
#include <vector>

namespace ornstein {

// Dense primal simplex for max c.x subject to A x <= b, x >= 0, with b >= 0
// so the all-slack basis is feasible and no phase one is needed. Small and
// deterministic; meant for programs with a few thousand rows.
struct SimplexOptions {
    long long max_pivots = 200000;
    double pivot_tol = 1e-8;  // entries below this never pivot
    int bland_after = 256;    // stalled pivots before switching to Bland's rule
};

enum class SimplexStatus { Optimal, Unbounded, PivotLimit };

struct SimplexResult {
    SimplexStatus status = SimplexStatus::Optimal;
    double objective = 0.0;
    std::vector<double> x;             // structural solution
    std::vector<double> dual;          // y >= 0 with y.b ~ objective at optimum
    std::vector<double> reduced_costs; // z_j - c_j over structural columns
    long long pivots = 0;
};

SimplexResult simplex_max(const std::vector<std::vector<double>>& A,
                          const std::vector<double>& b, const std::vector<double>& c,
                          const SimplexOptions& opt = {});

} // namespace ornstein
