#pragma once

#include <vector>

#include "ornstein/field.hpp"
#include "ornstein/gradient_space.hpp"

namespace ornstein {

// The separation profile on E:
//   V(u) = sum_{j >= 2} |T_j u|^p  -  c * |T_1 u|^p,
// where T_j are the functionals of the space. p = 1 is the primary case;
// the same parameterization covers the p-power variants (role of the
// constant rescaled into c). c must be positive, p >= 1.
struct VFunction {
    GradientSpace space;
    std::vector<std::vector<double>> functionals; // double cache, ell x |A|
    double c = 1.0;
    double p = 1.0;

    int cell_count() const { return static_cast<int>(space.cells.size()); }
    int functional_count() const { return static_cast<int>(functionals.size()); }
};

VFunction make_vfunction(const GradientSpace& space, double c, double p = 1.0);

// V at a single point of E; e has one entry per cell.
double evaluate_V(const VFunction& vf, const std::vector<double>& e);

// Grid mean of V(e + grad_A phi). Positively 1-homogeneous in (e, phi)
// jointly when p = 1; exact-to-rounding scale covariance is relied on by the
// estimator tests. `order` is the finite-difference accuracy.
double objective(const VFunction& vf, const std::vector<double>& e,
                 const ScalarField& phi, int order = 4);

// Same, reusing a precomputed gradient of phi.
double objective(const VFunction& vf, const std::vector<double>& e, const EField& grad);

} // namespace ornstein
