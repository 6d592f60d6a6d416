#pragma once

#include <cstdint>
#include <vector>

#include "ornstein/field.hpp"
#include "ornstein/gradient_space.hpp"

namespace ornstein {

// Oscillatory test function l(xi) = t^{-k} cos(sum_j t^{gamma_j} x_j xi_j) Phi(xi)
// on [0,1]^d, with Phi a product of quintic-smoothstep hats (1 on
// [2*delta_prime, 1-2*delta_prime] per axis, 0 outside [delta_prime,
// 1-delta_prime]). Its generalized gradient concentrates on the line spanned
// by the rank-one vector e_x; the good set B is the union of the full period
// boxes inside the flat region, which here is always a single box.
struct LaminateSpec {
    std::vector<double> x;     // direction; at least one nonzero entry
    MultiIndex alpha0;         // phase reference cell for e_x; empty = first cell
    long long t = 0;           // integer oscillation scale; 0 picks the largest
                               // scale keeping ~0.65 rad per grid step
    double delta_prime = 0.01; // hat margin, in (0, 1/4)
    std::vector<int> grid;     // per-axis sizes
    int order = 6;             // finite-difference accuracy for the checks
};

struct LaminateResult {
    ScalarField field;
    SupportBox good_box;        // grid-index box of the good set B
    double good_measure_exact;  // product measure of B from its geometry
    double good_measure_grid;   // fraction of grid points inside B
    double sup_gradient_norm;   // sup over the whole grid of ||grad_A l||_2
    double e_norm;              // ||e_x||_2
    double ks_distance;         // projection law on B vs CDF 1 - arccos(s)/pi
    double transverse_sup;      // sup over B of the component orthogonal to e_x
    long long t = 0;            // scale actually used
    std::vector<double> e_x;    // the rank-one direction itself
};

LaminateResult build_laminate(const GradientSpace& space, const LaminateSpec& spec);

// CDF of cos(2 pi U), U uniform on [0,1]: F(s) = 1 - arccos(s)/pi on [-1,1].
double cosine_law_cdf(double s);

} // namespace ornstein
