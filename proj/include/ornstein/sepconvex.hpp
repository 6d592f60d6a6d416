#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace ornstein {

// Discrete domain for certifying lower bounds on separately convex,
// positively homogeneous even functions. Nodes are the integer lattice
// points on the sup-norm sphere of resolution n per axis, replicated on
// geometric layers of radii scale^m, m = -extra_layers .. extra_layers.
// Every node appears with its antipode, and layers are radial copies.
struct SphereGridSpec {
    int dimension = 2;
    int resolution = 17;      // odd, >= 3; grid points per axis on a layer
    int extra_layers = 3;     // layers above and below the unit sphere
    int scale = 2;            // radius ratio between consecutive layers
    double homogeneity = 1.0; // order p of positive homogeneity, >= 1
};

// One linear inequality row . u >= 0 over the reduced variables (function
// values at the canonical base-layer nodes). rhs_one is the row applied to
// u = 1, i.e. to the feasible point F = ||x||_inf^p.
struct SparseRow {
    std::vector<int> vars;
    std::vector<double> coeffs;
    double rhs_one = 0.0;
};

// The linear program: minimize F at one node subject to discrete separate
// convexity (every axis-parallel consecutive node triple, both within a
// layer and across layers), evenness F(-x) = F(x), exact layer homogeneity
// F(scale x) = scale^p F(x), and the normalization F(x) <= ||x||_inf^p.
// Evenness and homogeneity are eliminated during assembly, so the variables
// are one value per antipode class of the base sphere and the normalization
// is u <= 1.
struct SepConvexProgram {
    SphereGridSpec spec;
    std::vector<std::vector<int>> base_nodes; // canonical integer node per variable
    std::vector<SparseRow> convexity;
    int objective_var = 0;
    long long triples_total = 0; // before the evenness/homogeneity dedupe
};

// objective_node is an integer point with sup norm (resolution-1)/2 on the
// base sphere; empty picks the first axis point (s, 0, ..., 0).
SepConvexProgram build_sepconvex_program(const SphereGridSpec& spec,
                                         const std::vector<int>& objective_node = {});

struct SepConvexSolution {
    double optimum = 0.0;              // certified min of F at the chosen node
    std::vector<double> base_values;   // minimizing F on the canonical nodes
    double primal_residual = 0.0;      // worst constraint violation at the optimum
    double dual_residual = 0.0;        // worst dual infeasibility at termination
    double duality_gap = 0.0;
    long long pivots = 0;
};

// Solves the program with a slack-start primal simplex (the substitution
// u = 1 - v makes v = 0 feasible) and audits the certificate.
SepConvexSolution min_certificate(const SepConvexProgram& prog);

// Worst violation of discrete separate convexity of an arbitrary function
// over the grid's axis-parallel triples: max over triples of the negated
// second difference, normalized to match (f(x-h) + f(x+h) - 2 f(x)) at equal
// spacing h, clamped below at zero. <= tol means separately convex there.
double separate_convexity_residual(const std::function<double(const std::vector<double>&)>& f,
                                   const SphereGridSpec& spec);

// Text dump in the standard LP interchange format for external cross-checks.
void write_lp_format(const SepConvexProgram& prog, const std::string& path);

} // namespace ornstein
