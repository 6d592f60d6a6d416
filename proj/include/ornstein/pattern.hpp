#pragma once

#include <optional>
#include <vector>

#include "ornstein/operator.hpp"
#include "ornstein/rational_linalg.hpp"

namespace ornstein {

// The hyperplane <alpha, gamma> = k, gamma_i >= 1 integer, k >= 1 integer,
// gcd(gamma_1, ..., gamma_d, k) = 1. Meets every positive semi-axis.
struct HomogeneityPattern {
    std::vector<long long> gamma;
    long long k = 0;

    bool operator==(const HomogeneityPattern& other) const {
        return gamma == other.gamma && k == other.k;
    }
};

struct PatternResult {
    std::optional<HomogeneityPattern> pattern;
    // False when the diagram underdetermines the hyperplane. The returned
    // pattern is then the lexicographically smallest primitive admissible
    // (gamma, k); `directions` holds a rational basis of all (gamma, k)
    // solving the incidence equations, admissible or not.
    bool unique = true;
    RatMatrix directions;
};

// Admissible pattern for the union of the operators' Newton diagrams.
// pattern is nullopt when no hyperplane with positive integer data fits.
PatternResult find_pattern(const std::vector<DifferentialOperator>& ops);

bool check_homogeneous(const DifferentialOperator& op, const HomogeneityPattern& p);
bool check_homogeneous(const std::vector<DifferentialOperator>& ops,
                       const HomogeneityPattern& p);

} // namespace ornstein
