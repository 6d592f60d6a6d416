#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ornstein/pattern.hpp"

namespace ornstein {

enum class Parity { even, odd, mixed };

// The coordinate space E = R^A spanned by the derivative cells alpha in A,
// together with the functionals picking each operator out of a generalized
// gradient: T_j u = sum_alpha c[j][alpha] * u_alpha.
struct GradientSpace {
    int dim = 0;                         // d, the number of variables
    std::vector<MultiIndex> cells;       // A, lexicographically sorted
    std::vector<std::string> names;      // one per operator, j = 0..ell-1
    std::vector<RatVector> functionals;  // ell rows, |A| columns, exact
    HomogeneityPattern pattern;
    bool pattern_unique = true;

    int cell_count() const { return static_cast<int>(cells.size()); }
    int functional_count() const { return static_cast<int>(functionals.size()); }
    int cell_index(const MultiIndex& alpha) const; // -1 when absent

    Parity parity() const;
    bool same_parity() const { return parity() != Parity::mixed; }

    // Functionals as doubles for the numeric layer.
    std::vector<std::vector<double>> functionals_double() const;
};

// Collects A as the union of the diagrams and checks the operators share an
// admissible pattern; throws DomainError otherwise.
GradientSpace build_gradient_space(const std::vector<DifferentialOperator>& ops);

// Exact coefficients (lambda_2, ..., lambda_ell) with
// T_1 = sum_j lambda_j T_j, or nullopt when T_1 is not in the span.
std::optional<RatVector>
dependence_coefficients(const std::vector<DifferentialOperator>& ops);

} // namespace ornstein
