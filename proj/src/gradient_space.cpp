#include "ornstein/gradient_space.hpp"

#include <algorithm>
#include <set>

#include "ornstein/error.hpp"

namespace ornstein {

int GradientSpace::cell_index(const MultiIndex& alpha) const {
    const auto it = std::lower_bound(cells.begin(), cells.end(), alpha);
    if (it == cells.end() || *it != alpha) return -1;
    return static_cast<int>(it - cells.begin());
}

Parity GradientSpace::parity() const {
    bool even = false, odd = false;
    for (const auto& alpha : cells) (parity_of(alpha) ? odd : even) = true;
    if (even && odd) return Parity::mixed;
    return odd ? Parity::odd : Parity::even;
}

std::vector<std::vector<double>> GradientSpace::functionals_double() const {
    std::vector<std::vector<double>> out;
    out.reserve(functionals.size());
    for (const auto& row : functionals) {
        std::vector<double> d;
        d.reserve(row.size());
        for (const auto& c : row) d.push_back(to_double(c));
        out.push_back(std::move(d));
    }
    return out;
}

GradientSpace build_gradient_space(const std::vector<DifferentialOperator>& ops) {
    if (ops.empty()) throw DomainError("gradient space needs at least one operator");
    const PatternResult pr = find_pattern(ops);
    if (!pr.pattern)
        throw DomainError("operators admit no common pattern of homogeneity");

    GradientSpace space;
    space.dim = ops[0].dim;
    space.pattern = *pr.pattern;
    space.pattern_unique = pr.unique;

    std::set<MultiIndex> cells;
    for (const auto& op : ops)
        for (const auto& alpha : op.diagram()) cells.insert(alpha);
    space.cells.assign(cells.begin(), cells.end()); // set iterates in lex order

    for (const auto& op : ops) {
        RatVector row(space.cells.size(), Rational(0));
        for (const auto& [alpha, coeff] : op.terms)
            row[static_cast<std::size_t>(space.cell_index(alpha))] = coeff;
        space.functionals.push_back(std::move(row));
        space.names.push_back(op.name);
    }
    return space;
}

std::optional<RatVector>
dependence_coefficients(const std::vector<DifferentialOperator>& ops) {
    if (ops.size() < 2)
        throw DomainError("dependence test needs a target and at least one candidate");
    const int dim = ops[0].dim;
    std::set<MultiIndex> cells;
    for (const auto& op : ops) {
        if (op.dim != dim) throw DomainError("operators live in different dimensions");
        for (const auto& alpha : op.diagram()) cells.insert(alpha);
    }
    std::vector<MultiIndex> basis(cells.begin(), cells.end());
    const auto index_of = [&](const MultiIndex& alpha) {
        return std::lower_bound(basis.begin(), basis.end(), alpha) - basis.begin();
    };

    // One row per monomial, one column per candidate operator.
    RatMatrix a(basis.size(), RatVector(ops.size() - 1, Rational(0)));
    RatVector b(basis.size(), Rational(0));
    for (std::size_t j = 1; j < ops.size(); ++j)
        for (const auto& [alpha, coeff] : ops[j].terms)
            a[index_of(alpha)][j - 1] = coeff;
    for (const auto& [alpha, coeff] : ops[0].terms) b[index_of(alpha)] = coeff;
    return solve(a, b);
}

} // namespace ornstein
