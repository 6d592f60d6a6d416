#include "ornstein/pattern.hpp"

#include <algorithm>
#include <set>

#include "ornstein/error.hpp"

namespace ornstein {

namespace {

std::vector<MultiIndex> collect_points(const std::vector<DifferentialOperator>& ops) {
    if (ops.empty()) throw DomainError("find_pattern needs at least one operator");
    const int dim = ops[0].dim;
    std::set<MultiIndex> points;
    for (const auto& op : ops) {
        if (op.dim != dim) throw DomainError("operators live in different dimensions");
        for (const auto& alpha : op.diagram()) points.insert(alpha);
    }
    return {points.begin(), points.end()};
}

bool on_plane(const MultiIndex& alpha, const HomogeneityPattern& p) {
    long long dot = 0;
    for (std::size_t i = 0; i < alpha.size(); ++i) dot += alpha[i] * p.gamma[i];
    return dot == p.k;
}

long long gcd_ll(long long a, long long b) {
    while (b) {
        const long long t = a % b;
        a = b;
        b = t;
    }
    return a < 0 ? -a : a;
}

// Lexicographically smallest primitive (gamma, k) with gamma_i in [1, bound]
// fitting every point, or nullopt. k is forced by the first point, so lex
// order on gamma is lex order on (gamma, k) restricted to admissible tuples;
// a non-primitive hit would have been preceded by its reduced copy.
std::optional<HomogeneityPattern> bounded_lex_search(const std::vector<MultiIndex>& points,
                                                     int dim, long long bound) {
    std::vector<long long> gamma(static_cast<std::size_t>(dim), 1);
    while (true) {
        long long k = 0;
        for (int i = 0; i < dim; ++i) k += points[0][i] * gamma[i];
        if (k >= 1) {
            HomogeneityPattern candidate{gamma, k};
            bool ok = true;
            for (std::size_t p = 1; p < points.size() && ok; ++p)
                ok = on_plane(points[p], candidate);
            if (ok) {
                long long g = k;
                for (long long x : gamma) g = gcd_ll(g, x);
                if (g == 1) return candidate;
            }
        }
        int axis = dim - 1;
        while (axis >= 0 && gamma[axis] == bound) {
            gamma[axis] = 1;
            --axis;
        }
        if (axis < 0) return std::nullopt;
        ++gamma[axis];
    }
}

} // namespace

PatternResult find_pattern(const std::vector<DifferentialOperator>& ops) {
    const std::vector<MultiIndex> points = collect_points(ops);
    const int dim = ops[0].dim;

    // Incidence equations <alpha, gamma> - k = 0 as rows over (gamma, k).
    RatMatrix incidence;
    incidence.reserve(points.size());
    for (const auto& alpha : points) {
        RatVector row;
        row.reserve(static_cast<std::size_t>(dim) + 1);
        for (int i = 0; i < dim; ++i) row.emplace_back(alpha[i]);
        row.emplace_back(-1);
        incidence.push_back(std::move(row));
    }

    PatternResult result;
    result.directions = nullspace(incidence);
    const std::size_t freedom = result.directions.size();
    if (freedom == 0) return result; // overdetermined, no hyperplane at all

    if (freedom == 1) {
        RatVector v = primitive_integer_direction(result.directions[0]);
        // Admissibility requires every entry >= 1 after orienting k > 0.
        if (v.back() < 0)
            for (auto& x : v) x = -x;
        bool admissible = v.back() >= 1;
        for (int i = 0; i < dim && admissible; ++i) admissible = v[i] >= 1;
        if (admissible) {
            HomogeneityPattern p;
            p.gamma.reserve(static_cast<std::size_t>(dim));
            for (int i = 0; i < dim; ++i)
                p.gamma.push_back(static_cast<long long>(BigInt(numerator(v[i]))));
            p.k = static_cast<long long>(BigInt(numerator(v.back())));
            result.pattern = p;
        }
        return result;
    }

    // Underdetermined diagram: a whole family of hyperplanes fits. Report the
    // lexicographically smallest primitive admissible one. The search bound is
    // generous for the dimensions this laboratory targets.
    result.unique = false;
    const long long bound = dim <= 3 ? 64 : 8;
    result.pattern = bounded_lex_search(points, dim, bound);
    return result;
}

bool check_homogeneous(const DifferentialOperator& op, const HomogeneityPattern& p) {
    if (static_cast<int>(p.gamma.size()) != op.dim)
        throw DomainError("pattern dimension does not match operator dimension");
    for (const auto& alpha : op.diagram())
        if (!on_plane(alpha, p)) return false;
    return true;
}

bool check_homogeneous(const std::vector<DifferentialOperator>& ops,
                       const HomogeneityPattern& p) {
    return std::all_of(ops.begin(), ops.end(),
                       [&](const DifferentialOperator& op) { return check_homogeneous(op, p); });
}

} // namespace ornstein
