#include "ornstein/rank_one.hpp"

#include <cmath>

#include "ornstein/error.hpp"
#include "ornstein/rng.hpp"

namespace ornstein {

namespace {

// Sign exponent (|alpha| + |alpha0|) / 2; the parity check guarantees the
// division is exact.
int sign_exponent(const MultiIndex& alpha, int degree0) {
    return (degree(alpha) + degree0) / 2;
}

void require_signable(const GradientSpace& space, const MultiIndex& alpha0) {
    if (!space.same_parity())
        throw DomainError("rank-one vectors need cells of one parity");
    if (space.cell_index(alpha0) < 0)
        throw DomainError("alpha0 " + format_multi_index(alpha0) +
                          " is not a cell of the space");
    if (static_cast<int>(alpha0.size()) != space.dim)
        throw DomainError("alpha0 dimension mismatch");
}

} // namespace

std::vector<double> rank_one_vector(const GradientSpace& space,
                                    const std::vector<double>& x,
                                    const MultiIndex& alpha0) {
    require_signable(space, alpha0);
    if (static_cast<int>(x.size()) != space.dim)
        throw DomainError("point dimension mismatch");
    const int d0 = degree(alpha0);
    std::vector<double> e;
    e.reserve(space.cells.size());
    for (const auto& alpha : space.cells) {
        double mono = 1.0;
        for (int i = 0; i < space.dim; ++i)
            for (int p = 0; p < alpha[i]; ++p) mono *= x[static_cast<std::size_t>(i)];
        e.push_back((sign_exponent(alpha, d0) & 1) ? -mono : mono);
    }
    return e;
}

RatVector rank_one_vector_exact(const GradientSpace& space, const RatVector& x,
                                const MultiIndex& alpha0) {
    require_signable(space, alpha0);
    if (static_cast<int>(x.size()) != space.dim)
        throw DomainError("point dimension mismatch");
    const int d0 = degree(alpha0);
    RatVector e;
    e.reserve(space.cells.size());
    for (const auto& alpha : space.cells) {
        Rational mono = 1;
        for (int i = 0; i < space.dim; ++i)
            for (int p = 0; p < alpha[i]; ++p) mono *= x[static_cast<std::size_t>(i)];
        e.push_back((sign_exponent(alpha, d0) & 1) ? Rational(-mono) : mono);
    }
    return e;
}

int rank_one_span_dim(const GradientSpace& space, int samples, std::uint64_t seed,
                      int coord_range) {
    if (samples < 1) throw DomainError("need at least one sample point");
    if (coord_range < 1) throw DomainError("coordinate range must be >= 1");
    const MultiIndex& alpha0 = space.cells.front();
    SplitMix64 rng(seed);
    RatMatrix rows;
    rows.reserve(static_cast<std::size_t>(samples));
    for (int s = 0; s < samples; ++s) {
        RatVector x;
        x.reserve(static_cast<std::size_t>(space.dim));
        for (int i = 0; i < space.dim; ++i) {
            long long v = 0;
            while (v == 0) v = rng.next_int(-coord_range, coord_range);
            x.emplace_back(v);
        }
        rows.push_back(rank_one_vector_exact(space, x, alpha0));
    }
    return rank(std::move(rows));
}

} // namespace ornstein
