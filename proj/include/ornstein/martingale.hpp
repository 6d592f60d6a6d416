#pragma once

#include <cstdint>
#include <optional>
#include <vector>

namespace ornstein {

// Uniform-growth filtration of [0,1): level n holds the 2^n dyadic
// intervals in left-to-right order, each atom splitting into exactly two
// children of half measure, so every split factor equals the growth bound.
struct DyadicFiltration {
    int depth = 0;
    static constexpr double growth = 0.5;
};

// Adapted process on the dyadic filtration: levels[n][k] is the value on
// the k-th level-n atom. A valid martingale additionally satisfies the
// conditional-mean identity (children average to the parent) on every atom.
struct FiniteMartingale {
    DyadicFiltration filtration;
    std::vector<std::vector<double>> levels; // levels[n].size() == 2^n
};

// Worst conditional-mean violation max |(left + right)/2 - parent| over all
// atoms; 0 for an exact martingale. Throws DomainError on malformed shape.
double martingale_defect(const FiniteMartingale& f);

// Shape + martingale property within tol (default matches double rounding
// of exactly representable constructions). Throws DomainError on failure.
void check_martingale(const FiniteMartingale& f, double tol = 1e-12);

// E|f_N| under Lebesgue measure. |f_n| is a submartingale, so the final
// level realizes sup_n ||f_n||_1.
double martingale_l1(const FiniteMartingale& f);

// Bounded multiplier sequence alpha_0 .. alpha_{q-1}, extended periodically.
struct TransformSequence {
    std::vector<double> values;

    std::size_t period() const { return values.size(); }
    double at(std::size_t n) const { return values[n % values.size()]; }
};

// Martingale transform: partial sums sum_{j<=n} alpha_{j-1} (f_j - f_{j-1}),
// started at 0. The output is adapted and a martingale whenever f is one.
FiniteMartingale transform(const TransformSequence& alpha, const FiniteMartingale& f);

// Exact coefficients lambda with alphas[0] = sum_j lambda_j alphas[j] held
// pointwise over one common period (the lcm), solved in exact rationals, or
// nullopt when alphas[0] lies outside the span. Needs >= 2 sequences.
std::optional<std::vector<double>> span_test(const std::vector<TransformSequence>& alphas);

struct RatioSearchResult {
    double ratio = 0.0;        // best ||T_target f||_1 / sum_j ||T_j f||_1 found
    FiniteMartingale witness;  // the maximizing martingale
    long long evaluations = 0; // candidates with a nonzero denominator
};

// Best-found ratio over level-selective sign martingales: per-level
// participation flags with unit Haar increments and per-atom signs.
// Candidate phases: periodic participation patterns over the sequences'
// common period (all levels of one residue set plus single levels of
// another), `trials` random masks, then greedy toggling of one level at a
// time. Deterministic in the seed; reports best-found, never a supremum.
// Throws NumericError when every candidate annihilates the denominator.
RatioSearchResult ratio_search(const TransformSequence& target,
                               const std::vector<TransformSequence>& dominators,
                               int depth, int trials, std::uint64_t seed);

} // namespace ornstein
