#include "ornstein/martingale.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "ornstein/error.hpp"
#include "ornstein/rational.hpp"
#include "ornstein/rational_linalg.hpp"
#include "ornstein/rng.hpp"

namespace ornstein {

namespace {

void check_shape(const FiniteMartingale& f) {
    const int depth = f.filtration.depth;
    if (depth < 0 || depth > 30) throw DomainError("martingale depth out of range");
    if (f.levels.size() != static_cast<std::size_t>(depth) + 1)
        throw DomainError("level count does not match the filtration depth");
    for (int n = 0; n <= depth; ++n)
        if (f.levels[static_cast<std::size_t>(n)].size() != (std::size_t{1} << n))
            throw DomainError("level " + std::to_string(n) + " does not have 2^n atoms");
}

void check_sequence(const TransformSequence& alpha) {
    if (alpha.values.empty()) throw DomainError("multiplier sequence needs period >= 1");
    for (double v : alpha.values)
        if (!std::isfinite(v)) throw DomainError("multiplier sequence must be finite");
}

// Transform without revalidating f; callers guarantee the shape.
FiniteMartingale transform_core(const TransformSequence& alpha, const FiniteMartingale& f) {
    const int depth = f.filtration.depth;
    FiniteMartingale g;
    g.filtration = f.filtration;
    g.levels.resize(static_cast<std::size_t>(depth) + 1);
    g.levels[0] = {0.0};
    for (int n = 1; n <= depth; ++n) {
        const double a = alpha.at(static_cast<std::size_t>(n - 1));
        const auto& fn = f.levels[static_cast<std::size_t>(n)];
        const auto& fparent = f.levels[static_cast<std::size_t>(n - 1)];
        const auto& gparent = g.levels[static_cast<std::size_t>(n - 1)];
        auto& gn = g.levels[static_cast<std::size_t>(n)];
        gn.resize(std::size_t{1} << n);
        for (std::size_t k = 0; k < fparent.size(); ++k) {
            gn[2 * k] = gparent[k] + a * (fn[2 * k] - fparent[k]);
            gn[2 * k + 1] = gparent[k] + a * (fn[2 * k + 1] - fparent[k]);
        }
    }
    return g;
}

double l1_final(const FiniteMartingale& f) {
    const auto& last = f.levels.back();
    double sum = 0.0;
    for (double v : last) sum += std::abs(v);
    return sum / static_cast<double>(last.size());
}

// Level-selective sign martingale: participating levels carry unit Haar
// increments with per-atom signs; the rest copy the parent. Signs do not
// change the law of any transform (children are exchanged at random along a
// uniform path), so the ratio depends on the participation mask alone; they
// are kept because candidates must be concrete martingales.
struct SignCandidate {
    std::vector<char> on;               // per level 1..depth
    std::vector<std::vector<double>> sign; // sign[n-1][k] in {-1, +1}

    static SignCandidate plus(int depth) {
        SignCandidate c;
        c.on.assign(static_cast<std::size_t>(depth), 0);
        c.sign.resize(static_cast<std::size_t>(depth));
        for (int n = 1; n <= depth; ++n)
            c.sign[static_cast<std::size_t>(n - 1)].assign(std::size_t{1} << (n - 1), 1.0);
        return c;
    }
};

FiniteMartingale assemble(int depth, const SignCandidate& cand) {
    FiniteMartingale f;
    f.filtration.depth = depth;
    f.levels.resize(static_cast<std::size_t>(depth) + 1);
    f.levels[0] = {0.0};
    for (int n = 1; n <= depth; ++n) {
        const bool active = cand.on[static_cast<std::size_t>(n - 1)] != 0;
        const auto& parent = f.levels[static_cast<std::size_t>(n - 1)];
        const auto& sgn = cand.sign[static_cast<std::size_t>(n - 1)];
        auto& level = f.levels[static_cast<std::size_t>(n)];
        level.resize(std::size_t{1} << n);
        for (std::size_t k = 0; k < parent.size(); ++k) {
            const double v = active ? sgn[k] : 0.0;
            level[2 * k] = parent[k] + v;
            level[2 * k + 1] = parent[k] - v;
        }
    }
    return f;
}

} // namespace

double martingale_defect(const FiniteMartingale& f) {
    check_shape(f);
    double worst = 0.0;
    for (std::size_t n = 0; n + 1 < f.levels.size(); ++n) {
        const auto& parent = f.levels[n];
        const auto& child = f.levels[n + 1];
        for (std::size_t k = 0; k < parent.size(); ++k)
            worst = std::max(worst,
                             std::abs(0.5 * (child[2 * k] + child[2 * k + 1]) - parent[k]));
    }
    return worst;
}

void check_martingale(const FiniteMartingale& f, double tol) {
    const double defect = martingale_defect(f);
    if (!(defect <= tol))
        throw DomainError("martingale property violated: conditional-mean defect " +
                          std::to_string(defect));
}

double martingale_l1(const FiniteMartingale& f) {
    check_shape(f);
    return l1_final(f);
}

FiniteMartingale transform(const TransformSequence& alpha, const FiniteMartingale& f) {
    check_sequence(alpha);
    check_martingale(f);
    return transform_core(alpha, f);
}

std::optional<std::vector<double>> span_test(const std::vector<TransformSequence>& alphas) {
    if (alphas.size() < 2) throw DomainError("span test needs at least two sequences");
    long long period = 1;
    for (const auto& a : alphas) {
        check_sequence(a);
        period = std::lcm(period, static_cast<long long>(a.period()));
        if (period > (1ll << 20)) throw DomainError("common period is too large");
    }
    const std::size_t rows = static_cast<std::size_t>(period);
    const std::size_t cols = alphas.size() - 1;
    RatMatrix a(rows, RatVector(cols));
    RatVector b(rows);
    for (std::size_t n = 0; n < rows; ++n) {
        b[n] = rational_from_double(alphas[0].at(n));
        for (std::size_t j = 0; j < cols; ++j)
            a[n][j] = rational_from_double(alphas[j + 1].at(n));
    }
    const auto sol = solve(a, b);
    if (!sol) return std::nullopt;
    std::vector<double> lambda(cols);
    for (std::size_t j = 0; j < cols; ++j) lambda[j] = to_double((*sol)[j]);
    return lambda;
}

RatioSearchResult ratio_search(const TransformSequence& target,
                               const std::vector<TransformSequence>& dominators,
                               int depth, int trials, std::uint64_t seed) {
    if (depth < 1 || depth > 24) throw DomainError("depth must be between 1 and 24");
    if (trials < 0) throw DomainError("trial count must be nonnegative");
    if (dominators.empty()) throw DomainError("need at least one comparison sequence");
    check_sequence(target);
    for (const auto& d : dominators) check_sequence(d);

    RatioSearchResult result;
    bool have = false;
    SignCandidate best = SignCandidate::plus(depth);

    const auto consider = [&](const SignCandidate& cand) {
        const FiniteMartingale f = assemble(depth, cand);
        const double num = l1_final(transform_core(target, f));
        double den = 0.0;
        for (const auto& d : dominators) den += l1_final(transform_core(d, f));
        if (den == 0.0) return;
        ++result.evaluations;
        const double ratio = num / den;
        if (!have || ratio > result.ratio) {
            have = true;
            result.ratio = ratio;
            best = cand;
        }
    };

    // Periodic-pattern phase over the common period q: each residue class is
    // either off, on at every level, or on at its first level only. The
    // "all of one class + first of another" shape is the lacunary analogue
    // of a laminate: it stacks every increment the target sequence sees
    // while paying for a single comparison increment. The full 3^q sweep is
    // budgeted; past the budget only the pairwise shapes are kept.
    long long q = static_cast<long long>(target.period());
    for (const auto& d : dominators) q = std::lcm(q, static_cast<long long>(d.period()));
    q = std::min<long long>(std::min<long long>(q, depth), 12);
    const auto pattern_candidate = [&](const std::vector<int>& code) {
        SignCandidate cand = SignCandidate::plus(depth);
        std::vector<char> first_done(static_cast<std::size_t>(q), 0);
        for (int n = 1; n <= depth; ++n) {
            const std::size_t r = static_cast<std::size_t>((n - 1) % q);
            if (code[r] == 1) cand.on[static_cast<std::size_t>(n - 1)] = 1;
            if (code[r] == 2 && !first_done[r]) {
                cand.on[static_cast<std::size_t>(n - 1)] = 1;
                first_done[r] = 1;
            }
        }
        consider(cand);
    };
    double full_sweep_cost = std::pow(3.0, static_cast<double>(q)) *
                             std::ldexp(1.0, depth);
    if (full_sweep_cost <= std::ldexp(1.0, 28)) {
        std::vector<int> code(static_cast<std::size_t>(q), 0);
        for (;;) {
            pattern_candidate(code);
            std::size_t i = 0;
            while (i < code.size() && code[i] == 2) code[i++] = 0;
            if (i == code.size()) break;
            ++code[i];
        }
    } else {
        for (long long ra = 0; ra < q; ++ra)
            for (long long rf = -1; rf < q; ++rf) {
                std::vector<int> code(static_cast<std::size_t>(q), 0);
                code[static_cast<std::size_t>(ra)] = 1;
                if (rf >= 0 && rf != ra) code[static_cast<std::size_t>(rf)] = 2;
                pattern_candidate(code);
            }
    }

    // Random phase: uniform participation masks with fresh per-atom signs.
    SplitMix64 rng(seed);
    for (int t = 0; t < trials; ++t) {
        SignCandidate cand = SignCandidate::plus(depth);
        for (int n = 1; n <= depth; ++n) {
            cand.on[static_cast<std::size_t>(n - 1)] =
                static_cast<char>(rng.next_below(2));
            for (double& s : cand.sign[static_cast<std::size_t>(n - 1)])
                s = rng.next_below(2) ? 1.0 : -1.0;
        }
        consider(cand);
    }

    // Greedy phase: toggle one level at a time, keep strict improvements,
    // sweep until stable. Coordinates are the per-level unit increments.
    if (have) {
        for (int sweep = 0; sweep < 8; ++sweep) {
            bool improved = false;
            for (int n = 1; n <= depth; ++n) {
                SignCandidate cand = best;
                cand.on[static_cast<std::size_t>(n - 1)] ^= 1;
                const double before = result.ratio;
                consider(cand);
                if (result.ratio > before) improved = true;
            }
            if (!improved) break;
        }
    }

    if (!have)
        throw NumericError("every candidate martingale annihilated the comparison transforms");
    result.witness = assemble(depth, best);
    return result;
}

} // namespace ornstein
