#include <cmath>
#include <vector>

#include "doctest.h"

#include "ornstein/error.hpp"
#include "ornstein/martingale.hpp"

using namespace ornstein;

namespace {

// Exact martingale from per-atom Haar increments: children = parent +- inc.
FiniteMartingale from_increments(double start,
                                 const std::vector<std::vector<double>>& inc) {
    FiniteMartingale f;
    f.filtration.depth = static_cast<int>(inc.size());
    f.levels.resize(inc.size() + 1);
    f.levels[0] = {start};
    for (std::size_t n = 0; n < inc.size(); ++n) {
        const auto& parent = f.levels[n];
        auto& level = f.levels[n + 1];
        level.resize(2 * parent.size());
        for (std::size_t k = 0; k < parent.size(); ++k) {
            level[2 * k] = parent[k] + inc[n][k];
            level[2 * k + 1] = parent[k] - inc[n][k];
        }
    }
    return f;
}

FiniteMartingale sample_depth3() {
    return from_increments(0.25, {{0.5}, {0.25, 1.0}, {0.5, -0.25, 2.0, 0.125}});
}

} // namespace

TEST_CASE("the filtration splits atoms at exactly the growth bound") {
    CHECK(DyadicFiltration::growth == 0.5);
    const FiniteMartingale f = sample_depth3();
    for (std::size_t n = 0; n + 1 < f.levels.size(); ++n)
        CHECK(f.levels[n + 1].size() == 2 * f.levels[n].size());
}

TEST_CASE("haar constructions are exact martingales") {
    const FiniteMartingale f = sample_depth3();
    CHECK(martingale_defect(f) == 0.0);
    CHECK_NOTHROW(check_martingale(f, 0.0));
}

TEST_CASE("the constant-one multiplier telescopes") {
    const FiniteMartingale f = sample_depth3();
    const FiniteMartingale g = transform({{1.0}}, f);
    CHECK(martingale_defect(g) == 0.0);
    REQUIRE(g.levels.back().size() == f.levels.back().size());
    for (std::size_t k = 0; k < g.levels.back().size(); ++k)
        CHECK(g.levels.back()[k] == f.levels.back()[k] - 0.25);
}

TEST_CASE("the zero multiplier annihilates") {
    const FiniteMartingale g = transform({{0.0}}, sample_depth3());
    for (const auto& level : g.levels)
        for (double v : level) CHECK(v == 0.0);
}

TEST_CASE("one haar step doubles under the two multiplier") {
    const FiniteMartingale f = from_increments(0.0, {{1.0}});
    const FiniteMartingale g = transform({{2.0}}, f);
    REQUIRE(g.levels.back().size() == 2);
    CHECK(g.levels.back()[0] == 2.0);
    CHECK(g.levels.back()[1] == -2.0);
}

TEST_CASE("transforms are exactly linear in the multiplier") {
    const FiniteMartingale f = sample_depth3();
    const TransformSequence alpha = {{1.0, 0.5}};
    const TransformSequence beta = {{0.25, 1.0}};
    const TransformSequence combo = {{2.0 * 1.0 + 4.0 * 0.25, 2.0 * 0.5 + 4.0 * 1.0}};
    const FiniteMartingale ga = transform(alpha, f);
    const FiniteMartingale gb = transform(beta, f);
    const FiniteMartingale gc = transform(combo, f);
    for (std::size_t n = 0; n < gc.levels.size(); ++n)
        for (std::size_t k = 0; k < gc.levels[n].size(); ++k)
            CHECK(gc.levels[n][k] == 2.0 * ga.levels[n][k] + 4.0 * gb.levels[n][k]);
}

TEST_CASE("the final-level norm is the plain average") {
    const FiniteMartingale f = from_increments(0.0, {{1.0}});
    CHECK(martingale_l1(f) == 1.0);
    const FiniteMartingale g = from_increments(0.5, {{0.5}});
    CHECK(martingale_l1(g) == 0.5);
}

TEST_CASE("malformed processes are rejected") {
    FiniteMartingale f = sample_depth3();
    f.filtration.depth = 2;
    CHECK_THROWS_AS(martingale_defect(f), DomainError);
    f = sample_depth3();
    f.levels[2].push_back(0.0);
    CHECK_THROWS_AS(martingale_defect(f), DomainError);
    f = sample_depth3();
    f.levels[3][1] += 0.5; // breaks the conditional mean
    CHECK(martingale_defect(f) == 0.25);
    CHECK_THROWS_AS(check_martingale(f), DomainError);
    CHECK_THROWS_AS(transform({{1.0}}, f), DomainError);
    CHECK_THROWS_AS(transform({{}}, sample_depth3()), DomainError);
}

TEST_CASE("identical sequences span each other with unit coefficient") {
    const TransformSequence a = {{1.0, -0.5, 0.25}};
    const auto lambda = span_test({a, a});
    REQUIRE(lambda.has_value());
    REQUIRE(lambda->size() == 1);
    CHECK((*lambda)[0] == 1.0);
}

TEST_CASE("the alternating pair is independent") {
    const TransformSequence a = {{1.0, 0.0}};
    const TransformSequence b = {{0.0, 1.0}};
    CHECK(!span_test({a, b}).has_value());
}

TEST_CASE("an exact combination is recovered across periods") {
    const TransformSequence a2 = {{1.0, 0.5, 0.25}};
    const TransformSequence a3 = {{0.0, 1.0, 0.0}};
    TransformSequence a1;
    for (std::size_t i = 0; i < 3; ++i)
        a1.values.push_back(2.0 * a2.values[i] + a3.values[i]);
    const auto lambda = span_test({a1, a2, a3});
    REQUIRE(lambda.has_value());
    REQUIRE(lambda->size() == 2);
    CHECK((*lambda)[0] == 2.0);
    CHECK((*lambda)[1] == 1.0);

    // Periods 1 and 2 meet in the lcm period.
    const auto unit = span_test({{{3.0}}, {{3.0, 3.0}}});
    REQUIRE(unit.has_value());
    CHECK((*unit)[0] == 1.0);
}

TEST_CASE("span requests are validated") {
    CHECK_THROWS_AS(span_test({{{1.0}}}), DomainError);
    CHECK_THROWS_AS(span_test({{{1.0}}, {{}}}), DomainError);
    TransformSequence big1, big2;
    big1.values.assign(2048, 1.0);
    big2.values.assign(1025, 1.0);
    CHECK_THROWS_AS(span_test({big1, big2}), DomainError);
}

TEST_CASE("a sequence against itself has ratio exactly one") {
    const TransformSequence a = {{1.0, 0.75}};
    const RatioSearchResult r = ratio_search(a, {a}, 6, 8, 7u);
    CHECK(r.ratio == 1.0);
    CHECK(r.evaluations > 0);
    CHECK(martingale_defect(r.witness) == 0.0);
}

TEST_CASE("doubling the sequence doubles the ratio exactly") {
    const TransformSequence half = {{0.5, 1.0, 0.25}};
    TransformSequence twice;
    for (double v : half.values) twice.values.push_back(2.0 * v);
    const RatioSearchResult r = ratio_search(twice, {half}, 6, 8, 7u);
    CHECK(r.ratio == 2.0);
}

TEST_CASE("the alternating pair beats any fixed constant as depth grows") {
    const TransformSequence odd = {{1.0, 0.0}};
    const TransformSequence even = {{0.0, 1.0}};
    const RatioSearchResult r8 = ratio_search(odd, {even}, 8, 16, 11u);
    const RatioSearchResult r16 = ratio_search(odd, {even}, 16, 16, 11u);
    // All-odd-levels + one even level: the walk means are dyadic and exact.
    CHECK(r8.ratio == 1.5);
    CHECK(r16.ratio == 2.1875);
    CHECK(r16.ratio >= 1.05 * r8.ratio);

    // The witness really achieves the reported ratio.
    const double num = martingale_l1(transform(odd, r16.witness));
    const double den = martingale_l1(transform(even, r16.witness));
    CHECK(num / den == r16.ratio);
    CHECK_NOTHROW(check_martingale(r16.witness, 0.0));
}

TEST_CASE("the search is deterministic in the seed") {
    const TransformSequence a = {{1.0, 0.25}};
    const TransformSequence b = {{0.5, 1.0}};
    const RatioSearchResult r1 = ratio_search(a, {b}, 7, 24, 99u);
    const RatioSearchResult r2 = ratio_search(a, {b}, 7, 24, 99u);
    CHECK(r1.ratio == r2.ratio);
    REQUIRE(r1.witness.levels.back().size() == r2.witness.levels.back().size());
    for (std::size_t k = 0; k < r1.witness.levels.back().size(); ++k)
        CHECK(r1.witness.levels.back()[k] == r2.witness.levels.back()[k]);
}

TEST_CASE("a spanned sequence never exceeds the coefficient mass") {
    const TransformSequence a2 = {{1.0, 0.5, 0.25}};
    const TransformSequence a3 = {{0.0, 1.0, 0.0}};
    TransformSequence a1;
    for (std::size_t i = 0; i < 3; ++i)
        a1.values.push_back(2.0 * a2.values[i] + a3.values[i]);
    const auto lambda = span_test({a1, a2, a3});
    REQUIRE(lambda.has_value());
    double mass = 0.0;
    for (double l : *lambda) mass += std::abs(l);
    const RatioSearchResult r = ratio_search(a1, {a2, a3}, 8, 32, 5u);
    CHECK(r.ratio <= mass * (1.0 + 1e-12));
}

TEST_CASE("search requests are validated") {
    const TransformSequence a = {{1.0}};
    CHECK_THROWS_AS(ratio_search(a, {a}, 0, 4, 1u), DomainError);
    CHECK_THROWS_AS(ratio_search(a, {a}, 25, 4, 1u), DomainError);
    CHECK_THROWS_AS(ratio_search(a, {a}, 4, -1, 1u), DomainError);
    CHECK_THROWS_AS(ratio_search(a, {}, 4, 4, 1u), DomainError);
    const TransformSequence zero = {{0.0, 0.0}};
    CHECK_THROWS_AS(ratio_search(a, {zero}, 4, 4, 1u), NumericError);
}
