#include <cmath>
#include <numbers>

#include "doctest.h"

#include "ornstein/convexity.hpp"
#include "ornstein/error.hpp"

using namespace ornstein;

namespace {

double norm2(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return s;
}

} // namespace

TEST_CASE("a convex quadratic has nonpositive residuals with exact values") {
    const EEvaluator g = [](const std::vector<double>& v) { return norm2(v); };
    const std::vector<double> e = {0.3, -1.1, 2.0};
    const std::vector<double> d = {1.0, 1.0, 1.0};
    const std::vector<double> lambdas = {0.25, 0.5, 1.0, 2.0};

    MidpointReport rep = check_rank_one_midpoint(g, e, d, lambdas, 1e-12, 16);
    REQUIRE(rep.midpoint_residuals.size() == 4);
    for (std::size_t i = 0; i < lambdas.size(); ++i) {
        const double l2d2 = lambdas[i] * lambdas[i] * norm2(d);
        // Midpoint: cross terms cancel, the pure quadratic term survives.
        CHECK(rep.midpoint_residuals[i] == doctest::Approx(-l2d2).epsilon(1e-12));
        // Cosine mean: sum of cos vanishes, mean of cos^2 is exactly 1/2.
        CHECK(rep.cosine_residuals[i] == doctest::Approx(-0.5 * l2d2).epsilon(1e-12));
    }
    CHECK(rep.max_midpoint_residual < 0.0);
    CHECK(rep.max_cosine_residual < 0.0);
    CHECK(rep.convex_within_tolerance);
}

TEST_CASE("a concave quadratic is flagged with the exact positive residual") {
    const EEvaluator g = [](const std::vector<double>& v) { return -norm2(v); };
    const std::vector<double> e = {0.0, 0.0};
    const std::vector<double> d = {3.0, 4.0}; // ||d||^2 = 25

    MidpointReport rep = check_rank_one_midpoint(g, e, d, {1.0}, 1e-9);
    CHECK(rep.max_midpoint_residual == doctest::Approx(25.0).epsilon(1e-12));
    CHECK(rep.max_cosine_residual == doctest::Approx(12.5).epsilon(1e-12));
    CHECK_FALSE(rep.convex_within_tolerance);
}

TEST_CASE("affine evaluators have vanishing residuals") {
    const EEvaluator g = [](const std::vector<double>& v) {
        return 2.0 * v[0] - 3.0 * v[1] + 0.7;
    };
    MidpointReport rep =
        check_rank_one_midpoint(g, {1.0, 2.0}, {0.5, -0.25}, {0.5, 1.0, 4.0}, 1e-12);
    for (double r : rep.midpoint_residuals) CHECK(std::abs(r) <= 1e-12);
    for (double r : rep.cosine_residuals) CHECK(std::abs(r) <= 1e-12);
    CHECK(rep.convex_within_tolerance);
}

TEST_CASE("a kink in a concave term is detected exactly") {
    // g(e) = |e_0| + |e_2| - 0.9 |e_1|: convex where e_1 keeps its sign,
    // kinked at e_1 = 0. Probing across the kink isolates 0.9 * lambda.
    const EEvaluator g = [](const std::vector<double>& v) {
        return std::abs(v[0]) + std::abs(v[2]) - 0.9 * std::abs(v[1]);
    };
    const std::vector<double> d = {0.0, 1.0, 0.0};

    MidpointReport at_kink = check_rank_one_midpoint(g, {1.0, 0.0, 1.0}, d, {0.5}, 1e-9, 16);
    CHECK(at_kink.midpoint_residuals[0] == doctest::Approx(0.9 * 0.5).epsilon(1e-12));
    double mean_abs_cos = 0.0;
    for (int i = 0; i < 16; ++i)
        mean_abs_cos += std::abs(std::cos(2.0 * std::numbers::pi * i / 16.0)) / 16.0;
    CHECK(at_kink.cosine_residuals[0] == doctest::Approx(0.9 * 0.5 * mean_abs_cos).epsilon(1e-12));
    CHECK_FALSE(at_kink.convex_within_tolerance);

    // Away from the kink the probed segment is affine minus affine: flat.
    MidpointReport away = check_rank_one_midpoint(g, {1.0, 2.0, 1.0}, d, {0.5}, 1e-12, 16);
    CHECK(std::abs(away.midpoint_residuals[0]) <= 1e-12);
    CHECK(std::abs(away.cosine_residuals[0]) <= 1e-12);
    CHECK(away.convex_within_tolerance);
}

TEST_CASE("midpoint checker rejects malformed requests") {
    const EEvaluator g = [](const std::vector<double>& v) { return norm2(v); };
    CHECK_THROWS_AS(check_rank_one_midpoint(EEvaluator{}, {1.0}, {1.0}, {1.0}), DomainError);
    CHECK_THROWS_AS(check_rank_one_midpoint(g, {1.0, 2.0}, {1.0}, {1.0}), DomainError);
    CHECK_THROWS_AS(check_rank_one_midpoint(g, {}, {}, {1.0}), DomainError);
    CHECK_THROWS_AS(check_rank_one_midpoint(g, {1.0}, {1.0}, {}), DomainError);
    CHECK_THROWS_AS(check_rank_one_midpoint(g, {1.0}, {1.0}, {1.0}, 0.0, 2), DomainError);
}
