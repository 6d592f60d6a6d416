#include <cmath>
#include <vector>

#include "doctest.h"

#include "ornstein/error.hpp"
#include "ornstein/harmonic_example.hpp"

using namespace ornstein;

TEST_CASE("pinned values on the unit structure") {
    // (r^2 - x4^2) / r with r^2 = x1^2 + x2^2 + x3^2.
    CHECK(harmonic_example_value({0.0, 0.0, 1.0, 2.0}) == -3.0);
    CHECK(harmonic_example_value({1.0, 0.0, 0.0, 0.0}) == 1.0);
    CHECK(harmonic_example_value({0.0, 3.0, 4.0, 0.0}) == 5.0);
    CHECK(harmonic_example_value({0.0, 0.0, 2.0, 2.0}) == 0.0);
}

TEST_CASE("the example is positively one-homogeneous in absolute value") {
    const std::vector<double> base = {0.3, -1.2, 0.7, 1.9};
    const double v = harmonic_example_value(base);
    for (double lambda : {-2.0, 0.5, 3.0}) {
        std::vector<double> scaled = base;
        for (double& s : scaled) s *= lambda;
        CHECK(harmonic_example_value(scaled) ==
              doctest::Approx(std::abs(lambda) * v).epsilon(1e-12));
    }
}

TEST_CASE("the singular axis and wrong arity are rejected") {
    CHECK_THROWS_AS(harmonic_example_value({0.0, 0.0, 0.0, 1.0}), DomainError);
    CHECK_THROWS_AS(harmonic_example_value({1.0, 2.0, 3.0}), DomainError);
    CHECK_THROWS_AS(harmonic_example_value({1.0, 2.0, 3.0, 4.0, 5.0}), DomainError);
}

TEST_CASE("the discrete Laplacian vanishes away from the axis") {
    const double h = 1e-2;
    CHECK(std::abs(harmonic_example_discrete_laplacian({1.0, 0.0, 0.0, 0.0}, h)) <= 1e-3);
    CHECK(std::abs(harmonic_example_discrete_laplacian({0.6, -0.8, 0.5, 1.5}, h)) <= 1e-3);
    CHECK(std::abs(harmonic_example_discrete_laplacian({0.0, 0.0, 0.7, -1.1}, h)) <= 1e-3);
}

TEST_CASE("a random scan stays harmonic to stencil accuracy") {
    const double worst = harmonic_example_laplacian_scan(100, 20240817u, 1e-2);
    CHECK(worst <= 1e-3);
    CHECK(worst >= 0.0);
}

TEST_CASE("a stencil that bridges the singular gap is rejected") {
    // Radius 0.5 with h = 0.2 puts the 9-point stencil across the axis.
    CHECK_THROWS_AS(harmonic_example_laplacian_scan(10, 1u, 0.2), DomainError);
    CHECK_THROWS_AS(harmonic_example_discrete_laplacian({0.5, 0.0, 0.0, 0.0}, 0.2),
                    DomainError);
}
