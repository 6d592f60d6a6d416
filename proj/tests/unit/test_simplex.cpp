#include <cmath>
#include <vector>

#include "doctest.h"

#include "ornstein/error.hpp"
#include "ornstein/simplex.hpp"

using namespace ornstein;

TEST_CASE("a two-variable program reaches its known vertex") {
    // max 3x + 2y, x + y <= 4, x + 3y <= 6: optimum 12 at (4, 0).
    const std::vector<std::vector<double>> A = {{1.0, 1.0}, {1.0, 3.0}};
    const std::vector<double> b = {4.0, 6.0};
    const std::vector<double> c = {3.0, 2.0};

    SimplexResult r = simplex_max(A, b, c);
    REQUIRE(r.status == SimplexStatus::Optimal);
    CHECK(r.objective == doctest::Approx(12.0).epsilon(1e-12));
    CHECK(r.x[0] == doctest::Approx(4.0).epsilon(1e-12));
    CHECK(std::abs(r.x[1]) <= 1e-12);

    // Dual feasibility and complementary slackness at the optimum.
    REQUIRE(r.dual.size() == 2);
    for (double y : r.dual) CHECK(y >= -1e-12);
    for (double z : r.reduced_costs) CHECK(z >= -1e-12);
    const double dual_obj = r.dual[0] * b[0] + r.dual[1] * b[1];
    CHECK(dual_obj == doctest::Approx(r.objective).epsilon(1e-10));
}

TEST_CASE("a degenerate vertex is still solved to optimality") {
    // Three constraints meet at (1, 1); max x + y has optimum 2 there.
    const std::vector<std::vector<double>> A = {
        {1.0, 0.0}, {0.0, 1.0}, {1.0, 1.0}};
    const std::vector<double> b = {1.0, 1.0, 2.0};
    const std::vector<double> c = {1.0, 1.0};

    SimplexResult r = simplex_max(A, b, c);
    REQUIRE(r.status == SimplexStatus::Optimal);
    CHECK(r.objective == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("an unbounded ray is reported as unbounded") {
    // max x + y with only x - y <= 1: grows along the ray (t, t).
    const std::vector<std::vector<double>> A = {{1.0, -1.0}};
    const std::vector<double> b = {1.0};
    const std::vector<double> c = {1.0, 1.0};

    SimplexResult r = simplex_max(A, b, c);
    CHECK(r.status == SimplexStatus::Unbounded);
}

TEST_CASE("the zero objective stops at the slack basis") {
    const std::vector<std::vector<double>> A = {{2.0, 1.0}};
    const std::vector<double> b = {3.0};
    const std::vector<double> c = {0.0, 0.0};

    SimplexResult r = simplex_max(A, b, c);
    REQUIRE(r.status == SimplexStatus::Optimal);
    CHECK(r.objective == 0.0);
    CHECK(r.pivots == 0);
}

TEST_CASE("malformed programs are rejected") {
    CHECK_THROWS_AS(simplex_max({}, {}, {}), DomainError);
    CHECK_THROWS_AS(simplex_max({{1.0}}, {-1.0}, {1.0}), DomainError);
    CHECK_THROWS_AS(simplex_max({{1.0, 2.0}}, {1.0}, {1.0}), DomainError);
    CHECK_THROWS_AS(simplex_max({{1.0}}, {1.0, 2.0}, {1.0}), DomainError);
}
