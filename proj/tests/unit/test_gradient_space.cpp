#include <doctest.h>

#include "ornstein/error.hpp"
#include "ornstein/gradient_space.hpp"

using namespace ornstein;

namespace {

std::vector<DifferentialOperator> family(std::initializer_list<const char*> exprs, int dim) {
    std::vector<DifferentialOperator> ops;
    int i = 0;
    for (const char* e : exprs)
        ops.push_back(parse_operator(e, dim, "T" + std::to_string(++i)));
    return ops;
}

} // namespace

TEST_CASE("gradient space collects cells in lex order with exact functionals") {
    const auto ops = family({"d1^2*d3 - d2^3*d3", "d1^4", "d2^6", "d3^2"}, 3);
    const auto space = build_gradient_space(ops);

    REQUIRE(space.cell_count() == 5);
    const std::vector<MultiIndex> expected{
        {0, 0, 2}, {0, 3, 1}, {0, 6, 0}, {2, 0, 1}, {4, 0, 0}};
    CHECK(space.cells == expected);

    REQUIRE(space.functional_count() == 4);
    CHECK(space.functionals[0][space.cell_index({2, 0, 1})] == Rational(1));
    CHECK(space.functionals[0][space.cell_index({0, 3, 1})] == Rational(-1));
    CHECK(space.functionals[1][space.cell_index({4, 0, 0})] == Rational(1));
    CHECK(space.functionals[1][space.cell_index({0, 0, 2})] == Rational(0));

    // Degrees 2, 4, 3, 6, 4 mix parities.
    CHECK(space.parity() == Parity::mixed);
    CHECK(!space.same_parity());
}

TEST_CASE("building a space without a common pattern fails") {
    CHECK_THROWS_AS(build_gradient_space(family({"d1", "d1^2"}, 1)), DomainError);
}

TEST_CASE("second-order isotropic space is even with three cells") {
    const auto space = build_gradient_space(family({"d1*d2", "d1^2", "d2^2"}, 2));
    CHECK(space.cell_count() == 3);
    CHECK(space.parity() == Parity::even);
    CHECK(space.pattern.gamma == std::vector<long long>{1, 1});
}

TEST_CASE("dependence coefficients are exact and complete") {
    SUBCASE("sum of the candidates") {
        const auto ops = family({"d1^2 + d2^2", "d1^2", "d2^2"}, 2);
        const auto lambda = dependence_coefficients(ops);
        REQUIRE(lambda.has_value());
        CHECK((*lambda)[0] == Rational(1));
        CHECK((*lambda)[1] == Rational(1));
    }
    SUBCASE("rational weights") {
        const auto ops = family({"1/2*d1^2 - 3*d1*d2", "d1^2", "d1*d2", "d2^2"}, 2);
        const auto lambda = dependence_coefficients(ops);
        REQUIRE(lambda.has_value());
        CHECK((*lambda)[0] == Rational(1, 2));
        CHECK((*lambda)[1] == Rational(-3));
        CHECK((*lambda)[2] == Rational(0));
    }
    SUBCASE("independent target") {
        const auto ops = family({"d1*d2", "d1^2", "d2^2"}, 2);
        CHECK(!dependence_coefficients(ops).has_value());
    }
    SUBCASE("shared monomials but inconsistent weights") {
        const auto ops = family({"d1^2 + 2*d2^2", "d1^2 + d2^2"}, 2);
        CHECK(!dependence_coefficients(ops).has_value());
    }
}
