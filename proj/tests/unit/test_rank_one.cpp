#include <doctest.h>

#include "ornstein/error.hpp"
#include "ornstein/rank_one.hpp"
#include "support/generators.hpp"

using namespace ornstein;

namespace {

GradientSpace hessian_space() {
    std::vector<DifferentialOperator> ops{
        parse_operator("d1*d2", 2, "T1"),
        parse_operator("d1^2", 2, "T2"),
        parse_operator("d2^2", 2, "T3"),
    };
    return build_gradient_space(ops);
}

} // namespace

TEST_CASE("rank-one coordinates are signed monomials") {
    const auto space = hessian_space();
    // cells in lex order: (0,2), (1,1), (2,0)
    const auto e = rank_one_vector(space, {2.0, 3.0}, {2, 0});
    REQUIRE(e.size() == 3);
    CHECK(e[0] == doctest::Approx(9.0));  // x2^2, sign (+1)^((2+2)/2)
    CHECK(e[1] == doctest::Approx(6.0));  // x1*x2
    CHECK(e[2] == doctest::Approx(4.0));  // x1^2

    const auto exact = rank_one_vector_exact(space, {Rational(2), Rational(3)}, {2, 0});
    CHECK(exact[0] == Rational(9));
    CHECK(exact[1] == Rational(6));
    CHECK(exact[2] == Rational(4));
}

TEST_CASE("changing the reference cell flips the global sign by half the degree gap") {
    // Cells of degrees 2 and 4 on the plane 2*g1 + g2 = 4 with gamma=(2,1).
    std::vector<DifferentialOperator> ops{
        parse_operator("d1^2", 2, "T1"),
        parse_operator("d2^4", 2, "T2"),
    };
    const auto space = build_gradient_space(ops);
    const std::vector<double> x{1.5, -0.5};
    const auto a = rank_one_vector(space, x, {2, 0});
    const auto b = rank_one_vector(space, x, {0, 4});
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i] == doctest::Approx(-b[i]));
}

TEST_CASE("mixed parity cells reject rank-one vectors") {
    std::vector<DifferentialOperator> ops{
        parse_operator("d1^2*d3 - d2^3*d3", 3, "T1"),
        parse_operator("d1^4", 3, "T2"),
        parse_operator("d2^6", 3, "T3"),
        parse_operator("d3^2", 3, "T4"),
    };
    const auto space = build_gradient_space(ops);
    CHECK_THROWS_AS(rank_one_vector(space, {1.0, 1.0, 1.0}, {4, 0, 0}), DomainError);
}

TEST_CASE("alpha0 must be one of the cells") {
    const auto space = hessian_space();
    CHECK_THROWS_AS(rank_one_vector(space, {1.0, 1.0}, {4, 0}), DomainError);
}

TEST_CASE("rank-one vectors of the quadratic family span all of E") {
    const auto space = hessian_space();
    CHECK(rank_one_span_dim(space, 6, 0x123456ULL) == 3);
}

TEST_CASE("random same-parity spaces are spanned by their rank-one vectors") {
    SplitMix64 rng(0xabcdefULL);
    int built = 0;
    for (int trial = 0; built < 10 && trial < 200; ++trial) {
        auto space = ornstein::testing::random_same_parity_space(rng);
        if (!space) continue;
        ++built;
        const int n = space->cell_count();
        CHECK(rank_one_span_dim(*space, n + 3, rng.next()) == n);
    }
    CHECK(built == 10);
}
