#include <doctest.h>

#include <sstream>

#include "ornstein/error.hpp"
#include "ornstein/operator.hpp"

using namespace ornstein;

TEST_CASE("parser handles products, powers and tuple monomials") {
    const auto op = parse_operator("d1^2*d2 - d2^3", 2);
    REQUIRE(op.terms.size() == 2);
    CHECK(op.terms.at({2, 1}) == Rational(1));
    CHECK(op.terms.at({0, 3}) == Rational(-1));

    const auto tuple = parse_operator("d^(2,0,1)", 3);
    REQUIRE(tuple.terms.size() == 1);
    CHECK(tuple.terms.at({2, 0, 1}) == Rational(1));

    const auto mixed = parse_operator("1/2*d1*d2 + 0.25*d2^2", 2);
    CHECK(mixed.terms.at({1, 1}) == Rational(1, 2));
    CHECK(mixed.terms.at({0, 2}) == Rational(1, 4));
}

TEST_CASE("parser merges repeated monomials and accepts leading sign") {
    const auto op = parse_operator("-d1 + 3*d1 + d2", 2);
    CHECK(op.terms.at({1, 0}) == Rational(2));
    CHECK(op.terms.at({0, 1}) == Rational(1));

    const auto squared = parse_operator("d1*d1*d2^2", 2);
    CHECK(squared.terms.at({2, 2}) == Rational(1));
}

TEST_CASE("decimal coefficients convert exactly") {
    const auto op = parse_operator("0.1*d1", 1);
    CHECK(op.terms.at({1}) == Rational(1, 10));
    CHECK(parse_rational("2.375") == Rational(19, 8));
    CHECK(parse_rational("7/3") == Rational(7, 3));
}

TEST_CASE("parser rejects malformed input with positions") {
    CHECK_THROWS_AS(parse_operator("d3", 2), ParseError);
    CHECK_THROWS_AS(parse_operator("d1^", 2), ParseError);
    CHECK_THROWS_AS(parse_operator("2*", 2), ParseError);
    CHECK_THROWS_AS(parse_operator("d1 d2", 2), ParseError);
    CHECK_THROWS_AS(parse_operator("d^(1,2,3)", 2), ParseError);
    CHECK_THROWS_AS(parse_operator("d1^0", 2), ParseError);
    CHECK_THROWS_AS(parse_operator("", 2), ParseError);

    try {
        parse_operator("d1 + d9", 2);
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.position == 5); // points at the offending factor
    }
}

TEST_CASE("operators whose terms cancel are rejected") {
    CHECK_THROWS_AS(parse_operator("d1 - d1", 2), ParseError);
    CHECK_THROWS_AS(parse_operator("d1^2 + d1^2 - 2*d1^2", 2), ParseError);
}

TEST_CASE("operator files parse names, comments and dimension header") {
    std::istringstream file(
        "# a small family\n"
        "dim=2\n"
        "T1: d1*d2      # off-diagonal\n"
        "T2: d1^2\n"
        "T3: d2^2\n");
    const auto ops = read_operator_file(file);
    REQUIRE(ops.size() == 3);
    CHECK(ops[0].name == "T1");
    CHECK(ops[0].dim == 2);
    CHECK(ops[1].terms.at({2, 0}) == Rational(1));
    CHECK(ops[2].terms.at({0, 2}) == Rational(1));
}

TEST_CASE("operator files report the offending line") {
    std::istringstream missing_dim("T1: d1\n");
    CHECK_THROWS_AS(read_operator_file(missing_dim), ParseError);

    std::istringstream bad_expr("dim=2\nT1: d1 +\n");
    try {
        read_operator_file(bad_expr);
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.line == 2);
    }
}

TEST_CASE("printing is canonical and reparses to the same operator") {
    const auto op = parse_operator("d2^3 - 1/2*d1^2*d2 + d1", 2);
    const auto round = parse_operator(to_string(op), 2);
    CHECK(round == op);
}
