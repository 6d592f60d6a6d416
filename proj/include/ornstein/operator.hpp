#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "ornstein/multi_index.hpp"
#include "ornstein/rational.hpp"

namespace ornstein {

// A constant-coefficient differential polynomial in d partials.
// Terms are kept canonical: keys lexicographically ordered (std::map),
// coefficients exact and nonzero.
struct DifferentialOperator {
    int dim = 0;
    std::string name;
    std::map<MultiIndex, Rational> terms;

    // Newton diagram: the exponent vectors of the monomials, lex order.
    std::vector<MultiIndex> diagram() const;

    int max_order_along(int axis) const; // max alpha_axis over terms
    int max_degree() const;

    bool operator==(const DifferentialOperator& other) const {
        return dim == other.dim && terms == other.terms;
    }
};

// Grammar:
//   expr   := ['+'|'-'] term (('+'|'-') term)*
//   term   := [rational '*'] mono
//   mono   := 'd^(' int (',' int)* ')' | factor ('*' factor)*
//   factor := 'd' index ['^' int]
// Rationals are "p", "p/q" or decimal literals (converted exactly).
// Like monomials merge; an operator whose terms all cancel is rejected.
DifferentialOperator parse_operator(const std::string& text, int dim,
                                    const std::string& name = "");

// Operator file: '#' starts a comment, first effective line is "dim=<d>",
// each following effective line is "name: expr".
std::vector<DifferentialOperator> read_operator_file(std::istream& in);
std::vector<DifferentialOperator> read_operator_file(const std::string& path);

std::string to_string(const DifferentialOperator& op);

} // namespace ornstein
