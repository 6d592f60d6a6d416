#pragma once

#include <string>

#include <boost/multiprecision/cpp_int.hpp>

#include "ornstein/error.hpp"

namespace ornstein {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline double to_double(const Rational& r) { return r.template convert_to<double>(); }

inline std::string to_string(const Rational& r) { return r.str(); }

// Exact conversion of a decimal literal such as "0.25" or "-3.125".
// No rounding: the value is digits / 10^(fraction length).
Rational rational_from_decimal(const std::string& text);

// Accepts "p", "p/q" or a decimal literal. Throws ParseError on anything else.
Rational parse_rational(const std::string& text);

// Exact value of a finite double (every finite double is a dyadic rational).
// Throws NumericError on NaN or infinity.
Rational rational_from_double(double v);

} // namespace ornstein
