#include "ornstein/rational.hpp"

#include <cctype>
#include <cmath>

namespace ornstein {

namespace {

bool all_digits(const std::string& s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

} // namespace

Rational rational_from_decimal(const std::string& text) {
    std::string s = text;
    bool negative = false;
    if (!s.empty() && (s[0] == '+' || s[0] == '-')) {
        negative = s[0] == '-';
        s.erase(0, 1);
    }
    const auto dot = s.find('.');
    std::string whole = dot == std::string::npos ? s : s.substr(0, dot);
    std::string frac = dot == std::string::npos ? "" : s.substr(dot + 1);
    if (whole.empty() && frac.empty())
        throw ParseError("empty decimal literal '" + text + "'", 0);
    if ((!whole.empty() && !all_digits(whole)) || (!frac.empty() && !all_digits(frac)))
        throw ParseError("malformed decimal literal '" + text + "'", 0);
    BigInt numerator = whole.empty() ? BigInt(0) : BigInt(whole);
    BigInt denominator = 1;
    for (char c : frac) {
        numerator *= 10;
        numerator += c - '0';
        denominator *= 10;
    }
    Rational r(numerator, denominator);
    return negative ? Rational(-r) : r;
}

Rational parse_rational(const std::string& text) {
    if (text.find('.') != std::string::npos) return rational_from_decimal(text);
    const auto slash = text.find('/');
    try {
        if (slash == std::string::npos) return Rational(BigInt(text));
        BigInt p(text.substr(0, slash));
        BigInt q(text.substr(slash + 1));
        if (q == 0) throw ParseError("zero denominator in '" + text + "'", 0);
        return Rational(p, q);
    } catch (const std::runtime_error&) {
        throw ParseError("malformed rational '" + text + "'", 0);
    }
}

Rational rational_from_double(double v) {
    if (!std::isfinite(v)) throw NumericError("cannot represent a non-finite value exactly");
    int exp = 0;
    const double mant = std::frexp(v, &exp);
    const long long num = std::llround(std::ldexp(mant, 53));
    Rational r(num);
    const int shift = exp - 53;
    BigInt two = 1;
    two <<= static_cast<unsigned>(shift < 0 ? -shift : shift);
    if (shift >= 0) r *= Rational(two);
    else r /= Rational(two);
    return r;
}

} // namespace ornstein
