#include "ornstein/rational_linalg.hpp"

#include <boost/multiprecision/cpp_int.hpp>

namespace ornstein {

int rref(RatMatrix& m, std::vector<int>* pivots) {
    if (pivots) pivots->clear();
    if (m.empty()) return 0;
    const int rows = static_cast<int>(m.size());
    const int cols = static_cast<int>(m[0].size());
    int rank = 0;
    for (int col = 0; col < cols && rank < rows; ++col) {
        int pivot = -1;
        for (int r = rank; r < rows; ++r) {
            if (m[r][col] != 0) {
                pivot = r;
                break;
            }
        }
        if (pivot < 0) continue;
        std::swap(m[rank], m[pivot]);
        const Rational inv = m[rank][col];
        for (int c = col; c < cols; ++c) m[rank][c] /= inv;
        for (int r = 0; r < rows; ++r) {
            if (r == rank || m[r][col] == 0) continue;
            const Rational factor = m[r][col];
            for (int c = col; c < cols; ++c) m[r][c] -= factor * m[rank][c];
        }
        if (pivots) pivots->push_back(col);
        ++rank;
    }
    return rank;
}

int rank(RatMatrix m) { return rref(m); }

std::optional<RatVector> solve(const RatMatrix& a, const RatVector& b) {
    const int rows = static_cast<int>(a.size());
    const int cols = rows ? static_cast<int>(a[0].size()) : 0;
    RatMatrix aug(a);
    for (int r = 0; r < rows; ++r) aug[r].push_back(b[r]);
    std::vector<int> pivots;
    const int rk = rref(aug, &pivots);
    for (int r = 0; r < rk; ++r)
        if (pivots[r] == cols) return std::nullopt; // pivot in the rhs column
    RatVector x(cols, Rational(0));
    for (int r = 0; r < rk; ++r) x[pivots[r]] = aug[r][cols];
    return x;
}

RatMatrix nullspace(const RatMatrix& a) {
    if (a.empty()) return {};
    const int cols = static_cast<int>(a[0].size());
    RatMatrix m(a);
    std::vector<int> pivots;
    const int rk = rref(m, &pivots);
    std::vector<bool> is_pivot(cols, false);
    for (int p : pivots) is_pivot[p] = true;
    RatMatrix basis;
    for (int free = 0; free < cols; ++free) {
        if (is_pivot[free]) continue;
        RatVector v(cols, Rational(0));
        v[free] = 1;
        for (int r = 0; r < rk; ++r) v[pivots[r]] = -m[r][free];
        basis.push_back(std::move(v));
    }
    return basis;
}

RatVector primitive_integer_direction(const RatVector& v) {
    BigInt lcm_den = 1;
    for (const auto& x : v) {
        const BigInt den = boost::multiprecision::denominator(x);
        lcm_den = boost::multiprecision::lcm(lcm_den, den);
    }
    std::vector<BigInt> ints;
    ints.reserve(v.size());
    BigInt content = 0;
    for (const auto& x : v) {
        BigInt n = boost::multiprecision::numerator(x) *
                   (lcm_den / boost::multiprecision::denominator(x));
        content = boost::multiprecision::gcd(content, n);
        ints.push_back(std::move(n));
    }
    if (content == 0) return RatVector(v.size(), Rational(0));
    for (const auto& n : ints) {
        if (n != 0) {
            if (n < 0) content = -content;
            break;
        }
    }
    RatVector out;
    out.reserve(v.size());
    for (auto& n : ints) out.emplace_back(n / content);
    return out;
}

} // namespace ornstein
