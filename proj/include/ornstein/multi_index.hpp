#pragma once

#include <string>
#include <vector>

namespace ornstein {

// A derivative exponent vector (alpha_1, ..., alpha_d), entries >= 0.
// std::vector's lexicographic operator< is the canonical order everywhere.
using MultiIndex = std::vector<int>;

// |alpha| = alpha_1 + ... + alpha_d.
int degree(const MultiIndex& alpha);

// 0 for even |alpha|, 1 for odd.
inline int parity_of(const MultiIndex& alpha) { return degree(alpha) & 1; }

bool is_valid_multi_index(const MultiIndex& alpha);

// "(2,0,1)"
std::string format_multi_index(const MultiIndex& alpha);

} // namespace ornstein
