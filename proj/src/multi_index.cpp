#include "ornstein/multi_index.hpp"

namespace ornstein {

int degree(const MultiIndex& alpha) {
    int sum = 0;
    for (int a : alpha) sum += a;
    return sum;
}

bool is_valid_multi_index(const MultiIndex& alpha) {
    if (alpha.empty()) return false;
    for (int a : alpha)
        if (a < 0) return false;
    return true;
}

std::string format_multi_index(const MultiIndex& alpha) {
    std::string out = "(";
    for (std::size_t i = 0; i < alpha.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(alpha[i]);
    }
    out += ')';
    return out;
}

} // namespace ornstein
