#include "ornstein/harmonic_example.hpp"

#include <cmath>

#include "ornstein/error.hpp"
#include "ornstein/field.hpp"
#include "ornstein/rng.hpp"

namespace ornstein {

double harmonic_example_value(const std::vector<double>& x) {
    if (x.size() != 4) throw DomainError("the example lives on R^4");
    const double r2 = x[0] * x[0] + x[1] * x[1] + x[2] * x[2];
    if (r2 == 0.0) throw DomainError("evaluation on the singular axis r = 0");
    return (r2 - x[3] * x[3]) / std::sqrt(r2);
}

double harmonic_example_discrete_laplacian(const std::vector<double>& x, double h, int order) {
    if (x.size() != 4) throw DomainError("the example lives on R^4");
    if (h <= 0.0) throw DomainError("step must be positive");
    const std::vector<double> w = stencil_weights(2, order);
    const int radius = stencil_radius(2, order);
    const double r = std::sqrt(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]);
    if (h * radius >= r)
        throw DomainError("stencil reaches the singular axis: shrink the step");
    std::vector<double> probe = x;
    double sum = 0.0;
    for (int axis = 0; axis < 4; ++axis) {
        double second = 0.0;
        for (int k = -radius; k <= radius; ++k) {
            probe[static_cast<std::size_t>(axis)] = x[static_cast<std::size_t>(axis)] + k * h;
            second += w[static_cast<std::size_t>(k + radius)] * harmonic_example_value(probe);
        }
        probe[static_cast<std::size_t>(axis)] = x[static_cast<std::size_t>(axis)];
        sum += second / (h * h);
    }
    return sum;
}

double harmonic_example_laplacian_scan(int count, std::uint64_t seed, double h,
                                       double min_radius, int order) {
    if (count < 1) throw DomainError("need at least one sample point");
    if (min_radius <= 0.0) throw DomainError("the sample box must avoid the singular axis");
    if (h * stencil_radius(2, order) >= min_radius)
        throw DomainError("stencil reaches the singular axis: shrink the step");
    SplitMix64 rng(seed);
    std::vector<double> x(4);
    double worst = 0.0;
    for (int i = 0; i < count; ++i) {
        for (;;) {
            for (double& v : x) v = -2.0 + 4.0 * rng.next_double();
            const double r = std::sqrt(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]);
            if (r >= min_radius) break;
        }
        worst = std::max(worst, std::abs(harmonic_example_discrete_laplacian(x, h, order)));
    }
    return worst;
}

} // namespace ornstein
