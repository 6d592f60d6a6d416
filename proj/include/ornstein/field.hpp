#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "ornstein/gradient_space.hpp"

namespace ornstein {

// Half-open index box [lo_i, hi_i) per axis.
struct SupportBox {
    std::vector<int> lo, hi;
    bool operator==(const SupportBox&) const = default;
};

// Real field sampled on the uniform grid of the torus [0,1)^d,
// spacing 1/n_i along axis i, row-major storage.
struct ScalarField {
    std::vector<int> sizes;
    std::vector<double> data;
    std::optional<SupportBox> support; // entries outside are pinned to zero

    static ScalarField zeros(const std::vector<int>& sizes);

    int dim() const { return static_cast<int>(sizes.size()); }
    std::size_t point_count() const;

    // Re-applies the support mask; cheap no-op when there is none.
    void enforce_support();
    bool in_support(const std::vector<int>& idx) const;
};

// One component field per cell of A.
struct EField {
    std::vector<int> sizes;
    std::vector<std::vector<double>> comps;
};

// Centered finite-difference weights for the m-th derivative at unit spacing,
// accuracy `order` (2, 4, 6 or 8). Solved exactly, returned as doubles,
// length 2*stencil_radius(m, order) + 1. m = 0 yields {1}.
std::vector<double> stencil_weights(int m, int order);
int stencil_radius(int m, int order);

// Per-axis radius of the widest stencil needed for the cells of the space.
std::vector<int> support_margin(const GradientSpace& space, int order);

// The centered box obtained by trimming `margin` indices from both ends.
SupportBox margin_box(const std::vector<int>& sizes, const std::vector<int>& margin);

// Periodic centered finite-difference partial derivative d^alpha, with the
// physical spacing 1/n_i baked in. The result carries no support box.
ScalarField derivative(const ScalarField& f, const MultiIndex& alpha, int order);

// Adjoint of `derivative` with respect to the grid mean inner product
// (up to the common 1/N factor): convolution with the reversed kernel.
ScalarField derivative_adjoint(const ScalarField& f, const MultiIndex& alpha, int order);

// All components d^alpha f, alpha in A. Checks the grid is large enough:
// n_i >= max(2*alpha_i + 2, stencil width) for every cell.
EField apply_generalized_gradient(const GradientSpace& space, const ScalarField& f,
                                  int order = 4);

// Periodic multilinear resampling onto a new grid (any sizes).
ScalarField resample(const ScalarField& f, const std::vector<int>& new_sizes);

double field_mean(const ScalarField& f);
double field_rms(const ScalarField& f);
double field_max_abs(const ScalarField& f);

// Witness file format: 32-byte header (magic "ORNF", u32 version, u32 d,
// u32 sizes[5], little endian) followed by the row-major float64 payload.
void write_field(const ScalarField& f, const std::string& path);
ScalarField read_field(const std::string& path);

} // namespace ornstein
