#include "ornstein/field.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <map>
#include <mutex>

#include "ornstein/error.hpp"
#include "ornstein/rational_linalg.hpp"

namespace ornstein {

static_assert(std::endian::native == std::endian::little,
              "witness files are little endian and so is every supported target");

ScalarField ScalarField::zeros(const std::vector<int>& sizes) {
    ScalarField f;
    f.sizes = sizes;
    std::size_t n = 1;
    for (int s : sizes) {
        if (s < 1) throw DomainError("grid sizes must be positive");
        n *= static_cast<std::size_t>(s);
    }
    f.data.assign(n, 0.0);
    return f;
}

std::size_t ScalarField::point_count() const {
    std::size_t n = 1;
    for (int s : sizes) n *= static_cast<std::size_t>(s);
    return n;
}

bool ScalarField::in_support(const std::vector<int>& idx) const {
    if (!support) return true;
    for (std::size_t i = 0; i < idx.size(); ++i)
        if (idx[i] < support->lo[i] || idx[i] >= support->hi[i]) return false;
    return true;
}

void ScalarField::enforce_support() {
    if (!support) return;
    const int d = dim();
    std::vector<int> idx(static_cast<std::size_t>(d), 0);
    for (std::size_t flat = 0; flat < data.size(); ++flat) {
        if (!in_support(idx)) data[flat] = 0.0;
        for (int axis = d - 1; axis >= 0; --axis) {
            if (++idx[static_cast<std::size_t>(axis)] < sizes[static_cast<std::size_t>(axis)]) break;
            idx[static_cast<std::size_t>(axis)] = 0;
        }
    }
}

int stencil_radius(int m, int order) {
    if (m == 0) return 0;
    return (m + 1) / 2 + order / 2 - 1;
}

std::vector<double> stencil_weights(int m, int order) {
    if (m < 0) throw DomainError("derivative order must be >= 0");
    if (order < 2 || order > 8 || order % 2)
        throw DomainError("stencil accuracy must be 2, 4, 6 or 8");
    if (m == 0) return {1.0};

    static std::map<std::pair<int, int>, std::vector<double>> cache;
    static std::mutex mutex;
    std::lock_guard<std::mutex> lock(mutex);
    const auto key = std::make_pair(m, order);
    if (const auto it = cache.find(key); it != cache.end()) return it->second;

    // Moment conditions: sum_j w_j j^s = m! [s == m] for s = 0 .. 2r.
    const int r = stencil_radius(m, order);
    const int n = 2 * r + 1;
    RatMatrix a(static_cast<std::size_t>(n), RatVector(static_cast<std::size_t>(n)));
    RatVector b(static_cast<std::size_t>(n), Rational(0));
    for (int s = 0; s < n; ++s) {
        for (int j = -r; j <= r; ++j) {
            Rational p = 1;
            for (int t = 0; t < s; ++t) p *= j;
            a[static_cast<std::size_t>(s)][static_cast<std::size_t>(j + r)] = p;
        }
    }
    Rational fact = 1;
    for (int t = 2; t <= m; ++t) fact *= t;
    b[static_cast<std::size_t>(m)] = fact;
    const auto w = solve(a, b);
    if (!w) throw NumericError("stencil moment system is singular");
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(n));
    for (const auto& x : *w) out.push_back(to_double(x));
    cache[key] = out;
    return out;
}

std::vector<int> support_margin(const GradientSpace& space, int order) {
    std::vector<int> margin(static_cast<std::size_t>(space.dim), 0);
    for (const auto& alpha : space.cells)
        for (int i = 0; i < space.dim; ++i)
            margin[static_cast<std::size_t>(i)] =
                std::max(margin[static_cast<std::size_t>(i)],
                         stencil_radius(alpha[static_cast<std::size_t>(i)], order));
    return margin;
}

SupportBox margin_box(const std::vector<int>& sizes, const std::vector<int>& margin) {
    SupportBox box;
    for (std::size_t i = 0; i < sizes.size(); ++i) {
        if (2 * margin[i] >= sizes[i])
            throw DomainError("grid too small for the requested support margin");
        box.lo.push_back(margin[i]);
        box.hi.push_back(sizes[i] - margin[i]);
    }
    return box;
}

namespace {

// Convolve along one axis with periodic wrap: out = sum_j w[j+r] * in(. + j e_axis),
// scaled by `scale`. Line-buffer implementation, cache friendly enough for the
// grid sizes this laboratory uses.
void apply_axis(const std::vector<double>& in, std::vector<double>& out,
                const std::vector<int>& sizes, int axis,
                const std::vector<double>& w, double scale) {
    const int d = static_cast<int>(sizes.size());
    const int n = sizes[static_cast<std::size_t>(axis)];
    const int r = (static_cast<int>(w.size()) - 1) / 2;
    if (n < static_cast<int>(w.size()))
        throw DomainError("grid too small for the requested stencil");

    std::size_t stride = 1;
    for (int i = d - 1; i > axis; --i) stride *= static_cast<std::size_t>(sizes[static_cast<std::size_t>(i)]);
    std::size_t outer = 1;
    for (int i = 0; i < d; ++i)
        if (i != axis) outer *= static_cast<std::size_t>(sizes[static_cast<std::size_t>(i)]);

    std::vector<double> line(static_cast<std::size_t>(n + 2 * r));
    // Enumerate the base offset of every line along `axis`.
    const std::size_t block = stride * static_cast<std::size_t>(n);
    for (std::size_t o = 0; o < outer; ++o) {
        const std::size_t inner = o % stride;
        const std::size_t chunk = o / stride;
        const std::size_t base = chunk * block + inner;
        for (int i = 0; i < n; ++i)
            line[static_cast<std::size_t>(i + r)] = in[base + static_cast<std::size_t>(i) * stride];
        for (int i = 0; i < r; ++i) {
            line[static_cast<std::size_t>(i)] = line[static_cast<std::size_t>(i + n)];
            line[static_cast<std::size_t>(n + r + i)] = line[static_cast<std::size_t>(r + i)];
        }
        for (int i = 0; i < n; ++i) {
            double acc = 0.0;
            for (int j = 0; j < static_cast<int>(w.size()); ++j)
                acc += w[static_cast<std::size_t>(j)] * line[static_cast<std::size_t>(i + j)];
            out[base + static_cast<std::size_t>(i) * stride] = acc * scale;
        }
    }
}

ScalarField derivative_impl(const ScalarField& f, const MultiIndex& alpha, int order,
                            bool adjoint) {
    if (static_cast<int>(alpha.size()) != f.dim())
        throw DomainError("derivative multi-index dimension mismatch");
    ScalarField out = f;
    out.support.reset();
    std::vector<double> tmp(f.data.size());
    for (int axis = 0; axis < f.dim(); ++axis) {
        const int m = alpha[static_cast<std::size_t>(axis)];
        if (m == 0) continue;
        std::vector<double> w = stencil_weights(m, order);
        if (adjoint) std::reverse(w.begin(), w.end());
        double scale = 1.0;
        for (int t = 0; t < m; ++t) scale *= f.sizes[static_cast<std::size_t>(axis)];
        apply_axis(out.data, tmp, f.sizes, axis, w, scale);
        std::swap(out.data, tmp);
    }
    return out;
}

} // namespace

ScalarField derivative(const ScalarField& f, const MultiIndex& alpha, int order) {
    return derivative_impl(f, alpha, order, false);
}

ScalarField derivative_adjoint(const ScalarField& f, const MultiIndex& alpha, int order) {
    return derivative_impl(f, alpha, order, true);
}

EField apply_generalized_gradient(const GradientSpace& space, const ScalarField& f,
                                  int order) {
    if (space.dim != f.dim()) throw DomainError("space and field dimension mismatch");
    for (int axis = 0; axis < space.dim; ++axis) {
        int max_m = 0;
        for (const auto& alpha : space.cells)
            max_m = std::max(max_m, alpha[static_cast<std::size_t>(axis)]);
        const int need = std::max(2 * max_m + 2, 2 * stencil_radius(max_m, order) + 1);
        if (f.sizes[static_cast<std::size_t>(axis)] < need)
            throw DomainError("grid too small along axis " + std::to_string(axis + 1) +
                              ": need at least " + std::to_string(need) + " points");
    }
    EField e;
    e.sizes = f.sizes;
    e.comps.reserve(space.cells.size());
    for (const auto& alpha : space.cells)
        e.comps.push_back(derivative(f, alpha, order).data);
    return e;
}

ScalarField resample(const ScalarField& f, const std::vector<int>& new_sizes) {
    if (new_sizes.size() != f.sizes.size())
        throw DomainError("resample dimension mismatch");
    ScalarField out = ScalarField::zeros(new_sizes);
    const int d = f.dim();
    std::vector<int> idx(static_cast<std::size_t>(d), 0);
    std::vector<int> base(static_cast<std::size_t>(d));
    std::vector<double> frac(static_cast<std::size_t>(d));
    for (std::size_t flat = 0; flat < out.data.size(); ++flat) {
        for (int i = 0; i < d; ++i) {
            const double pos = static_cast<double>(idx[static_cast<std::size_t>(i)]) *
                               f.sizes[static_cast<std::size_t>(i)] /
                               new_sizes[static_cast<std::size_t>(i)];
            base[static_cast<std::size_t>(i)] = static_cast<int>(std::floor(pos));
            frac[static_cast<std::size_t>(i)] = pos - base[static_cast<std::size_t>(i)];
        }
        double acc = 0.0;
        for (int corner = 0; corner < (1 << d); ++corner) {
            double weight = 1.0;
            std::size_t src = 0;
            for (int i = 0; i < d; ++i) {
                const int n = f.sizes[static_cast<std::size_t>(i)];
                int p = base[static_cast<std::size_t>(i)];
                if (corner & (1 << i)) {
                    weight *= frac[static_cast<std::size_t>(i)];
                    p = (p + 1) % n;
                } else {
                    weight *= 1.0 - frac[static_cast<std::size_t>(i)];
                    p %= n;
                }
                src = src * static_cast<std::size_t>(n) + static_cast<std::size_t>(p);
            }
            if (weight != 0.0) acc += weight * f.data[src];
        }
        out.data[flat] = acc;
        for (int axis = d - 1; axis >= 0; --axis) {
            if (++idx[static_cast<std::size_t>(axis)] < new_sizes[static_cast<std::size_t>(axis)]) break;
            idx[static_cast<std::size_t>(axis)] = 0;
        }
    }
    return out;
}

double field_mean(const ScalarField& f) {
    double acc = 0.0;
    for (double v : f.data) acc += v;
    return acc / static_cast<double>(f.data.size());
}

double field_rms(const ScalarField& f) {
    double acc = 0.0;
    for (double v : f.data) acc += v * v;
    return std::sqrt(acc / static_cast<double>(f.data.size()));
}

double field_max_abs(const ScalarField& f) {
    double acc = 0.0;
    for (double v : f.data) acc = std::max(acc, std::fabs(v));
    return acc;
}

namespace {
constexpr int kMaxDims = 5;
constexpr std::uint32_t kWitnessVersion = 1;
} // namespace

void write_field(const ScalarField& f, const std::string& path) {
    if (f.dim() > kMaxDims) throw DomainError("witness files support up to 5 axes");
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot open '" + path + "' for writing");
    char header[32] = {};
    std::memcpy(header, "ORNF", 4);
    std::uint32_t version = kWitnessVersion;
    std::uint32_t d = static_cast<std::uint32_t>(f.dim());
    std::memcpy(header + 4, &version, 4);
    std::memcpy(header + 8, &d, 4);
    for (int i = 0; i < f.dim(); ++i) {
        std::uint32_t n = static_cast<std::uint32_t>(f.sizes[static_cast<std::size_t>(i)]);
        std::memcpy(header + 12 + 4 * i, &n, 4);
    }
    out.write(header, sizeof header);
    out.write(reinterpret_cast<const char*>(f.data.data()),
              static_cast<std::streamsize>(f.data.size() * sizeof(double)));
    if (!out) throw Error("short write to '" + path + "'");
}

ScalarField read_field(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open '" + path + "' for reading");
    char header[32];
    in.read(header, sizeof header);
    if (!in || std::memcmp(header, "ORNF", 4) != 0)
        throw Error("'" + path + "' is not a witness file");
    std::uint32_t version = 0, d = 0;
    std::memcpy(&version, header + 4, 4);
    std::memcpy(&d, header + 8, 4);
    if (version != kWitnessVersion)
        throw Error("unsupported witness version in '" + path + "'");
    if (d < 1 || d > kMaxDims) throw Error("corrupt axis count in '" + path + "'");
    std::vector<int> sizes;
    for (std::uint32_t i = 0; i < d; ++i) {
        std::uint32_t n = 0;
        std::memcpy(&n, header + 12 + 4 * i, 4);
        if (n == 0) throw Error("corrupt sizes in '" + path + "'");
        sizes.push_back(static_cast<int>(n));
    }
    ScalarField f = ScalarField::zeros(sizes);
    in.read(reinterpret_cast<char*>(f.data.data()),
            static_cast<std::streamsize>(f.data.size() * sizeof(double)));
    if (!in) throw Error("witness payload in '" + path + "' is truncated");
    return f;
}

} // namespace ornstein
