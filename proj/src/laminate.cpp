#include "ornstein/laminate.hpp"

#include <algorithm>
#include <cmath>

#include "ornstein/error.hpp"
#include "ornstein/rank_one.hpp"

namespace ornstein {
namespace {

constexpr double kTau = 6.283185307179586477;
constexpr double kPi = 3.14159265358979323846;

// Quintic smoothstep hat on [0,1]: 0 outside [dp, 1-dp], 1 on [2dp, 1-2dp].
double hat(double s, double dp) {
    const auto rise = [](double u) { return ((6 * u - 15) * u + 10) * u * u * u; };
    if (s < dp || s > 1.0 - dp) return 0.0;
    if (s < 2 * dp) return rise((s - dp) / dp);
    if (s > 1.0 - 2 * dp) return rise((1.0 - dp - s) / dp);
    return 1.0;
}

double pow_int(double base, long long e) {
    double r = 1.0;
    for (long long i = 0; i < e; ++i) r *= base;
    return r;
}

} // namespace

double cosine_law_cdf(double s) {
    return 1.0 - std::acos(std::clamp(s, -1.0, 1.0)) / kPi;
}

LaminateResult build_laminate(const GradientSpace& space, const LaminateSpec& spec) {
    const int d = space.dim;
    if (static_cast<int>(spec.x.size()) != d)
        throw DomainError("direction has the wrong dimension");
    if (static_cast<int>(spec.grid.size()) != d)
        throw DomainError("grid has the wrong dimension");
    if (!(spec.delta_prime > 0.0 && spec.delta_prime < 0.25))
        throw DomainError("hat margin must lie in (0, 1/4)");
    bool any = false;
    for (double xj : spec.x) any = any || xj != 0.0;
    if (!any) throw DomainError("direction must have a nonzero entry");
    if (!space.same_parity())
        throw DomainError("laminate needs cells of one parity (real rank-one vector)");

    const auto& gamma = space.pattern.gamma;

    // Oscillation scale: keep the fastest axis below ~0.65 radians per grid
    // step so the stencil error stays a fraction of a percent.
    long long t = spec.t;
    if (t == 0) {
        double best = 1e18;
        for (int j = 0; j < d; ++j) {
            if (spec.x[j] == 0.0) continue;
            const double cap =
                0.65 * spec.grid[static_cast<std::size_t>(j)] / std::abs(spec.x[j]);
            best = std::min(best, std::pow(cap, 1.0 / static_cast<double>(
                                                     gamma[static_cast<std::size_t>(j)])));
        }
        t = static_cast<long long>(best);
    }
    if (t < 1) throw DomainError("oscillation scale must be positive");

    // Per-axis period geometry. The union of full period boxes inside the
    // flat region is a single box; axes with x_j = 0 contribute the whole
    // flat slab.
    const double dp = spec.delta_prime;
    SupportBox box;
    double exact_measure = 1.0;
    std::vector<double> lo(static_cast<std::size_t>(d)), hi(static_cast<std::size_t>(d));
    for (int j = 0; j < d; ++j) {
        const int n = spec.grid[static_cast<std::size_t>(j)];
        double a, b;
        if (spec.x[j] == 0.0) {
            a = 2 * dp;
            b = 1.0 - 2 * dp;
        } else {
            const double tg = pow_int(static_cast<double>(t), gamma[static_cast<std::size_t>(j)]);
            const double w = kTau / (tg * std::abs(spec.x[j]));
            const long long kmin =
                std::max<long long>(1, static_cast<long long>(std::ceil(2 * dp / w - 1e-12)));
            const long long kmax1 = static_cast<long long>(std::floor((1.0 - 2 * dp) / w + 1e-12));
            if (kmax1 <= kmin)
                throw DomainError("oscillation scale too small for one full period "
                                  "inside the flat region");
            a = static_cast<double>(kmin) * w;
            b = static_cast<double>(kmax1) * w;
        }
        lo[static_cast<std::size_t>(j)] = a;
        hi[static_cast<std::size_t>(j)] = b;
        exact_measure *= b - a;
        box.lo.push_back(static_cast<int>(std::ceil(a * n - 1e-9)));
        box.hi.push_back(static_cast<int>(std::ceil(b * n - 1e-9)));
    }

    // Sample l. Per-axis phase and hat tables keep the fill to one cosine per
    // point.
    ScalarField field = ScalarField::zeros(spec.grid);
    std::vector<std::vector<double>> phase(static_cast<std::size_t>(d)),
        hats(static_cast<std::size_t>(d));
    for (int j = 0; j < d; ++j) {
        const int n = spec.grid[static_cast<std::size_t>(j)];
        const double tg = pow_int(static_cast<double>(t), gamma[static_cast<std::size_t>(j)]);
        phase[static_cast<std::size_t>(j)].resize(static_cast<std::size_t>(n));
        hats[static_cast<std::size_t>(j)].resize(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) {
            const double xi = static_cast<double>(i) / n;
            phase[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] =
                tg * spec.x[static_cast<std::size_t>(j)] * xi;
            hats[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] = hat(xi, dp);
        }
    }
    const double tk = 1.0 / pow_int(static_cast<double>(t), space.pattern.k);
    std::vector<int> idx(static_cast<std::size_t>(d), 0);
    for (std::size_t flat = 0; flat < field.data.size(); ++flat) {
        double ph = 0.0, envelope = 1.0;
        for (int j = 0; j < d; ++j) {
            ph += phase[static_cast<std::size_t>(j)][static_cast<std::size_t>(idx[static_cast<std::size_t>(j)])];
            envelope *= hats[static_cast<std::size_t>(j)][static_cast<std::size_t>(idx[static_cast<std::size_t>(j)])];
        }
        if (envelope != 0.0) field.data[flat] = tk * std::cos(ph) * envelope;
        for (int j = d - 1; j >= 0; --j) {
            if (++idx[static_cast<std::size_t>(j)] < spec.grid[static_cast<std::size_t>(j)]) break;
            idx[static_cast<std::size_t>(j)] = 0;
        }
    }

    const MultiIndex& a0 = spec.alpha0.empty() ? space.cells[0] : spec.alpha0;
    LaminateResult out;
    out.e_x = rank_one_vector(space, spec.x, a0);
    double en2 = 0.0;
    for (double v : out.e_x) en2 += v * v;
    out.e_norm = std::sqrt(en2);
    out.t = t;
    out.good_box = box;
    out.good_measure_exact = exact_measure;

    // One pass for the sup over the grid; the projection sample on B feeds
    // the Kolmogorov-Smirnov distance afterwards.
    const EField grad = apply_generalized_gradient(space, field, spec.order);
    const int cells = space.cell_count();
    double sup2 = 0.0;
    for (std::size_t i = 0; i < field.data.size(); ++i) {
        double s2 = 0.0;
        for (int a = 0; a < cells; ++a) s2 += grad.comps[static_cast<std::size_t>(a)][i] *
                                               grad.comps[static_cast<std::size_t>(a)][i];
        sup2 = std::max(sup2, s2);
    }
    out.sup_gradient_norm = std::sqrt(sup2);

    std::size_t in_box = 1;
    for (int j = 0; j < d; ++j)
        in_box *= static_cast<std::size_t>(box.hi[static_cast<std::size_t>(j)] -
                                           box.lo[static_cast<std::size_t>(j)]);
    out.good_measure_grid = static_cast<double>(in_box) / static_cast<double>(field.point_count());

    std::vector<double> proj;
    proj.reserve(in_box);
    double trans2 = 0.0;
    std::fill(idx.begin(), idx.end(), 0);
    std::vector<int> cur(box.lo);
    for (std::size_t count = 0; count < in_box; ++count) {
        std::size_t flat = 0;
        for (int j = 0; j < d; ++j)
            flat = flat * static_cast<std::size_t>(spec.grid[static_cast<std::size_t>(j)]) +
                   static_cast<std::size_t>(cur[static_cast<std::size_t>(j)]);
        double dot = 0.0, s2 = 0.0;
        for (int a = 0; a < cells; ++a) {
            const double ga = grad.comps[static_cast<std::size_t>(a)][flat];
            dot += ga * out.e_x[static_cast<std::size_t>(a)];
            s2 += ga * ga;
        }
        const double p = dot / en2;
        proj.push_back(p);
        trans2 = std::max(trans2, s2 - p * p * en2);
        for (int j = d - 1; j >= 0; --j) {
            if (++cur[static_cast<std::size_t>(j)] < box.hi[static_cast<std::size_t>(j)]) break;
            cur[static_cast<std::size_t>(j)] = box.lo[static_cast<std::size_t>(j)];
        }
    }
    out.transverse_sup = std::sqrt(std::max(0.0, trans2));

    std::sort(proj.begin(), proj.end());
    double ks = 0.0;
    const double N = static_cast<double>(proj.size());
    for (std::size_t i = 0; i < proj.size(); ++i) {
        const double F = cosine_law_cdf(proj[i]);
        ks = std::max(ks, std::max(std::abs(F - static_cast<double>(i) / N),
                                   std::abs(F - static_cast<double>(i + 1) / N)));
    }
    out.ks_distance = ks;
    out.field = std::move(field);
    return out;
}

} // namespace ornstein
