#include "ornstein/asymptotics.hpp"

#include <chrono>
#include <cmath>
#include <cstdlib>

#include "ornstein/error.hpp"
#include "ornstein/field.hpp"

namespace ornstein {

namespace {

void check_power(double p) {
    if (!(p > 1.0)) throw DomainError("the power must exceed 1");
}

} // namespace

CpPoint cp_lower_bound(const GradientSpace& space, double p, const std::vector<int>& grid,
                       const OptimizeOptions& opt) {
    check_power(p);
    const auto t0 = std::chrono::steady_clock::now();
    FieldEstimate est = maximize_ratio(space, grid, opt, p);
    CpPoint point;
    point.seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    point.p = p;
    point.bound = est.value;
    point.grid = grid;
    point.iterations = est.iterations;
    point.witness = std::move(est.witness);
    point.audit = ratio_value(space, point.witness, p, opt.order);
    return point;
}

CpScan cp_scan(const GradientSpace& space, const std::vector<double>& p_list,
               const std::vector<std::vector<int>>& grids, const OptimizeOptions& opt) {
    if (p_list.empty()) throw DomainError("the power schedule is empty");
    for (double p : p_list) check_power(p);
    for (std::size_t i = 0; i + 1 < p_list.size(); ++i)
        if (!(p_list[i + 1] < p_list[i]))
            throw DomainError("powers must decrease strictly toward 1");
    if (grids.size() != 1 && grids.size() != p_list.size())
        throw DomainError("need one grid per power or a single shared grid");

    CpScan scan;
    scan.points.reserve(p_list.size());
    for (std::size_t level = 0; level < p_list.size(); ++level) {
        const double p = p_list[level];
        const auto& grid = grids[grids.size() == 1 ? 0 : level];
        OptimizeOptions fresh = opt;
        fresh.seed = opt.seed + 1000 * level;
        CpPoint point;
        if (level == 0) {
            point = cp_lower_bound(space, p, grid, fresh);
        } else {
            // Warm continuation of the previous witness vs a fresh search;
            // keep whichever lands higher. The warm path stabilizes the
            // non-smooth approach to p = 1.
            const auto t0 = std::chrono::steady_clock::now();
            ScalarField lifted = resample(scan.points.back().witness, grid);
            OptimizeOptions cont = fresh;
            cont.restarts = 0;
            FieldEstimate warm_run = maximize_ratio(space, grid, cont, p, &lifted);
            FieldEstimate fresh_run = maximize_ratio(space, grid, fresh, p);
            FieldEstimate& pick =
                warm_run.value >= fresh_run.value ? warm_run : fresh_run;
            point.p = p;
            point.bound = pick.value;
            point.grid = grid;
            point.iterations = warm_run.iterations + fresh_run.iterations;
            point.witness = std::move(pick.witness);
            point.audit = ratio_value(space, point.witness, p, opt.order);
            point.seconds =
                std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
                    .count();
        }
        scan.points.push_back(std::move(point));
    }

    // Descriptive fit of log(bound) on x = log(1/(p-1)); points with a
    // nonpositive bound carry no information and are skipped.
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    int m = 0;
    for (const CpPoint& pt : scan.points) {
        if (!(pt.bound > 0.0)) continue;
        const double x = -std::log(pt.p - 1.0);
        const double y = std::log(pt.bound);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++m;
    }
    if (m >= 2) {
        const double det = m * sxx - sx * sx;
        if (std::abs(det) > 1e-12 * (1.0 + sxx)) {
            scan.trend_slope = (m * sxy - sx * sy) / det;
            scan.trend_intercept = (sy * sxx - sx * sxy) / det;
        }
    }
    return scan;
}

double p2_symbol_ratio_sup(const GradientSpace& space, double radius, int steps) {
    if (space.functional_count() < 2)
        throw DomainError("need a distinguished functional and at least one comparison");
    if (!space.same_parity())
        throw DomainError("symbol ratio needs a same-parity cell set");
    if (!(radius > 0.0) || steps < 2) throw DomainError("degenerate Fourier box");

    // Same parity makes every symbol i^r times a real polynomial: the cell
    // alpha contributes sign (-1)^((|alpha|-r)/2) xi^alpha.
    const int d = space.dim;
    const auto funcs = space.functionals_double();
    const std::size_t cells = space.cells.size();
    std::vector<double> sign(cells, 1.0);
    const int r = parity_of(space.cells.front());
    for (std::size_t a = 0; a < cells; ++a)
        sign[a] = ((degree(space.cells[a]) - r) / 2) % 2 ? -1.0 : 1.0;

    std::vector<int> idx(static_cast<std::size_t>(d), 0);
    std::vector<double> xi(static_cast<std::size_t>(d));
    std::vector<double> mono(cells);
    double best = 0.0;
    for (;;) {
        for (int i = 0; i < d; ++i)
            xi[static_cast<std::size_t>(i)] =
                -radius + 2.0 * radius * idx[static_cast<std::size_t>(i)] /
                              (steps - 1);
        for (std::size_t a = 0; a < cells; ++a) {
            double v = sign[a];
            for (int i = 0; i < d; ++i)
                for (int k = 0; k < space.cells[a][i]; ++k)
                    v *= xi[static_cast<std::size_t>(i)];
            mono[a] = v;
        }
        double num = 0.0, den = 0.0;
        for (int j = 0; j < space.functional_count(); ++j) {
            double m = 0.0;
            for (std::size_t a = 0; a < cells; ++a)
                m += funcs[static_cast<std::size_t>(j)][a] * mono[a];
            if (j == 0) num = m * m;
            else den += m * m;
        }
        if (den > 0.0) best = std::max(best, num / den);

        int axis = 0;
        while (axis < d && ++idx[static_cast<std::size_t>(axis)] == steps) {
            idx[static_cast<std::size_t>(axis)] = 0;
            ++axis;
        }
        if (axis == d) break;
    }
    return best;
}

} // namespace ornstein
