#include "ornstein/vfunction.hpp"

#include <cmath>

#include "ornstein/error.hpp"

namespace ornstein {

VFunction make_vfunction(const GradientSpace& space, double c, double p) {
    if (space.functional_count() < 2)
        throw DomainError("V needs a distinguished functional and at least one more");
    if (!(c > 0.0)) throw DomainError("the separation constant c must be positive");
    if (!(p >= 1.0)) throw DomainError("the exponent p must be >= 1");
    VFunction vf;
    vf.space = space;
    vf.functionals = space.functionals_double();
    vf.c = c;
    vf.p = p;
    return vf;
}

namespace {

inline double power_abs(double t, double p) {
    const double a = std::fabs(t);
    return p == 1.0 ? a : std::pow(a, p);
}

} // namespace

double evaluate_V(const VFunction& vf, const std::vector<double>& e) {
    if (static_cast<int>(e.size()) != vf.cell_count())
        throw DomainError("E-vector has the wrong number of cells");
    double acc = 0.0;
    for (int j = 0; j < vf.functional_count(); ++j) {
        double t = 0.0;
        const auto& row = vf.functionals[static_cast<std::size_t>(j)];
        for (std::size_t a = 0; a < e.size(); ++a) t += row[a] * e[a];
        acc += (j == 0 ? -vf.c : 1.0) * power_abs(t, vf.p);
    }
    return acc;
}

double objective(const VFunction& vf, const std::vector<double>& e, const EField& grad) {
    if (static_cast<int>(e.size()) != vf.cell_count())
        throw DomainError("E-vector has the wrong number of cells");
    const std::size_t points = grad.comps.empty() ? 0 : grad.comps[0].size();
    const std::size_t cells = grad.comps.size();
    double acc = 0.0;
    for (std::size_t x = 0; x < points; ++x) {
        double v = 0.0;
        for (int j = 0; j < vf.functional_count(); ++j) {
            const auto& row = vf.functionals[static_cast<std::size_t>(j)];
            double t = 0.0;
            for (std::size_t a = 0; a < cells; ++a) t += row[a] * (e[a] + grad.comps[a][x]);
            v += (j == 0 ? -vf.c : 1.0) * power_abs(t, vf.p);
        }
        acc += v;
    }
    return acc / static_cast<double>(points);
}

double objective(const VFunction& vf, const std::vector<double>& e,
                 const ScalarField& phi, int order) {
    return objective(vf, e, apply_generalized_gradient(vf.space, phi, order));
}

} // namespace ornstein
