#include "ornstein/convexity.hpp"

#include "ornstein/error.hpp"

#include <cmath>
#include <numbers>

namespace ornstein {

MidpointReport check_rank_one_midpoint(const EEvaluator& g, const std::vector<double>& e,
                                       const std::vector<double>& direction,
                                       const std::vector<double>& lambdas, double tol,
                                       int cosine_samples) {
    if (!g) throw DomainError("rank-one midpoint check needs an evaluator");
    if (e.size() != direction.size())
        throw DomainError("base point and direction have different lengths");
    if (e.empty()) throw DomainError("base point is empty");
    if (lambdas.empty()) throw DomainError("no step sizes given");
    if (cosine_samples < 3)
        throw DomainError("cosine probe needs at least 3 samples for exact moments");

    const std::size_t dim = e.size();
    std::vector<double> point(dim);

    MidpointReport report;
    report.lambdas = lambdas;
    report.midpoint_residuals.reserve(lambdas.size());
    report.cosine_residuals.reserve(lambdas.size());

    const double at_e = g(e);
    bool first = true;
    for (double lambda : lambdas) {
        auto probe = [&](double s) {
            for (std::size_t i = 0; i < dim; ++i) point[i] = e[i] + s * direction[i];
            return g(point);
        };

        const double midpoint = at_e - 0.5 * (probe(lambda) + probe(-lambda));

        double mean = 0.0;
        for (int i = 0; i < cosine_samples; ++i) {
            const double angle = 2.0 * std::numbers::pi * i / cosine_samples;
            mean += probe(lambda * std::cos(angle));
        }
        mean /= cosine_samples;
        const double cosine = at_e - mean;

        report.midpoint_residuals.push_back(midpoint);
        report.cosine_residuals.push_back(cosine);
        if (first || midpoint > report.max_midpoint_residual)
            report.max_midpoint_residual = midpoint;
        if (first || cosine > report.max_cosine_residual) report.max_cosine_residual = cosine;
        first = false;
    }
    report.tolerance = tol;
    report.convex_within_tolerance =
        report.max_midpoint_residual <= tol && report.max_cosine_residual <= tol;
    return report;
}

} // namespace ornstein
