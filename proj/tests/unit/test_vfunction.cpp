#include <cmath>

#include "doctest.h"

#include "ornstein/error.hpp"
#include "ornstein/operator.hpp"
#include "ornstein/rng.hpp"
#include "ornstein/vfunction.hpp"

using namespace ornstein;

namespace {

// T_1 = d1 d2 against T_2 = d1^2, T_3 = d2^2; cells in lex order are
// (0,2), (1,1), (2,0).
GradientSpace mixed_vs_pure() {
    return build_gradient_space({parse_operator("d1*d2", 2, "mixed"),
                                 parse_operator("d1^2", 2, "xx"),
                                 parse_operator("d2^2", 2, "yy")});
}

// T_1 = T_2 + T_3 exactly; V >= (1-c)(|T_2 u| + |T_3 u|) pointwise for c < 1.
GradientSpace dependent_family() {
    return build_gradient_space({parse_operator("d1^2 + d2^2", 2, "sum"),
                                 parse_operator("d1^2", 2, "xx"),
                                 parse_operator("d2^2", 2, "yy")});
}

ScalarField masked_noise(const GradientSpace& space, std::vector<int> sizes,
                         std::uint64_t seed) {
    ScalarField phi = ScalarField::zeros(sizes);
    SplitMix64 rng(seed);
    for (double& v : phi.data) v = rng.next_normal();
    phi.support = margin_box(sizes, support_margin(space, 4));
    phi.enforce_support();
    return phi;
}

} // namespace

TEST_CASE("V evaluates the separated absolute values") {
    VFunction vf = make_vfunction(mixed_vs_pure(), 0.9);
    // e = (u_{(0,2)}, u_{(1,1)}, u_{(2,0)})
    CHECK(evaluate_V(vf, {1.0, 2.0, -3.0}) == doctest::Approx(4.0 - 1.8));
    CHECK(evaluate_V(vf, {0.0, 1.0, 0.0}) == doctest::Approx(-0.9));
    CHECK(evaluate_V(vf, {0.0, 0.0, 0.0}) == 0.0);

    VFunction vf2 = make_vfunction(mixed_vs_pure(), 0.5, 2.0);
    CHECK(evaluate_V(vf2, {1.0, 2.0, -3.0}) == doctest::Approx(9.0 + 1.0 - 0.5 * 4.0));

    CHECK_THROWS_AS(evaluate_V(vf, {1.0, 2.0}), DomainError);
}

TEST_CASE("V construction rejects bad parameters") {
    GradientSpace space = mixed_vs_pure();
    CHECK_THROWS_AS(make_vfunction(space, 0.0), DomainError);
    CHECK_THROWS_AS(make_vfunction(space, -1.0), DomainError);
    CHECK_THROWS_AS(make_vfunction(space, 1.0, 0.5), DomainError);

    GradientSpace lone = build_gradient_space({parse_operator("d1^2", 1, "only")});
    CHECK_THROWS_AS(make_vfunction(lone, 1.0), DomainError);
}

TEST_CASE("objective at phi = 0 is V(e) itself") {
    VFunction vf = make_vfunction(mixed_vs_pure(), 0.9);
    const std::vector<double> e{0.7, -1.3, 0.4};
    ScalarField zero = ScalarField::zeros({8, 8});
    CHECK(objective(vf, e, zero) == doctest::Approx(evaluate_V(vf, e)).epsilon(1e-14));
}

TEST_CASE("objective is jointly 1-homogeneous in (e, phi) for p = 1") {
    VFunction vf = make_vfunction(mixed_vs_pure(), 0.9);
    const std::vector<double> e{0.7, -1.3, 0.4};
    ScalarField phi = masked_noise(vf.space, {16, 16}, 5);
    const double base = objective(vf, e, phi);

    for (double lambda : {-2.0, 0.5, 3.0}) {
        std::vector<double> le = e;
        for (double& v : le) v *= lambda;
        ScalarField lphi = phi;
        for (double& v : lphi.data) v *= lambda;
        const double scaled = objective(vf, le, lphi);
        CHECK(scaled ==
              doctest::Approx(std::abs(lambda) * base).epsilon(1e-9));
    }
}

TEST_CASE("dependent family with c < 1 keeps the objective nonnegative") {
    VFunction vf = make_vfunction(dependent_family(), 0.8);
    SplitMix64 rng(11);
    for (int trial = 0; trial < 5; ++trial) {
        std::vector<double> e(2); // cells are (0,2) and (2,0) only
        for (double& v : e) v = rng.next_normal();
        ScalarField phi = masked_noise(vf.space, {12, 12}, rng.next());
        CHECK(objective(vf, e, phi) >= -1e-12);
    }
}
