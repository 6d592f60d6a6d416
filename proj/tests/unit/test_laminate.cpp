#include <cmath>

#include "doctest.h"

#include "ornstein/error.hpp"
#include "ornstein/laminate.hpp"
#include "ornstein/operator.hpp"

using namespace ornstein;

namespace {

// Full Hessian in the plane; cells lex (0,2), (1,1), (2,0), all even.
GradientSpace hessian_space() {
    return build_gradient_space({parse_operator("d1^2", 2, "xx"),
                                 parse_operator("d1*d2", 2, "xy"),
                                 parse_operator("d2^2", 2, "yy")});
}

// Cells (2,0) and (1,2) under gamma = (2,1): |alpha| = 2 and 3.
GradientSpace mixed_parity_space() {
    return build_gradient_space({parse_operator("d1^2", 2, "xx"),
                                 parse_operator("d1*d2^2", 2, "xyy")});
}

} // namespace

TEST_CASE("laminate concentrates its gradient on the rank-one line") {
    LaminateSpec spec;
    spec.x = {1.0, 1.0};
    spec.t = 1317;
    spec.delta_prime = 0.01;
    spec.grid = {2048, 2048};
    spec.order = 6;

    GradientSpace space = hessian_space();
    LaminateResult res = build_laminate(space, spec);

    CHECK(res.t == 1317);
    CHECK(res.e_norm == doctest::Approx(std::sqrt(3.0)).epsilon(1e-12));
    REQUIRE(res.e_x.size() == 3);
    CHECK(res.e_x[0] == doctest::Approx(1.0));
    CHECK(res.e_x[1] == doctest::Approx(1.0));
    CHECK(res.e_x[2] == doctest::Approx(1.0));

    // Item 1 of the construction: the gradient never leaves the ball of
    // radius ||e_x|| by more than the stencil error.
    CHECK(res.sup_gradient_norm <= res.e_norm + 0.05);
    CHECK(res.sup_gradient_norm >= 0.9 * res.e_norm);

    // Item 2: the good set fills at least 90% of the torus.
    CHECK(res.good_measure_exact >= 0.9);
    CHECK(res.good_measure_grid >= 0.9);
    CHECK(res.good_measure_grid == doctest::Approx(res.good_measure_exact).epsilon(1e-2));

    // Item 3: on the good set the gradient is s * e_x with s cosine-law
    // distributed; the transverse part is pure stencil error.
    CHECK(res.transverse_sup <= 0.02);
    CHECK(res.ks_distance <= 0.03);
}

TEST_CASE("laminate derivative identity on the flat region") {
    // d^alpha l = (-1)^{|alpha|/2} x^alpha cos(sum t^{gamma_j} x_j xi_j) up
    // to stencil error wherever Phi = 1; here |alpha| = 2 for every cell.
    LaminateSpec spec;
    spec.x = {1.0, 0.5};
    spec.t = 659;
    spec.delta_prime = 0.01;
    spec.grid = {1024, 1024};
    spec.order = 6;

    GradientSpace space = hessian_space();
    LaminateResult res = build_laminate(space, spec);

    EField grad = apply_generalized_gradient(space, res.field, spec.order);
    const std::vector<std::vector<int>> points = {{512, 512}, {400, 700}, {650, 300}};
    for (const auto& pt : points) {
        const double xi1 = pt[0] / 1024.0, xi2 = pt[1] / 1024.0;
        const double phase = 659.0 * (spec.x[0] * xi1 + spec.x[1] * xi2);
        const std::size_t flat = static_cast<std::size_t>(pt[0]) * 1024 + pt[1];
        for (std::size_t a = 0; a < space.cells.size(); ++a) {
            const MultiIndex& alpha = space.cells[a];
            double xa = 1.0;
            for (std::size_t j = 0; j < alpha.size(); ++j)
                for (int r = 0; r < alpha[j]; ++r) xa *= spec.x[j];
            CHECK(std::abs(grad.comps[a][flat] + xa * std::cos(phase)) <= 0.02);
        }
    }

    // Phi kills the field outside [delta', 1 - delta'] per axis.
    CHECK(res.field.data[0] == 0.0);
    CHECK(res.field.data[static_cast<std::size_t>(5) * 1024 + 100] == 0.0);
    CHECK(res.field.data[static_cast<std::size_t>(1023) * 1024 + 512] == 0.0);
}

TEST_CASE("laminate picks a scale automatically") {
    LaminateSpec spec;
    spec.x = {1.0, 1.0};
    spec.grid = {64, 64};
    spec.order = 4;

    LaminateResult res = build_laminate(hessian_space(), spec);
    CHECK(res.t >= 1);
    // ~0.65 rad per step cap: t <= 0.65 * 64.
    CHECK(res.t <= 42);
    CHECK(res.good_measure_exact > 0.0);
    CHECK(res.good_measure_exact < 1.0);
    CHECK(res.good_box.lo.size() == 2);
    CHECK(res.good_box.lo[0] >= 0);
    CHECK(res.good_box.hi[0] <= 64);
}

TEST_CASE("laminate rejects malformed requests") {
    GradientSpace space = hessian_space();
    LaminateSpec spec;
    spec.x = {1.0, 1.0};
    spec.grid = {64, 64};

    LaminateSpec bad = spec;
    bad.x = {1.0, 1.0, 1.0};
    CHECK_THROWS_AS(build_laminate(space, bad), DomainError);

    bad = spec;
    bad.grid = {64};
    CHECK_THROWS_AS(build_laminate(space, bad), DomainError);

    bad = spec;
    bad.delta_prime = 0.3;
    CHECK_THROWS_AS(build_laminate(space, bad), DomainError);
    bad.delta_prime = 0.0;
    CHECK_THROWS_AS(build_laminate(space, bad), DomainError);

    bad = spec;
    bad.x = {0.0, 0.0};
    CHECK_THROWS_AS(build_laminate(space, bad), DomainError);

    // One full period must fit inside the flat region.
    bad = spec;
    bad.t = 1;
    CHECK_THROWS_AS(build_laminate(space, bad), DomainError);

    bad = spec;
    bad.t = -3;
    CHECK_THROWS_AS(build_laminate(space, bad), DomainError);

    // Mixed parity has no real rank-one vector.
    CHECK_THROWS_AS(build_laminate(mixed_parity_space(), spec), DomainError);
}
