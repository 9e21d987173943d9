#include <doctest.h>

#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "kagomejj/triangle.hpp"

using namespace kagomejj;

namespace {

struct GridMin {
    double phi1, phi2, value;
};

// Independent oracle: zooming 2-D grid minimization of the bare potential.
GridMin minimize_potential(double alpha) {
    double c1 = 0.0, c2 = 0.0, span = 2.0 * std::numbers::pi;
    GridMin best{0.0, 0.0, std::numeric_limits<double>::infinity()};
    for (int level = 0; level < 5; ++level) {
        const int steps = 240;
        best.value = std::numeric_limits<double>::infinity();
        for (int i = 0; i <= steps; ++i)
            for (int j = 0; j <= steps; ++j) {
                const double p1 = c1 - span / 2 + span * i / steps;
                const double p2 = c2 - span / 2 + span * j / steps;
                const double u = triangle_potential(alpha, p1, p2);
                if (u < best.value) best = {p1, p2, u};
            }
        c1 = best.phi1;
        c2 = best.phi2;
        span = 4.0 * span / 240;
    }
    return best;
}

} // namespace

TEST_SUITE("triangle") {

TEST_CASE("frustration parameter endpoints and threshold") {
    CHECK(frustration_from_alpha(-1.0) == 1.0);
    CHECK(frustration_from_alpha(1.0) == 0.0);
    CHECK(frustration_from_alpha(-0.5) == 0.75);
    CHECK_THROWS_AS(frustration_from_alpha(-1.5), std::domain_error);
    CHECK_THROWS_AS(frustration_from_alpha(1.01), std::domain_error);
}

TEST_CASE("frustration criterion is strict at alpha_c") {
    CHECK(is_frustrated(-0.9));
    CHECK_FALSE(is_frustrated(-0.5));
    CHECK_FALSE(is_frustrated(0.3));
}

TEST_CASE("double-well location and barrier at alpha = -1") {
    ModelParams p;
    p.alpha = -1.0;
    const TrianglePhysics t = triangle_physics(p);
    CHECK(t.u0 == doctest::Approx(std::numbers::pi / 3).epsilon(1e-14));
    CHECK(t.barrier == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(t.gamma == doctest::Approx(3.0));
}

TEST_CASE("barrier closes at the critical coupling") {
    ModelParams p;
    p.alpha = -0.5 - 1e-12;
    CHECK(triangle_physics(p).barrier < 1e-11);
    p.alpha = -0.3;
    CHECK_THROWS_AS(triangle_physics(p), std::domain_error);
}

TEST_CASE("analytic minimum matches grid minimization of the potential") {
    for (double alpha : {-0.6, -0.75, -0.9, -1.0}) {
        ModelParams p;
        p.alpha = alpha;
        const TrianglePhysics t = triangle_physics(p);
        const GridMin gm = minimize_potential(alpha);
        // saddle at the origin has U = 0, so the barrier is -U_min
        CHECK(t.barrier == doctest::Approx(-gm.value).epsilon(1e-6));
        const double phi_s = (gm.phi1 + gm.phi2) / 2.0;
        CHECK(std::abs(phi_s) == doctest::Approx(t.u0).epsilon(1e-6));
        CHECK(std::abs(gm.phi2 - gm.phi1) < 1e-5);
    }
}

TEST_CASE("both wells are equivalent strict local minima") {
    for (double alpha : {-0.55, -0.7, -1.0}) {
        ModelParams p;
        p.alpha = alpha;
        const TrianglePhysics t = triangle_physics(p);
        const double up = triangle_potential(alpha, t.u0, t.u0);
        const double dn = triangle_potential(alpha, -t.u0, -t.u0);
        CHECK(std::abs(up - dn) <= 1e-12);

        // positive-definite numerical Hessian at both minima
        const double h = 1e-4;
        for (double s : {1.0, -1.0}) {
            const double x = s * t.u0, y = s * t.u0;
            const double fxx = (triangle_potential(alpha, x + h, y) -
                                2 * triangle_potential(alpha, x, y) +
                                triangle_potential(alpha, x - h, y)) / (h * h);
            const double fyy = (triangle_potential(alpha, x, y + h) -
                                2 * triangle_potential(alpha, x, y) +
                                triangle_potential(alpha, x, y - h)) / (h * h);
            const double fxy = (triangle_potential(alpha, x + h, y + h) -
                                triangle_potential(alpha, x + h, y - h) -
                                triangle_potential(alpha, x - h, y + h) +
                                triangle_potential(alpha, x - h, y - h)) / (4 * h * h);
            CHECK(fxx > 0.0);
            CHECK(fxx * fyy - fxy * fxy > 0.0);
        }
    }
}

TEST_CASE("barrier is continuous and decreasing toward alpha_c") {
    const int n = 120;
    double prev = -1.0;
    for (int i = 0; i < n; ++i) {
        const double alpha = -1.0 + (0.5 - 1e-9) * i / (n - 1);
        ModelParams p;
        p.alpha = alpha;
        const double b = triangle_physics(p).barrier;
        CHECK(b >= 0.0);
        if (i > 0) {
            CHECK(b < prev);             // monotone toward zero
            CHECK(std::abs(b - prev) < 0.02); // no jumps on this grid
        }
        prev = b;
    }
    CHECK(prev < 1e-8);
}

TEST_CASE("tunneling estimate limits") {
    TrianglePhysics t{1.0, 2.0, 3.0, 2.0}; // omega equal to the barrier
    CHECK(tunneling_amplitude(t) == doctest::Approx(2.0 * std::exp(-2.0)).epsilon(1e-14));

    t.barrier = 1e4;
    t.omega = 1.0;
    CHECK(tunneling_amplitude(t) < 1e-300); // deep-well limit -> 0

    t.omega = 0.0;
    CHECK_THROWS_AS(tunneling_amplitude(t), std::domain_error);
}

TEST_CASE("tunneling regression anchor at alpha = -1, E_C = 0.1") {
    ModelParams p;
    p.alpha = -1.0;
    p.e_c = 0.1;
    const TrianglePhysics t = triangle_physics(p);
    CHECK(t.omega == doctest::Approx(0.24656177762459994).epsilon(1e-12));
    CHECK(tunneling_amplitude(t) == doctest::Approx(0.0042709398366269045).epsilon(1e-10));
}

} // TEST_SUITE
