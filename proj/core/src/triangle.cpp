#include "kagomejj/triangle.hpp"

#include <cmath>
#include <stdexcept>

namespace kagomejj {

namespace {

void check_alpha(double alpha) {
    if (!(alpha >= -1.0 && alpha <= 1.0))
        throw std::domain_error("alpha must lie in [-1, 1], got " + std::to_string(alpha));
}

} // namespace

void ModelParams::validate() const {
    check_alpha(alpha);
    if (!(e_j > 0.0)) throw std::domain_error("e_j must be > 0");
    if (!(e_c > 0.0)) throw std::domain_error("e_c must be > 0");
    if (!(temperature >= 0.0)) throw std::domain_error("temperature must be >= 0");
    if (!(delta >= 0.0)) throw std::domain_error("delta must be >= 0");
}

double frustration_from_alpha(double alpha) {
    check_alpha(alpha);
    return (1.0 - alpha) / 2.0;
}

bool is_frustrated(double alpha) {
    check_alpha(alpha);
    return alpha < alpha_critical;
}

double triangle_potential(double alpha, double phi1, double phi2) {
    return 2.0 + alpha - std::cos(phi1) - std::cos(phi2) - alpha * std::cos(phi1 + phi2);
}

TrianglePhysics triangle_physics(const ModelParams& params) {
    params.validate();
    if (!is_frustrated(params.alpha))
        throw std::domain_error("no double well: alpha >= -1/2");

    const double a = std::abs(params.alpha);
    TrianglePhysics t;
    t.u0 = std::acos(1.0 / (2.0 * a));
    // The printed expression E_J[2(1+alpha) + 1/(2 alpha)] is the well depth
    // relative to the saddle and comes out negative; the barrier is its
    // magnitude (validated against the grid-minimization oracle).
    t.barrier = std::abs(params.e_j * (2.0 * (1.0 + params.alpha) + 1.0 / (2.0 * params.alpha)));
    t.gamma = 1.0 + 2.0 * a;
    t.omega = (2.0 / t.u0) * std::sqrt(params.e_c * t.barrier / t.gamma);
    return t;
}

double tunneling_amplitude(const TrianglePhysics& physics) {
    if (!(physics.omega > 0.0))
        throw std::domain_error("tunneling estimate undefined at zero barrier (alpha = alpha_c)");
    return physics.omega * std::exp(-2.0 * physics.barrier / physics.omega);
}

} // namespace kagomejj
