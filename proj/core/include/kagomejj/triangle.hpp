#pragma once

#include <string>

namespace kagomejj {

/// Below alpha_c a single triangle develops the double-well potential
/// (frustration parameter above f_c = 3/4).
inline constexpr double alpha_critical = -0.5;

/// Physical parameters of the array. All energies are measured in units
/// of the 0-junction Josephson energy e_j (default 1), hbar = 1, and
/// temperature is k_B*T in units of the barrier E_J(alpha).
struct ModelParams {
    double alpha = -1.0;      ///< horizontal-link coupling ratio, in [-1, 1]
    double e_j = 1.0;         ///< Josephson energy scale
    double e_c = 0.1;         ///< charging energy
    double temperature = 1.0; ///< k_B*T / E_J(alpha)
    double delta = 0.0;       ///< transverse tunneling amplitude (0 = derive)

    /// Throws std::domain_error on any out-of-range field.
    void validate() const;
};

/// Double-well data of one frustrated triangle.
struct TrianglePhysics {
    double u0;      ///< minimum location of the symmetric phase, in (0, pi/2]
    double barrier; ///< barrier height E_J(alpha) >= 0 between the two wells
    double gamma;   ///< mass factor 1 + 2|alpha|
    double omega;   ///< small-oscillation frequency of phi_s (hbar = 1)
};

/// f = (1 - alpha)/2. Throws std::domain_error for alpha outside [-1, 1].
double frustration_from_alpha(double alpha);

/// True iff alpha < -1/2 (strict); the boundary has zero barrier.
bool is_frustrated(double alpha);

/// Potential energy of one triangle in units of e_j,
/// U = 2 + alpha - cos(phi1) - cos(phi2) - alpha*cos(phi1 + phi2),
/// normalized so the symmetric saddle at phi1 = phi2 = 0 sits at zero.
double triangle_potential(double alpha, double phi1, double phi2);

/// Well location, barrier, mass factor and oscillation frequency for a
/// frustrated triangle. Throws std::domain_error unless is_frustrated().
TrianglePhysics triangle_physics(const ModelParams& params);

/// WKB-style order-of-magnitude estimate Omega * exp(-2 E_J(alpha)/Omega).
/// The quantum module also accepts delta directly; this is only the
/// printed estimate. Throws std::domain_error when omega == 0.
double tunneling_amplitude(const TrianglePhysics& physics);

} // namespace kagomejj
