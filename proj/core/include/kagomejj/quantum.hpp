#pragma once

#include <vector>

#include <Eigen/Dense>

#include "kagomejj/classical.hpp"
#include "kagomejj/coupling.hpp"

namespace kagomejj {

/// Dense-ED bound: 2^14 x 2^14 is the largest full eigenproblem kept in
/// scope; the plaquette results need only N = 6.
inline constexpr int max_dense_ed_bits = 14;

/// Full eigensystem of the transverse-field spin Hamiltonian over the
/// 2^N classical basis (bit order = lattice site order).
struct Spectrum {
    Eigen::VectorXd eigenvalues;  ///< ascending
    Eigen::MatrixXd eigenvectors; ///< columns, sign-fixed
    double ratio = 0.0;           ///< e_j / delta used to build H

    const Eigen::VectorXd ground_vector() const { return eigenvectors.col(0); }
    const Eigen::VectorXd excited_vector() const { return eigenvectors.col(1); }
};

/// H = E_J * diag(F_cl(n)) + Delta * (single-bit-flip adjacency).
/// Real symmetric; throws CapabilityError past max_dense_ed_bits.
Eigen::MatrixXd build_hamiltonian(const CouplingKernel& kernel, double e_j, double delta);

/// Full symmetric eigendecomposition. Each eigenvector is scaled so its
/// largest-magnitude amplitude (first index on ties) is positive.
Spectrum diagonalize(const Eigen::MatrixXd& hamiltonian);

/// Spectrum at dimensionless ratio E_J/Delta with the overall scale fixed
/// to sqrt(E_J^2 + Delta^2) = 1, i.e. eigenvalues come out normalized.
Spectrum spectrum_at_ratio(const CouplingKernel& kernel, double ratio);

/// (ratio, normalized eigenvalues) rows for a ratio grid.
std::vector<std::pair<double, Eigen::VectorXd>> spectrum_vs_ratio(
    const CouplingKernel& kernel, const std::vector<double>& ratios);

struct GroundOverlaps {
    std::vector<double> ground_amplitude;  ///< f_n = <Psi_0|n>
    std::vector<double> excited_amplitude; ///< first excited state
    std::vector<double> ground_probability;
    std::vector<double> excited_probability;
    std::vector<bool> in_census;
    double census_weight = 0.0; ///< ground probability inside the census
};

/// Amplitudes and probabilities over every classical basis state, plus the
/// total ground-state weight carried by the classical ground census.
GroundOverlaps ground_overlaps(const Spectrum& spectrum,
                               const std::vector<SpinConfig>& census);

} // namespace kagomejj
