#pragma once

#include <complex>
#include <filesystem>
#include <functional>
#include <vector>

#include <Eigen/Dense>

#include "kagomejj/lattice.hpp"

namespace kagomejj {

enum class KernelSource { FinitePseudoInverse, InfiniteClosedForm };

/// Effective spin-spin interaction blocks between triangle sublattices.
/// Rows and columns are sublattice-local triangle indices; plus_sites /
/// minus_sites map them back to global lattice sites.
struct CouplingKernel {
    Eigen::MatrixXd g_pp;
    Eigen::MatrixXd g_mm;
    Eigen::MatrixXd g_pm; ///< G^{+-}: row = + triangle, col = - triangle
    Eigen::MatrixXd g_mp; ///< transpose of g_pm by the symmetry identity
    KernelSource source = KernelSource::FinitePseudoInverse;
    double tolerance = 0.0;  ///< relative pseudo-inverse eigenvalue cutoff
    bool zero_kernel = false; ///< no hexagons (or all-zero constraint form)
    std::vector<int> plus_sites;
    std::vector<int> minus_sites;

    int n_sites() const {
        return static_cast<int>(plus_sites.size() + minus_sites.size());
    }
};

/// A = G+^T G+ + G-^T G- (hexagon x hexagon, symmetric PSD).
Eigen::MatrixXd constraint_quadratic_form(const ConstraintMatrix& constraints);

/// Symmetric pseudo-inverse discarding eigenvalues below
/// tolerance * lambda_max; drops the periodic-lattice zero mode.
Eigen::MatrixXd cutoff_pseudo_inverse(const Eigen::MatrixXd& a, double tolerance);

/// Kernel via the constrained quadratic form: A = G+^T G+ + G-^T G-,
/// eigenvalue-cutoff pseudo-inverse of A (relative tolerance), then the
/// four sandwich products. Throws std::invalid_argument for tolerance <= 0.
CouplingKernel finite_kernel(const LatticeSpec& lattice, const ConstraintMatrix& constraints,
                             double tolerance = 1e-10);

/// Closed-form infinite-lattice G^{+-} for tuple offset (dl, dm) =
/// (l - l', m - m'): three guarded binomial terms; zero outside the
/// half-plane support window. G^{-+}(dl, dm) = G^{+-}(-dl, -dm).
double infinite_kernel_entry(int dl, int dm);

/// Brillouin-zone quadrature of the same entry: midpoint sums on
/// half-cell-shifted uniform grids at grid_size/4, /2 and /1, combined by
/// Richardson extrapolation of the h^{3/2} and h^2 error terms. The plain
/// midpoint rule stalls near 7e-6 at 1024^2 because the integrand's
/// denominator has zeros grazing the unit torus near the origin.
/// grid_size must be >= 64 and divisible by 4.
double fourier_oracle_entry(int dl, int dm, int grid_size);

/// All offsets |dl| <= max_dl, |dm| <= max_dm in one pass over shared
/// symbol grids; entry (dl + max_dl, dm + max_dm). Much cheaper than
/// per-entry calls when scanning offset windows.
Eigen::MatrixXd fourier_oracle_table(int max_dl, int max_dm, int grid_size);

/// Constraint symbols on the Brillouin zone.
std::complex<double> symbol_plus(double q, double r);
std::complex<double> symbol_minus(double q, double r);
/// |G_qr|^2, identical for both signs: -4sin^2(r/2)+8sin^2((q-r)/2)+8sin^2(q/2).
double symbol_modulus_sq(double q, double r);

enum class ProfileDirection { Horizontal, Vertical, Diagonal };

struct DecayPoint {
    int distance = 0;
    double value = 0.0;
};

/// Samples a kernel entry function along one ray: Horizontal (d, 0),
/// Vertical (0, -d), Diagonal (d, -round(d/2)) -- the algebraic-decay ray.
std::vector<DecayPoint> kernel_decay_profile(const std::function<double(int, int)>& entry,
                                             ProfileDirection direction, int max_range);
std::vector<DecayPoint> kernel_decay_profile(ProfileDirection direction, int max_range);

/// Full N x N interaction matrix in global site order; symmetric.
Eigen::MatrixXd total_matrix(const CouplingKernel& kernel);

/// Binary matrix container (magic + row-major f64 blocks) plus JSON sidecar
/// recording lattice hash, tolerance and source.
void save_kernel(const CouplingKernel& kernel, const LatticeSpec& lattice,
                 const std::filesystem::path& binary_path,
                 const std::filesystem::path& sidecar_path);
CouplingKernel load_kernel(const std::filesystem::path& binary_path);

} // namespace kagomejj
