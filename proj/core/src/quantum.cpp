#include "kagomejj/quantum.hpp"

#include <cmath>
#include <stdexcept>

#include <Eigen/Eigenvalues>

#include "kagomejj/errors.hpp"

namespace kagomejj {

Eigen::MatrixXd build_hamiltonian(const CouplingKernel& kernel, double e_j, double delta) {
    const int n = kernel.n_sites();
    if (n > max_dense_ed_bits)
        throw CapabilityError("dense ED bounded to 2^" + std::to_string(max_dense_ed_bits) +
                                  " basis states",
                              "restrict to the plaquette or a smaller lattice");
    if (!(delta >= 0.0)) throw std::domain_error("delta must be >= 0");

    const std::vector<double> diag = energy_table(kernel);
    const Eigen::Index dim = Eigen::Index{1} << n;
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(dim, dim);
    for (Eigen::Index state = 0; state < dim; ++state) {
        h(state, state) = e_j * diag[state];
        for (int bit = 0; bit < n; ++bit)
            h(state, state ^ (Eigen::Index{1} << bit)) += delta;
    }
    return h;
}

Spectrum diagonalize(const Eigen::MatrixXd& hamiltonian) {
    if (hamiltonian.rows() != hamiltonian.cols())
        throw std::invalid_argument("hamiltonian must be square");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(hamiltonian);
    if (es.info() != Eigen::Success)
        throw std::runtime_error("eigendecomposition failed");

    Spectrum spectrum;
    spectrum.eigenvalues = es.eigenvalues();
    spectrum.eigenvectors = es.eigenvectors();
    for (Eigen::Index c = 0; c < spectrum.eigenvectors.cols(); ++c) {
        Eigen::Index imax = 0;
        spectrum.eigenvectors.col(c).cwiseAbs().maxCoeff(&imax);
        if (spectrum.eigenvectors(imax, c) < 0.0)
            spectrum.eigenvectors.col(c) = -spectrum.eigenvectors.col(c);
    }
    return spectrum;
}

Spectrum spectrum_at_ratio(const CouplingKernel& kernel, double ratio) {
    if (!(ratio >= 0.0)) throw std::domain_error("ratio E_J/Delta must be >= 0");
    const double hyp = std::sqrt(1.0 + ratio * ratio);
    const double e_j = ratio / hyp;
    const double delta = 1.0 / hyp; // sqrt(e_j^2 + delta^2) = 1
    Spectrum s = diagonalize(build_hamiltonian(kernel, e_j, delta));
    s.ratio = ratio;
    return s;
}

std::vector<std::pair<double, Eigen::VectorXd>> spectrum_vs_ratio(
    const CouplingKernel& kernel, const std::vector<double>& ratios) {
    std::vector<std::pair<double, Eigen::VectorXd>> table;
    table.reserve(ratios.size());
    for (double r : ratios) table.emplace_back(r, spectrum_at_ratio(kernel, r).eigenvalues);
    return table;
}

GroundOverlaps ground_overlaps(const Spectrum& spectrum,
                               const std::vector<SpinConfig>& census) {
    const Eigen::Index dim = spectrum.eigenvectors.rows();
    if (spectrum.eigenvectors.cols() < 2)
        throw std::invalid_argument("need at least two eigenvectors");

    GroundOverlaps o;
    o.ground_amplitude.resize(dim);
    o.excited_amplitude.resize(dim);
    o.ground_probability.resize(dim);
    o.excited_probability.resize(dim);
    o.in_census.assign(dim, false);
    for (const auto& pattern : census) o.in_census[pattern.bits()] = true;

    for (Eigen::Index n = 0; n < dim; ++n) {
        const double fg = spectrum.eigenvectors(n, 0);
        const double fe = spectrum.eigenvectors(n, 1);
        o.ground_amplitude[n] = fg;
        o.excited_amplitude[n] = fe;
        o.ground_probability[n] = fg * fg;
        o.excited_probability[n] = fe * fe;
        if (o.in_census[n]) o.census_weight += fg * fg;
    }
    return o;
}

} // namespace kagomejj
