#include "kagomejj/classical.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "kagomejj/errors.hpp"

namespace kagomejj {

SpinConfig::SpinConfig(int n) : n_(n), words_((n + 63) / 64, 0) {
    if (n < 0) throw std::invalid_argument("negative spin count");
}

SpinConfig SpinConfig::from_bits(std::uint64_t bits, int n) {
    if (n > 64) throw std::invalid_argument("from_bits supports at most 64 spins");
    SpinConfig c(n);
    if (n > 0) c.words_[0] = n == 64 ? bits : (bits & ((std::uint64_t{1} << n) - 1));
    return c;
}

void SpinConfig::set_up(int i, bool up) {
    const std::uint64_t mask = std::uint64_t{1} << (i & 63);
    if (up)
        words_[i >> 6] |= mask;
    else
        words_[i >> 6] &= ~mask;
}

std::uint64_t SpinConfig::bits() const {
    if (n_ > 64) throw std::logic_error("bit pattern wider than 64 spins");
    return n_ == 0 ? 0 : words_[0];
}

int SpinConfig::spin_sum() const {
    int ups = 0;
    for (std::uint64_t w : words_) ups += std::popcount(w);
    return 2 * ups - n_;
}

SpinConfig SpinConfig::flipped_all() const {
    SpinConfig c = *this;
    for (auto& w : c.words_) w = ~w;
    const int rem = n_ & 63;
    if (rem != 0 && !c.words_.empty())
        c.words_.back() &= (std::uint64_t{1} << rem) - 1;
    return c;
}

std::string SpinConfig::pattern() const {
    std::string s(n_, '-');
    for (int i = 0; i < n_; ++i)
        if (up(i)) s[i] = '+';
    return s;
}

double config_energy(const CouplingKernel& kernel, const SpinConfig& config) {
    const int np = static_cast<int>(kernel.plus_sites.size());
    const int nm = static_cast<int>(kernel.minus_sites.size());
    if (config.size() != np + nm)
        throw std::invalid_argument("configuration size does not match the kernel lattice");
    Eigen::VectorXd sp(np), sm(nm);
    for (int a = 0; a < np; ++a) sp(a) = config.spin(kernel.plus_sites[a]);
    for (int a = 0; a < nm; ++a) sm(a) = config.spin(kernel.minus_sites[a]);
    return sp.dot(kernel.g_pp * sp) + sm.dot(kernel.g_mm * sm) + sp.dot(kernel.g_pm * sm) +
           sm.dot(kernel.g_mp * sp);
}

std::vector<double> energy_table(const CouplingKernel& kernel) {
    const int n = kernel.n_sites();
    if (n > max_energy_table_bits)
        throw CapabilityError("energy table bounded to 2^" + std::to_string(max_energy_table_bits) +
                                  " configurations",
                              "use enumerate_states or the Monte Carlo sampler");
    std::vector<double> table(std::uint64_t{1} << n);
    for (std::uint64_t bits = 0; bits < table.size(); ++bits)
        table[bits] = config_energy(kernel, SpinConfig::from_bits(bits, n));
    return table;
}

namespace {

/// Gray-code sweep over all 2^n configurations with O(n) incremental
/// energy, spin-sum and local-field updates. Visits configs in Gray order;
/// visit(bits, energy, spin_sum).
template <typename Visit>
void gray_walk(const Eigen::MatrixXd& k, int n, Visit&& visit) {
    Eigen::VectorXd sigma = Eigen::VectorXd::Constant(n, -1.0);
    Eigen::VectorXd field = k * sigma;
    double energy = sigma.dot(field);
    int spin_sum = -n;
    std::uint64_t bits = 0; // Gray code of index 0

    const std::uint64_t total = std::uint64_t{1} << n;
    for (std::uint64_t i = 0;; ++i) {
        visit(bits, energy, spin_sum);
        if (i + 1 == total) break;
        const int b = std::countr_zero(i + 1);
        const double old = sigma(b);
        energy += -4.0 * old * field(b) + 4.0 * k(b, b);
        field.noalias() += (-2.0 * old) * k.col(b);
        sigma(b) = -old;
        spin_sum += old < 0 ? 2 : -2;
        bits ^= std::uint64_t{1} << b;
    }
}

void check_enumeration_size(int n) {
    if (n > max_enumeration_bits)
        throw CapabilityError("exact enumeration bounded to 2^" +
                                  std::to_string(max_enumeration_bits) + " configurations",
                              "use the montecarlo module for larger lattices");
}

struct GroundScan {
    double e_min = 0.0;
    int degeneracy = 0;
    bool truncated = false;
    std::vector<std::uint64_t> patterns;
};

GroundScan scan_ground(const Eigen::MatrixXd& k, int n) {
    constexpr std::size_t pattern_cap = std::size_t{1} << 20;
    GroundScan scan;
    double e_min = std::numeric_limits<double>::infinity();
    gray_walk(k, n, [&](std::uint64_t, double e, int) { e_min = std::min(e_min, e); });
    const double threshold = e_min + ground_tie_tolerance * std::max(1.0, std::abs(e_min));
    scan.e_min = e_min;
    gray_walk(k, n, [&](std::uint64_t bits, double e, int) {
        if (e <= threshold) {
            ++scan.degeneracy;
            if (scan.patterns.size() < pattern_cap)
                scan.patterns.push_back(bits);
            else
                scan.truncated = true;
        }
    });
    std::sort(scan.patterns.begin(), scan.patterns.end());
    return scan;
}

std::vector<SpinConfig> to_configs(const std::vector<std::uint64_t>& bits, int n) {
    std::vector<SpinConfig> out;
    out.reserve(bits.size());
    for (auto b : bits) out.push_back(SpinConfig::from_bits(b, n));
    return out;
}

} // namespace

EnumerationResult enumerate_states(const CouplingKernel& kernel, double temperature) {
    const int n = kernel.n_sites();
    check_enumeration_size(n);
    if (!(temperature > 0.0)) throw std::invalid_argument("temperature must be > 0");

    const Eigen::MatrixXd k = total_matrix(kernel);
    const GroundScan scan = scan_ground(k, n);

    EnumerationResult result;
    result.temperature = temperature;
    result.ground_energy = scan.e_min;
    result.degeneracy = scan.degeneracy;
    result.ground_patterns = to_configs(scan.patterns, n);

    std::vector<double> weight_by_sum(n + 1, 0.0); // index (S + n)/2
    const bool keep_energies = n <= max_energy_table_bits;
    if (keep_energies) result.energies.assign(std::uint64_t{1} << n, 0.0);
    double total_weight = 0.0;
    gray_walk(k, n, [&](std::uint64_t bits, double e, int s) {
        const double w = std::exp(-(e - scan.e_min) / temperature);
        weight_by_sum[(s + n) / 2] += w;
        total_weight += w;
        if (keep_energies) result.energies[bits] = e;
    });
    for (int idx = 0; idx <= n; ++idx)
        if (weight_by_sum[idx] > 0.0)
            result.p_m[2 * idx - n] = weight_by_sum[idx] / total_weight;
    return result;
}

std::vector<std::pair<double, double>> polarization_curve(
    const CouplingKernel& kernel, const std::vector<double>& temperatures) {
    const int n = kernel.n_sites();
    check_enumeration_size(n);
    for (double t : temperatures)
        if (!(t > 0.0)) throw std::invalid_argument("temperature must be > 0");

    const Eigen::MatrixXd k = total_matrix(kernel);
    double e_min = std::numeric_limits<double>::infinity();
    gray_walk(k, n, [&](std::uint64_t, double e, int) { e_min = std::min(e_min, e); });

    const std::size_t nt = temperatures.size();
    std::vector<double> weights(nt * (n + 1), 0.0);
    std::vector<double> inv_t(nt);
    for (std::size_t t = 0; t < nt; ++t) inv_t[t] = 1.0 / temperatures[t];
    gray_walk(k, n, [&](std::uint64_t, double e, int s) {
        const double de = e - e_min;
        const std::size_t idx = static_cast<std::size_t>((s + n) / 2);
        for (std::size_t t = 0; t < nt; ++t)
            weights[t * (n + 1) + idx] += std::exp(-de * inv_t[t]);
    });

    std::vector<std::pair<double, double>> curve;
    curve.reserve(nt);
    for (std::size_t t = 0; t < nt; ++t) {
        double z = 0.0, msq = 0.0;
        for (int idx = 0; idx <= n; ++idx) {
            const double w = weights[t * (n + 1) + idx];
            const double m = static_cast<double>(2 * idx - n) / n;
            z += w;
            msq += w * m * m;
        }
        curve.emplace_back(temperatures[t], std::sqrt(msq / z));
    }
    return curve;
}

GroundCensus ground_census(const CouplingKernel& kernel) {
    const int n = kernel.n_sites();
    check_enumeration_size(n);
    const Eigen::MatrixXd k = total_matrix(kernel);
    const GroundScan scan = scan_ground(k, n);
    GroundCensus census;
    census.energy = scan.e_min;
    census.degeneracy = scan.degeneracy;
    census.patterns_truncated = scan.truncated;
    census.patterns = to_configs(scan.patterns, n);
    return census;
}

} // namespace kagomejj
