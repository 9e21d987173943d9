#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "kagomejj/coupling.hpp"

namespace kagomejj {

/// State-space bound for the exact-enumeration paths.
inline constexpr int max_enumeration_bits = 30;
/// Bound for materializing the full per-configuration energy table.
inline constexpr int max_energy_table_bits = 20;
/// Relative tie tolerance for ground-state identification (pseudo-inverse
/// kernels carry rounding; exact rational arithmetic is out of scope).
inline constexpr double ground_tie_tolerance = 1e-9;

/// One classical state sigma in {-1, +1}^N; bit i set <=> sigma_i = +1,
/// bit order = LatticeSpec site order. Doubles as the ED basis label.
class SpinConfig {
public:
    SpinConfig() = default;
    explicit SpinConfig(int n); // all sigma = -1
    static SpinConfig from_bits(std::uint64_t bits, int n);

    int size() const { return n_; }
    bool up(int i) const { return (words_[i >> 6] >> (i & 63)) & 1u; }
    int spin(int i) const { return up(i) ? 1 : -1; }
    void set_up(int i, bool up);
    void flip(int i) { words_[i >> 6] ^= std::uint64_t{1} << (i & 63); }

    /// Integer bit pattern; requires size() <= 64.
    std::uint64_t bits() const;
    int spin_sum() const; // sum of sigma_i
    SpinConfig flipped_all() const;

    /// Site-order string of '+'/'-' characters.
    std::string pattern() const;

    friend bool operator==(const SpinConfig& a, const SpinConfig& b) = default;

private:
    int n_ = 0;
    std::vector<std::uint64_t> words_;
};

/// Full Eq.-(20)-style quadratic form: both same-sublattice terms and both
/// cross terms. Units of E_J(alpha).
double config_energy(const CouplingKernel& kernel, const SpinConfig& config);

/// energies[bits] = config_energy(from_bits(bits)); direct evaluation,
/// bounded by max_energy_table_bits.
std::vector<double> energy_table(const CouplingKernel& kernel);

struct GroundCensus {
    double energy = 0.0;
    int degeneracy = 0;
    bool patterns_truncated = false;
    std::vector<SpinConfig> patterns; // ascending bit patterns
};

struct EnumerationResult {
    double temperature = 0.0;
    double ground_energy = 0.0;
    int degeneracy = 0;
    std::vector<SpinConfig> ground_patterns;
    /// Spin-sum S = sum sigma -> probability at this temperature; the
    /// polarization is M = S / N.
    std::map<int, double> p_m;
    /// Filled only when n <= max_energy_table_bits.
    std::vector<double> energies;
};

/// Exact Boltzmann statistics over all 2^N configurations (log-sum-exp
/// normalized). Throws CapabilityError past max_enumeration_bits with a
/// hint to use the Monte Carlo sampler.
EnumerationResult enumerate_states(const CouplingKernel& kernel, double temperature);

/// mbar(T) = sqrt(sum_M P_M M^2) per temperature, one state-space sweep
/// for the whole grid.
std::vector<std::pair<double, double>> polarization_curve(const CouplingKernel& kernel,
                                                          const std::vector<double>& temperatures);

GroundCensus ground_census(const CouplingKernel& kernel);

} // namespace kagomejj
