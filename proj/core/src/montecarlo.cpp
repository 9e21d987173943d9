#include "kagomejj/montecarlo.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

namespace kagomejj {

void QuenchSchedule::validate() const {
    if (!(t_start > t_end && t_end > 0.0))
        throw std::invalid_argument("need t_start > t_end > 0");
    if (!(cooling_factor > 0.0 && cooling_factor < 1.0))
        throw std::invalid_argument("cooling_factor must lie in (0, 1)");
    if (sweeps_per_step < 1 || equilibration_sweeps < 0 || snapshot_every_steps < 0)
        throw std::invalid_argument("invalid sweep counts in quench schedule");
}

namespace {

/// Uniform double in [0, 1) from the top 53 bits; fully specified, so
/// trajectories are bit-reproducible for a given seed.
double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

int uniform_below(std::mt19937_64& rng, int bound) {
    return static_cast<int>(rng() % static_cast<std::uint64_t>(bound));
}

double recompute_energy(const Eigen::MatrixXd& k, const SpinConfig& config,
                        Eigen::VectorXd& field) {
    const int n = config.size();
    Eigen::VectorXd sigma(n);
    for (int i = 0; i < n; ++i) sigma(i) = config.spin(i);
    field.noalias() = k * sigma;
    return sigma.dot(field);
}

} // namespace

MCState make_mc_state(const Eigen::MatrixXd& total_kernel, std::uint64_t seed) {
    MCState state;
    state.rng.seed(seed);
    const int n = static_cast<int>(total_kernel.rows());
    state.config = SpinConfig(n);
    for (int i = 0; i < n; ++i) state.config.set_up(i, uniform01(state.rng) < 0.5);
    state.energy = recompute_energy(total_kernel, state.config, state.field);
    return state;
}

double local_field(const CouplingKernel& kernel, const SpinConfig& config, int site) {
    if (site < 0 || site >= config.size()) throw std::invalid_argument("site index out of range");
    if (config.size() != kernel.n_sites())
        throw std::invalid_argument("configuration size does not match the kernel lattice");
    const Eigen::MatrixXd k = total_matrix(kernel);
    double h = 0.0;
    for (int j = 0; j < config.size(); ++j) h += k(site, j) * config.spin(j);
    return h;
}

double flip_cost(const Eigen::MatrixXd& total_kernel, const SpinConfig& config, int site) {
    if (site < 0 || site >= config.size()) throw std::invalid_argument("site index out of range");
    double h = 0.0;
    for (int j = 0; j < config.size(); ++j) h += total_kernel(site, j) * config.spin(j);
    return -4.0 * config.spin(site) * h + 4.0 * total_kernel(site, site);
}

double metropolis_sweep(MCState& state, const Eigen::MatrixXd& total_kernel,
                        double temperature) {
    if (!(temperature > 0.0)) throw std::invalid_argument("temperature must be > 0");
    const int n = state.config.size();

    // Fisher-Yates permutation: each site proposed exactly once per sweep
    static thread_local std::vector<int> order;
    order.resize(n);
    for (int i = 0; i < n; ++i) order[i] = i;
    for (int i = n - 1; i > 0; --i) std::swap(order[i], order[uniform_below(state.rng, i + 1)]);

    int accepted = 0;
    for (int idx = 0; idx < n; ++idx) {
        const int i = order[idx];
        const double sigma_i = state.config.spin(i);
        const double de = -4.0 * sigma_i * state.field(i) + 4.0 * total_kernel(i, i);
        if (de <= 0.0 || uniform01(state.rng) < std::exp(-de / temperature)) {
            state.config.flip(i);
            state.energy += de;
            state.field.noalias() += (-2.0 * sigma_i) * total_kernel.col(i);
            ++accepted;
        }
    }
    ++state.sweep_count;
    state.temperature = temperature;

    if (state.sweep_count % MCState::recheck_interval == 0) {
        Eigen::VectorXd fresh_field;
        const double fresh = recompute_energy(total_kernel, state.config, fresh_field);
        const double drift = std::abs(fresh - state.energy);
        state.max_energy_drift = std::max(state.max_energy_drift, drift);
        if (drift > 1e-8)
            throw std::runtime_error("incremental energy drifted beyond 1e-8");
        state.energy = fresh;
        state.field = std::move(fresh_field);
    }
    return static_cast<double>(accepted) / n;
}

QuenchResult quench_run(const LatticeSpec& lattice, const CouplingKernel& kernel,
                        const QuenchSchedule& schedule, std::uint64_t seed) {
    schedule.validate();
    const Eigen::MatrixXd k = total_matrix(kernel);
    QuenchResult result;
    result.final_state = make_mc_state(k, seed);
    MCState& state = result.final_state;

    auto record = [&](double t) {
        const OrderParameters op = order_parameters(state.config, lattice);
        result.series.push_back(
            {state.sweep_count, t, state.energy, op.polarization, op.stripe_score});
    };

    int step = 0;
    for (double t = schedule.t_start; t > schedule.t_end;
         t = std::max(t * schedule.cooling_factor, schedule.t_end)) {
        for (int s = 0; s < schedule.sweeps_per_step; ++s) metropolis_sweep(state, k, t);
        record(t);
        if (schedule.snapshot_every_steps > 0 && step % schedule.snapshot_every_steps == 0)
            result.snapshots.push_back({state.sweep_count, t, state.config});
        ++step;
    }
    for (int s = 0; s < schedule.equilibration_sweeps; ++s)
        metropolis_sweep(state, k, schedule.t_end);
    record(schedule.t_end);
    result.snapshots.push_back({state.sweep_count, schedule.t_end, state.config});
    return result;
}

OrderParameters order_parameters(const SpinConfig& config, const LatticeSpec& lattice) {
    const int n = config.size();
    OrderParameters op;
    op.polarization = static_cast<double>(config.spin_sum()) / n;

    const int m_extent = lattice.m_extent();
    op.structure_factor.reserve(m_extent);
    for (int j = 0; j < m_extent; ++j) {
        const double k_m = 2.0 * std::numbers::pi * j / m_extent;
        std::complex<double> amp(0.0, 0.0);
        for (int i = 0; i < n; ++i)
            amp += static_cast<double>(config.spin(i)) *
                   std::polar(1.0, k_m * lattice.sites()[i].m);
        const double s = std::norm(amp) / n;
        op.structure_factor.emplace_back(k_m, s);
        if (j != 0) op.stripe_score = std::max(op.stripe_score, s / n);
    }
    return op;
}

namespace {

template <typename Cell>
std::string render_grid(const SpinConfig& config, const LatticeSpec& lattice, Cell&& cell,
                        const std::string& sep, const std::string& prefix) {
    std::string out = prefix;
    for (int m = lattice.m_extent() - 1; m >= 0; --m) {
        for (int l = 0; l < lattice.l_extent(); ++l)
            for (Sublattice s : {Sublattice::Plus, Sublattice::Minus}) {
                const int idx = lattice.site_index(l, m, s);
                if (!(l == 0 && s == Sublattice::Plus)) out += sep;
                out += cell(idx);
            }
        out += '\n';
    }
    return out;
}

} // namespace

std::string render_snapshot_text(const SpinConfig& config, const LatticeSpec& lattice) {
    return render_grid(
        config, lattice,
        [&](int idx) -> std::string {
            if (idx < 0) return " ";
            return config.spin(idx) > 0 ? "#" : ".";
        },
        "", "");
}

std::string snapshot_pgm(const SpinConfig& config, const LatticeSpec& lattice) {
    const std::string header = "P2\n" + std::to_string(2 * lattice.l_extent()) + " " +
                               std::to_string(lattice.m_extent()) + "\n255\n";
    return render_grid(
        config, lattice,
        [&](int idx) -> std::string {
            if (idx < 0) return "128";
            return config.spin(idx) > 0 ? "0" : "255";
        },
        " ", header);
}

std::string snapshot_csv(const SpinConfig& config, const LatticeSpec& lattice) {
    return render_grid(
        config, lattice,
        [&](int idx) -> std::string {
            if (idx < 0) return "";
            return config.spin(idx) > 0 ? "1" : "-1";
        },
        ",", "");
}

} // namespace kagomejj
