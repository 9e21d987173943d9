#include <doctest.h>

#include <algorithm>
#include <bit>
#include <cmath>
#include <random>

#include "kagomejj/errors.hpp"
#include "kagomejj/quantum.hpp"

using namespace kagomejj;

namespace {

CouplingKernel plaquette_kernel() {
    const auto spec = LatticeSpec::plaquettes(1, 1);
    return finite_kernel(spec, constraint_matrices(spec));
}

} // namespace

TEST_SUITE("quantum") {

TEST_CASE("delta = 0 reduces to the classical energy multiset") {
    const auto kernel = plaquette_kernel();
    const auto h = build_hamiltonian(kernel, 1.0, 0.0);
    const auto spectrum = diagonalize(h);
    auto classical = energy_table(kernel);
    std::sort(classical.begin(), classical.end());
    for (int i = 0; i < 64; ++i)
        CHECK(std::abs(spectrum.eigenvalues(i) - classical[i]) <= 1e-10);
}

TEST_CASE("e_j = 0 gives the free-spin product ground state") {
    const auto kernel = plaquette_kernel();
    const double delta = 0.7;
    const auto spectrum = diagonalize(build_hamiltonian(kernel, 0.0, delta));
    CHECK(spectrum.eigenvalues(0) == doctest::Approx(-6.0 * delta).epsilon(1e-12));

    // explicit tensor product of (|0> - |1>)/sqrt(2) per spin:
    // amplitude (-1)^{popcount} / 8, up to the fixed global sign
    const auto ground = spectrum.ground_vector();
    for (int n = 0; n < 64; ++n) {
        const double want = (std::popcount(static_cast<unsigned>(n)) % 2 ? -1.0 : 1.0) / 8.0;
        CHECK(std::abs(ground(n) - want) <= 1e-10);
    }
}

TEST_CASE("off-diagonal rows count the N single-bit neighbors") {
    const auto kernel = plaquette_kernel();
    const double delta = 0.05;
    const auto h = build_hamiltonian(kernel, 1.0, delta);
    for (int row = 0; row < 64; ++row) {
        double off = 0.0;
        for (int col = 0; col < 64; ++col)
            if (col != row) off += h(row, col);
        CHECK(off == doctest::Approx(6.0 * delta).epsilon(1e-12));
    }
    CHECK((h - h.transpose()).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("hamiltonian commutes with the global spin-flip parity") {
    const auto kernel = plaquette_kernel();
    const auto h = build_hamiltonian(kernel, 1.0, 0.05);
    Eigen::MatrixXd parity = Eigen::MatrixXd::Zero(64, 64);
    for (int n = 0; n < 64; ++n) parity(n ^ 63, n) = 1.0;
    CHECK((h * parity - parity * h).cwiseAbs().maxCoeff() <= 1e-10);
}

TEST_CASE("eigenvectors are orthonormal and eigenvalues sorted") {
    const auto kernel = plaquette_kernel();
    const auto s = diagonalize(build_hamiltonian(kernel, 1.0, 0.05));
    const Eigen::MatrixXd gram =
        s.eigenvectors.transpose() * s.eigenvectors - Eigen::MatrixXd::Identity(64, 64);
    CHECK(gram.cwiseAbs().maxCoeff() <= 1e-9);
    for (int i = 1; i < 64; ++i) CHECK(s.eigenvalues(i) >= s.eigenvalues(i - 1));
    CHECK(std::abs(s.ground_vector().squaredNorm() - 1.0) <= 1e-10);
}

TEST_CASE("ground energy is variational") {
    const auto kernel = plaquette_kernel();
    const auto h = build_hamiltonian(kernel, 1.0, 0.05);
    const auto s = diagonalize(h);
    std::mt19937_64 rng(11);
    std::normal_distribution<double> gauss;
    for (int trial = 0; trial < 100; ++trial) {
        Eigen::VectorXd psi(64);
        for (int i = 0; i < 64; ++i) psi(i) = gauss(rng);
        psi.normalize();
        CHECK(psi.dot(h * psi) >= s.eigenvalues(0) - 1e-12);
    }
}

TEST_CASE("ground-state depression scales as delta^2 in the weak-tunneling limit") {
    const auto kernel = plaquette_kernel();
    std::vector<double> shifts;
    for (double delta : {1e-3, 2e-3, 4e-3}) {
        const auto s = diagonalize(build_hamiltonian(kernel, 1.0, delta));
        shifts.push_back(-s.eigenvalues(0)); // classical ground energy is 0
    }
    CHECK(shifts[1] / shifts[0] == doctest::Approx(4.0).epsilon(0.01));
    CHECK(shifts[2] / shifts[1] == doctest::Approx(4.0).epsilon(0.02));
}

TEST_CASE("delta = E_J/20 splits the spectrum into bands") {
    const auto kernel = plaquette_kernel();
    const auto s = diagonalize(build_hamiltonian(kernel, 1.0, 0.05));
    const double spread = s.eigenvalues(13) - s.eigenvalues(0);
    const double gap = s.eigenvalues(14) - s.eigenvalues(13);
    CHECK(gap > 2.0 * spread); // well-defined lowest band (measured ratio ~3)
    // degeneracy lifting: the 14 classically degenerate levels spread out
    CHECK(spread > 0.01);
}

TEST_CASE("normalized spectrum limits across the ratio axis") {
    const auto kernel = plaquette_kernel();

    // ratio -> 0: free spins, E/delta in {-6, -4, ..., 6}
    const auto low = spectrum_at_ratio(kernel, 0.0);
    CHECK(low.eigenvalues(0) == doctest::Approx(-6.0).epsilon(1e-10));
    CHECK(low.eigenvalues(63) == doctest::Approx(6.0).epsilon(1e-10));
    for (int i = 0; i < 64; ++i) {
        const double nearest = std::round(low.eigenvalues(i) / 2.0) * 2.0;
        CHECK(std::abs(low.eigenvalues(i) - nearest) <= 1e-10);
    }

    // large ratio: classical energies (normalized scale approaches E_J = 1)
    const auto high = spectrum_at_ratio(kernel, 1e7);
    auto classical = energy_table(kernel);
    std::sort(classical.begin(), classical.end());
    for (int i = 0; i < 64; ++i)
        CHECK(std::abs(high.eigenvalues(i) - classical[i]) < 1e-5);

    const auto table = spectrum_vs_ratio(kernel, {0.0, 1.0, 20.0});
    CHECK(table.size() == 3);
    CHECK(table[2].first == 20.0);
    CHECK_THROWS_AS(spectrum_at_ratio(kernel, -1.0), std::domain_error);
}

TEST_CASE("ground overlaps concentrate on the 12 non-symmetric census patterns") {
    const auto kernel = plaquette_kernel();
    const auto census = ground_census(kernel);
    const auto s = diagonalize(build_hamiltonian(kernel, 1.0, 0.05));
    const auto overlaps = ground_overlaps(s, census.patterns);

    // census weight regression anchor, computed once with this ED oracle
    CHECK(overlaps.census_weight == doctest::Approx(0.8166).epsilon(2e-3));

    double min_inside_12 = 1.0, max_outside = 0.0;
    for (int n = 0; n < 64; ++n) {
        const bool symmetric = n == 0 || n == 63;
        if (overlaps.in_census[n] && !symmetric)
            min_inside_12 = std::min(min_inside_12, overlaps.ground_probability[n]);
        if (!overlaps.in_census[n])
            max_outside = std::max(max_outside, overlaps.ground_probability[n]);
    }
    CHECK(min_inside_12 > max_outside);

    // probabilities sum to one for both stored vectors
    double pg = 0.0, pe = 0.0;
    for (int n = 0; n < 64; ++n) {
        pg += overlaps.ground_probability[n];
        pe += overlaps.excited_probability[n];
    }
    CHECK(pg == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(pe == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("uniform overlaps at e_j = 0") {
    const auto kernel = plaquette_kernel();
    const auto census = ground_census(kernel);
    const auto s = diagonalize(build_hamiltonian(kernel, 0.0, 0.05));
    const auto overlaps = ground_overlaps(s, census.patterns);
    for (int n = 0; n < 64; ++n)
        CHECK(overlaps.ground_probability[n] == doctest::Approx(1.0 / 64).epsilon(1e-10));
}

TEST_CASE("dense bound is enforced") {
    const auto spec = LatticeSpec::rectangle(4, 2, Boundary::Open); // N = 16 > 14
    const auto kernel = finite_kernel(spec, constraint_matrices(spec));
    CHECK_THROWS_AS(build_hamiltonian(kernel, 1.0, 0.05), CapabilityError);
}

} // TEST_SUITE
