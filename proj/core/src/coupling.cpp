#include "kagomejj/coupling.hpp"

#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <numbers>
#include <stdexcept>

#include <Eigen/Eigenvalues>

#include "kagomejj/io.hpp"

namespace kagomejj {

namespace {

Eigen::MatrixXd to_eigen(const std::vector<ConstraintEntry>& entries, int rows, int cols) {
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(rows, cols);
    for (const auto& e : entries) m(e.row, e.col) += e.value;
    return m;
}

/// C(n, k) * 2^{-scale}. Exact 64-bit Pascal evaluation while it fits,
/// falling back to a multiplicative double product for large n.
double scaled_binomial(int n, int k, int scale) {
    if (k < 0 || k > n) return 0.0;
    k = std::min(k, n - k);
    if (n <= 62) {
        std::uint64_t num = 1;
        for (int j = 0; j < k; ++j) num = num * (n - j) / (j + 1); // exact: C(n,j+1) integral
        return std::ldexp(static_cast<double>(num), -scale);
    }
    double v = std::ldexp(1.0, -scale);
    for (int j = 0; j < k; ++j) v *= static_cast<double>(n - j) / (j + 1);
    return v;
}

} // namespace

double infinite_kernel_entry(int dl, int dm) {
    double v = 0.0;
    if (dl >= 0 && -dl - 1 <= dm && dm <= -1)
        v -= 0.5 * scaled_binomial(dl, dl + dm + 1, dl);
    if (dl >= 0 && -dl <= dm && dm <= 0)
        v -= 0.5 * scaled_binomial(dl, dl + dm, dl);
    if (dl >= 1 && -dl <= dm && dm <= -1)
        v += 2.0 * scaled_binomial(dl - 1, dl + dm, dl);
    return v;
}

std::complex<double> symbol_plus(double q, double r) {
    const std::complex<double> i(0.0, 1.0);
    return 1.0 + std::exp(i * r) - 2.0 * std::exp(i * q);
}

std::complex<double> symbol_minus(double q, double r) {
    const std::complex<double> i(0.0, 1.0);
    return std::exp(i * (q + r)) + std::exp(i * q) - 2.0 * std::exp(i * r);
}

double symbol_modulus_sq(double q, double r) {
    const auto s = [](double x) { const double t = std::sin(x / 2.0); return t * t; };
    return -4.0 * s(r) + 8.0 * s(q - r) + 8.0 * s(q);
}

namespace {

/// Midpoint sums of (G+/G-) e^{-i(q dl + r dm)} for every requested offset
/// on one n x n half-cell-shifted grid.
Eigen::MatrixXcd midpoint_table(int max_dl, int max_dm, int n) {
    using cd = std::complex<double>;
    const double h = 2.0 * std::numbers::pi / n;
    std::vector<double> x(n);
    for (int j = 0; j < n; ++j) x[j] = -std::numbers::pi + (j + 0.5) * h;

    Eigen::MatrixXcd ratio(n, n); // (q index, r index)
    for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k)
            ratio(j, k) = symbol_plus(x[j], x[k]) / symbol_minus(x[j], x[k]);

    Eigen::MatrixXcd out(2 * max_dl + 1, 2 * max_dm + 1);
    Eigen::VectorXcd phase(n), contracted(n);
    for (int dm = -max_dm; dm <= max_dm; ++dm) {
        for (int k = 0; k < n; ++k) phase(k) = std::polar(1.0, -x[k] * dm);
        contracted = ratio * phase; // sum over r per q row
        for (int dl = -max_dl; dl <= max_dl; ++dl) {
            cd s(0.0, 0.0);
            for (int j = 0; j < n; ++j) s += contracted(j) * std::polar(1.0, -x[j] * dl);
            out(dl + max_dl, dm + max_dm) = s / static_cast<double>(n) / static_cast<double>(n);
        }
    }
    return out;
}

Eigen::MatrixXcd richardson_table(int max_dl, int max_dm, int grid_size) {
    if (grid_size < 64 || grid_size % 4 != 0)
        throw std::invalid_argument("oracle grid_size must be >= 64 and divisible by 4");
    const Eigen::MatrixXcd s1 = midpoint_table(max_dl, max_dm, grid_size / 4);
    const Eigen::MatrixXcd s2 = midpoint_table(max_dl, max_dm, grid_size / 2);
    const Eigen::MatrixXcd s3 = midpoint_table(max_dl, max_dm, grid_size);
    const double th = std::pow(0.5, 1.5);
    const Eigen::MatrixXcd t1 = (s2 - th * s1) / (1.0 - th);
    const Eigen::MatrixXcd t2 = (s3 - th * s2) / (1.0 - th);
    return (t2 - 0.25 * t1) / 0.75;
}

} // namespace

double fourier_oracle_entry(int dl, int dm, int grid_size) {
    const Eigen::MatrixXcd t = richardson_table(std::abs(dl), std::abs(dm), grid_size);
    const std::complex<double> v = t(dl + std::abs(dl), dm + std::abs(dm));
    if (std::abs(v.imag()) > 1e-8)
        throw std::runtime_error("oracle integral has a non-real residue");
    return v.real();
}

Eigen::MatrixXd fourier_oracle_table(int max_dl, int max_dm, int grid_size) {
    const Eigen::MatrixXcd t = richardson_table(max_dl, max_dm, grid_size);
    if (t.imag().cwiseAbs().maxCoeff() > 1e-8)
        throw std::runtime_error("oracle integral has a non-real residue");
    return t.real();
}

Eigen::MatrixXd constraint_quadratic_form(const ConstraintMatrix& constraints) {
    const Eigen::MatrixXd gp =
        to_eigen(constraints.plus, constraints.n_plus, constraints.n_hexagons);
    const Eigen::MatrixXd gm =
        to_eigen(constraints.minus, constraints.n_minus, constraints.n_hexagons);
    return gp.transpose() * gp + gm.transpose() * gm;
}

Eigen::MatrixXd cutoff_pseudo_inverse(const Eigen::MatrixXd& a, double tolerance) {
    if (!(tolerance > 0.0)) throw std::invalid_argument("pseudo-inverse tolerance must be > 0");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a);
    if (es.info() != Eigen::Success)
        throw std::runtime_error("constraint form eigendecomposition failed");
    const double lambda_max = es.eigenvalues().maxCoeff();
    Eigen::VectorXd inv = Eigen::VectorXd::Zero(es.eigenvalues().size());
    for (int i = 0; i < inv.size(); ++i)
        if (es.eigenvalues()(i) > tolerance * lambda_max) inv(i) = 1.0 / es.eigenvalues()(i);
    return es.eigenvectors() * inv.asDiagonal() * es.eigenvectors().transpose();
}

CouplingKernel finite_kernel(const LatticeSpec& lattice, const ConstraintMatrix& constraints,
                             double tolerance) {
    if (!(tolerance > 0.0)) throw std::invalid_argument("pseudo-inverse tolerance must be > 0");

    CouplingKernel k;
    k.source = KernelSource::FinitePseudoInverse;
    k.tolerance = tolerance;
    k.plus_sites = lattice.plus_sites();
    k.minus_sites = lattice.minus_sites();

    const int np = constraints.n_plus;
    const int nm = constraints.n_minus;
    const int nh = constraints.n_hexagons;
    const Eigen::MatrixXd gp = to_eigen(constraints.plus, np, nh);
    const Eigen::MatrixXd gm = to_eigen(constraints.minus, nm, nh);

    const Eigen::MatrixXd a = gp.transpose() * gp + gm.transpose() * gm;
    if (nh == 0 || !(a.cwiseAbs().maxCoeff() > 0.0)) {
        k.g_pp = Eigen::MatrixXd::Zero(np, np);
        k.g_mm = Eigen::MatrixXd::Zero(nm, nm);
        k.g_pm = Eigen::MatrixXd::Zero(np, nm);
        k.g_mp = Eigen::MatrixXd::Zero(nm, np);
        k.zero_kernel = true;
        return k;
    }

    const Eigen::MatrixXd a_pinv = cutoff_pseudo_inverse(a, tolerance);

    k.g_pp = gp * a_pinv * gp.transpose();
    k.g_mm = gm * a_pinv * gm.transpose();
    k.g_pm = gp * a_pinv * gm.transpose();
    k.g_mp = k.g_pm.transpose(); // exact by the Eq.-level identity
    // symmetrize away multiply rounding so downstream quadratic forms see
    // bitwise-symmetric blocks
    k.g_pp = ((k.g_pp + k.g_pp.transpose()) / 2.0).eval();
    k.g_mm = ((k.g_mm + k.g_mm.transpose()) / 2.0).eval();
    return k;
}

std::vector<DecayPoint> kernel_decay_profile(const std::function<double(int, int)>& entry,
                                             ProfileDirection direction, int max_range) {
    if (max_range < 2) throw std::invalid_argument("max_range must be >= 2");
    std::vector<DecayPoint> out;
    out.reserve(max_range + 1);
    for (int d = 0; d <= max_range; ++d) {
        int dl = 0, dm = 0;
        switch (direction) {
            case ProfileDirection::Horizontal: dl = d; dm = 0; break;
            case ProfileDirection::Vertical: dl = 0; dm = -d; break;
            case ProfileDirection::Diagonal: dl = d; dm = -static_cast<int>(std::llround(d / 2.0)); break;
        }
        out.push_back({d, entry(dl, dm)});
    }
    return out;
}

std::vector<DecayPoint> kernel_decay_profile(ProfileDirection direction, int max_range) {
    return kernel_decay_profile(
        [](int dl, int dm) { return infinite_kernel_entry(dl, dm); }, direction, max_range);
}

Eigen::MatrixXd total_matrix(const CouplingKernel& kernel) {
    const int np = static_cast<int>(kernel.plus_sites.size());
    const int nm = static_cast<int>(kernel.minus_sites.size());
    const int n = np + nm;
    Eigen::MatrixXd k = Eigen::MatrixXd::Zero(n, n);
    for (int a = 0; a < np; ++a) {
        const int ga = kernel.plus_sites[a];
        for (int b = 0; b < np; ++b) k(ga, kernel.plus_sites[b]) = kernel.g_pp(a, b);
        for (int b = 0; b < nm; ++b) k(ga, kernel.minus_sites[b]) = kernel.g_pm(a, b);
    }
    for (int a = 0; a < nm; ++a) {
        const int ga = kernel.minus_sites[a];
        for (int b = 0; b < np; ++b) k(ga, kernel.plus_sites[b]) = kernel.g_mp(a, b);
        for (int b = 0; b < nm; ++b) k(ga, kernel.minus_sites[b]) = kernel.g_mm(a, b);
    }
    return k;
}

namespace {

constexpr char kKernelMagic[8] = {'K', 'J', 'J', 'K', 'R', 'N', '1', '\0'};

void write_block(std::ostream& os, const Eigen::MatrixXd& m) {
    const std::uint64_t rows = m.rows(), cols = m.cols();
    os.write(reinterpret_cast<const char*>(&rows), sizeof rows);
    os.write(reinterpret_cast<const char*>(&cols), sizeof cols);
    for (std::uint64_t i = 0; i < rows; ++i)
        for (std::uint64_t j = 0; j < cols; ++j) {
            const double v = m(i, j);
            os.write(reinterpret_cast<const char*>(&v), sizeof v);
        }
}

Eigen::MatrixXd read_block(std::istream& is) {
    std::uint64_t rows = 0, cols = 0;
    is.read(reinterpret_cast<char*>(&rows), sizeof rows);
    is.read(reinterpret_cast<char*>(&cols), sizeof cols);
    Eigen::MatrixXd m(rows, cols);
    for (std::uint64_t i = 0; i < rows; ++i)
        for (std::uint64_t j = 0; j < cols; ++j) {
            double v = 0.0;
            is.read(reinterpret_cast<char*>(&v), sizeof v);
            m(i, j) = v;
        }
    return m;
}

void write_index_vector(std::ostream& os, const std::vector<int>& v) {
    const std::uint64_t n = v.size();
    os.write(reinterpret_cast<const char*>(&n), sizeof n);
    for (int x : v) {
        const std::int32_t y = x;
        os.write(reinterpret_cast<const char*>(&y), sizeof y);
    }
}

std::vector<int> read_index_vector(std::istream& is) {
    std::uint64_t n = 0;
    is.read(reinterpret_cast<char*>(&n), sizeof n);
    std::vector<int> v(n);
    for (auto& x : v) {
        std::int32_t y = 0;
        is.read(reinterpret_cast<char*>(&y), sizeof y);
        x = y;
    }
    return v;
}

} // namespace

void save_kernel(const CouplingKernel& kernel, const LatticeSpec& lattice,
                 const std::filesystem::path& binary_path,
                 const std::filesystem::path& sidecar_path) {
    {
        std::ofstream os(binary_path, std::ios::binary | std::ios::trunc);
        if (!os) throw std::runtime_error("cannot open " + binary_path.string());
        os.write(kKernelMagic, sizeof kKernelMagic);
        const std::uint32_t source = static_cast<std::uint32_t>(kernel.source);
        os.write(reinterpret_cast<const char*>(&source), sizeof source);
        os.write(reinterpret_cast<const char*>(&kernel.tolerance), sizeof kernel.tolerance);
        const std::uint8_t zero = kernel.zero_kernel ? 1 : 0;
        os.write(reinterpret_cast<const char*>(&zero), sizeof zero);
        write_index_vector(os, kernel.plus_sites);
        write_index_vector(os, kernel.minus_sites);
        write_block(os, kernel.g_pp);
        write_block(os, kernel.g_mm);
        write_block(os, kernel.g_pm);
        write_block(os, kernel.g_mp);
        if (!os) throw std::runtime_error("short write to " + binary_path.string());
    }
    nlohmann::json sidecar;
    sidecar["format"] = "kagomejj-kernel-v1";
    sidecar["lattice_hash"] = to_hex(lattice.hash());
    sidecar["tolerance"] = kernel.tolerance;
    sidecar["source"] = kernel.source == KernelSource::FinitePseudoInverse
                            ? "finite_pseudo_inverse"
                            : "infinite_closed_form";
    sidecar["zero_kernel"] = kernel.zero_kernel;
    sidecar["n_plus"] = kernel.plus_sites.size();
    sidecar["n_minus"] = kernel.minus_sites.size();
    atomic_write_text(sidecar_path, sidecar.dump(2) + "\n");
}

CouplingKernel load_kernel(const std::filesystem::path& binary_path) {
    std::ifstream is(binary_path, std::ios::binary);
    if (!is) throw std::runtime_error("cannot open " + binary_path.string());
    char magic[8] = {};
    is.read(magic, sizeof magic);
    if (std::memcmp(magic, kKernelMagic, sizeof magic) != 0)
        throw std::runtime_error("not a kernel container: " + binary_path.string());
    CouplingKernel k;
    std::uint32_t source = 0;
    is.read(reinterpret_cast<char*>(&source), sizeof source);
    k.source = static_cast<KernelSource>(source);
    is.read(reinterpret_cast<char*>(&k.tolerance), sizeof k.tolerance);
    std::uint8_t zero = 0;
    is.read(reinterpret_cast<char*>(&zero), sizeof zero);
    k.zero_kernel = zero != 0;
    k.plus_sites = read_index_vector(is);
    k.minus_sites = read_index_vector(is);
    k.g_pp = read_block(is);
    k.g_mm = read_block(is);
    k.g_pm = read_block(is);
    k.g_mp = read_block(is);
    if (!is) throw std::runtime_error("truncated kernel container: " + binary_path.string());
    return k;
}

} // namespace kagomejj
