#include "kagomejj/lattice.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>
#include <tuple>

namespace kagomejj {

namespace {

int wrap(int x, int n) { return ((x % n) + n) % n; }

constexpr std::pair<std::pair<int, int>, int> kPlusRefs[3] = {
    {{-1, 0}, -2}, {{0, -1}, 1}, {{0, 0}, 1}};
constexpr std::pair<std::pair<int, int>, int> kMinusRefs[3] = {
    {{0, -1}, -2}, {{-1, 0}, 1}, {{-1, -1}, 1}};

} // namespace

void LatticeSpec::index_sites() {
    n_plus_ = 0;
    sub_index_.assign(sites_.size(), -1);
    plus_sites_.clear();
    minus_sites_.clear();
    site_lookup_.assign(static_cast<std::size_t>(l_extent_) * m_extent_ * 2, -1);
    for (int i = 0; i < n_sites(); ++i) {
        const auto& s = sites_[i];
        if (s.s == Sublattice::Plus) {
            sub_index_[i] = static_cast<int>(plus_sites_.size());
            plus_sites_.push_back(i);
            ++n_plus_;
        } else {
            sub_index_[i] = static_cast<int>(minus_sites_.size());
            minus_sites_.push_back(i);
        }
        const std::size_t key =
            (static_cast<std::size_t>(s.l) * m_extent_ + s.m) * 2 + static_cast<int>(s.s);
        site_lookup_[key] = i;
    }
}

int LatticeSpec::site_index(int l, int m, Sublattice s) const {
    if (boundary_ == Boundary::Periodic) {
        l = wrap(l, l_extent_);
        m = wrap(m, m_extent_);
    } else if (l < 0 || l >= l_extent_ || m < 0 || m >= m_extent_) {
        return -1;
    }
    const std::size_t key =
        (static_cast<std::size_t>(l) * m_extent_ + m) * 2 + static_cast<int>(s);
    return static_cast<int>(site_lookup_[key]);
}

LatticeSpec LatticeSpec::rectangle(int l_extent, int m_extent, Boundary boundary) {
    if (l_extent < 1 || m_extent < 1)
        throw std::invalid_argument("lattice extents must be >= 1");

    LatticeSpec spec;
    spec.l_extent_ = l_extent;
    spec.m_extent_ = m_extent;
    spec.boundary_ = boundary;
    for (int l = 0; l < l_extent; ++l)
        for (int m = 0; m < m_extent; ++m) {
            spec.sites_.push_back({l, m, Sublattice::Plus});
            spec.sites_.push_back({l, m, Sublattice::Minus});
        }
    if (boundary == Boundary::Periodic) {
        for (int l = 0; l < l_extent; ++l)
            for (int m = 0; m < m_extent; ++m) spec.hexagons_.push_back({l, m});
    } else {
        // a hexagon is kept only when all six referenced triangles exist
        for (int l = 1; l < l_extent; ++l)
            for (int m = 1; m < m_extent; ++m) spec.hexagons_.push_back({l, m});
    }
    spec.index_sites();
    return spec;
}

LatticeSpec LatticeSpec::plaquettes(int pl, int pm) {
    if (pl < 1 || pm < 1)
        throw std::invalid_argument("plaquette grid extents must be >= 1");

    LatticeSpec spec;
    spec.l_extent_ = pl + 1;
    spec.m_extent_ = pm + 1;
    spec.boundary_ = Boundary::Open;
    spec.plaquette_mode_ = true;

    std::set<std::tuple<int, int, int>> keep;
    for (int l = 1; l <= pl; ++l)
        for (int m = 1; m <= pm; ++m) {
            spec.hexagons_.push_back({l, m});
            for (const auto& [d, c] : kPlusRefs)
                keep.insert({l + d.first, m + d.second, 0});
            for (const auto& [d, c] : kMinusRefs)
                keep.insert({l + d.first, m + d.second, 1});
        }
    for (const auto& [l, m, s] : keep)
        spec.sites_.push_back({l, m, static_cast<Sublattice>(s)});
    std::sort(spec.sites_.begin(), spec.sites_.end(), [](const auto& a, const auto& b) {
        return std::tie(a.l, a.m, a.s) < std::tie(b.l, b.m, b.s);
    });
    spec.index_sites();
    return spec;
}

nlohmann::json LatticeSpec::to_json() const {
    nlohmann::json j;
    j["kind"] = plaquette_mode_ ? "plaquettes" : "rectangle";
    j["l_extent"] = l_extent_;
    j["m_extent"] = m_extent_;
    j["boundary"] = boundary_ == Boundary::Open ? "open" : "periodic";
    auto sites = nlohmann::json::array();
    for (const auto& s : sites_)
        sites.push_back({s.l, s.m, s.s == Sublattice::Plus ? "+" : "-"});
    j["sites"] = std::move(sites);
    auto hexes = nlohmann::json::array();
    for (const auto& h : hexagons_) hexes.push_back({h.l, h.m});
    j["hexagons"] = std::move(hexes);
    return j;
}

LatticeSpec LatticeSpec::from_json(const nlohmann::json& j) {
    LatticeSpec spec;
    spec.l_extent_ = j.at("l_extent").get<int>();
    spec.m_extent_ = j.at("m_extent").get<int>();
    spec.boundary_ = j.at("boundary").get<std::string>() == "open" ? Boundary::Open
                                                                   : Boundary::Periodic;
    spec.plaquette_mode_ = j.at("kind").get<std::string>() == "plaquettes";
    for (const auto& s : j.at("sites"))
        spec.sites_.push_back({s.at(0).get<int>(), s.at(1).get<int>(),
                               s.at(2).get<std::string>() == "+" ? Sublattice::Plus
                                                                 : Sublattice::Minus});
    for (const auto& h : j.at("hexagons"))
        spec.hexagons_.push_back({h.at(0).get<int>(), h.at(1).get<int>()});
    spec.index_sites();
    return spec;
}

std::uint64_t LatticeSpec::hash() const {
    const std::string repr = to_json().dump();
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : repr) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

namespace {

void add_column(const LatticeSpec& lattice, int hex_index, const HexagonLoop& hex,
                const std::pair<std::pair<int, int>, int> (&refs)[3], Sublattice sign,
                std::vector<ConstraintEntry>& out) {
    std::map<int, int> column; // coalesce duplicate rows from periodic wraps
    for (const auto& [d, coeff] : refs) {
        const int site = lattice.site_index(hex.l + d.first, hex.m + d.second, sign);
        if (site < 0)
            throw std::logic_error("hexagon references a missing triangle");
        column[lattice.sub_index(site)] += coeff;
    }
    for (const auto& [row, value] : column)
        if (value != 0) out.push_back({row, hex_index, value});
}

} // namespace

ConstraintMatrix constraint_matrices(const LatticeSpec& lattice) {
    ConstraintMatrix cm;
    cm.n_plus = lattice.n_plus();
    cm.n_minus = lattice.n_minus();
    cm.n_hexagons = static_cast<int>(lattice.hexagons().size());
    for (int h = 0; h < cm.n_hexagons; ++h) {
        const auto& hex = lattice.hexagons()[h];
        add_column(lattice, h, hex, kPlusRefs, Sublattice::Plus, cm.plus);
        add_column(lattice, h, hex, kMinusRefs, Sublattice::Minus, cm.minus);
    }
    return cm;
}

std::vector<std::vector<double>> ConstraintMatrix::plus_dense() const {
    std::vector<std::vector<double>> d(n_plus, std::vector<double>(n_hexagons, 0.0));
    for (const auto& e : plus) d[e.row][e.col] += e.value;
    return d;
}

std::vector<std::vector<double>> ConstraintMatrix::minus_dense() const {
    std::vector<std::vector<double>> d(n_minus, std::vector<double>(n_hexagons, 0.0));
    for (const auto& e : minus) d[e.row][e.col] += e.value;
    return d;
}

std::vector<double> constraint_residual(const LatticeSpec& lattice,
                                        const std::vector<double>& phases) {
    if (static_cast<int>(phases.size()) != lattice.n_sites())
        throw std::invalid_argument("phase vector length must equal the triangle count");
    const ConstraintMatrix cm = constraint_matrices(lattice);
    std::vector<double> residual(cm.n_hexagons, 0.0);
    for (const auto& e : cm.plus)
        residual[e.col] += phases[lattice.plus_sites()[e.row]] * e.value;
    for (const auto& e : cm.minus)
        residual[e.col] += phases[lattice.minus_sites()[e.row]] * e.value;
    return residual;
}

} // namespace kagomejj
