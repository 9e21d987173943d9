#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace kagomejj {

enum class Boundary { Open, Periodic };

/// + labels the downward-pointing triangle of a tuple, - the upward one.
enum class Sublattice : std::uint8_t { Plus = 0, Minus = 1 };

struct TriangleSite {
    int l = 0;
    int m = 0;
    Sublattice s = Sublattice::Plus;

    friend bool operator==(const TriangleSite&, const TriangleSite&) = default;
};

struct HexagonLoop {
    int l = 0;
    int m = 0;

    friend bool operator==(const HexagonLoop&, const HexagonLoop&) = default;
};

/// Tuple-indexed Kagome geometry: the ordered triangle-site list and the
/// admissible hexagon constraint loops. Immutable after construction.
///
/// Site order is row-major in (l, m) with + before -, and is the bit
/// order used by every spin configuration downstream.
class LatticeSpec {
public:
    /// Full l_extent x m_extent tuple grid (2*l*m triangles). Under Open
    /// boundary only hexagons whose six referenced triangles all exist are
    /// kept; under Periodic the indices wrap.
    static LatticeSpec rectangle(int l_extent, int m_extent, Boundary boundary);

    /// Grid of pl x pm hexagon plaquettes, keeping exactly the triangles
    /// referenced by those constraint columns. plaquettes(1, 1) is the
    /// single Kagome plaquette: one hexagon and its six triangles.
    static LatticeSpec plaquettes(int pl, int pm);

    int l_extent() const { return l_extent_; }
    int m_extent() const { return m_extent_; }
    Boundary boundary() const { return boundary_; }

    const std::vector<TriangleSite>& sites() const { return sites_; }
    const std::vector<HexagonLoop>& hexagons() const { return hexagons_; }

    int n_sites() const { return static_cast<int>(sites_.size()); }
    int n_plus() const { return n_plus_; }
    int n_minus() const { return n_sites() - n_plus_; }

    /// Global site index, or -1 if the site is absent. Periodic lattices
    /// wrap l and m modulo the extents.
    int site_index(int l, int m, Sublattice s) const;

    /// Position of a site within its own sublattice (row index of the
    /// constraint and kernel blocks).
    int sub_index(int global_index) const { return sub_index_[global_index]; }

    /// Inverse of sub_index per sublattice: global site index of the k-th
    /// plus (minus) triangle.
    const std::vector<int>& plus_sites() const { return plus_sites_; }
    const std::vector<int>& minus_sites() const { return minus_sites_; }

    nlohmann::json to_json() const;
    static LatticeSpec from_json(const nlohmann::json& j);

    /// FNV-1a over the canonical serialization; stable across runs.
    std::uint64_t hash() const;

private:
    LatticeSpec() = default;
    void index_sites();

    int l_extent_ = 0;
    int m_extent_ = 0;
    Boundary boundary_ = Boundary::Open;
    bool plaquette_mode_ = false;
    std::vector<TriangleSite> sites_;
    std::vector<HexagonLoop> hexagons_;
    int n_plus_ = 0;
    std::vector<int> sub_index_;
    std::vector<int> plus_sites_;
    std::vector<int> minus_sites_;
    std::vector<std::int64_t> site_lookup_; // dense (l, m, s) -> global, -1 absent
};

/// One triangle reference of a hexagon constraint column.
struct ConstraintEntry {
    int row = 0; ///< sublattice-local triangle index
    int col = 0; ///< hexagon index
    int value = 0;
};

/// Sparse integer constraint matrices G+ and G- (triangles x hexagons).
/// Every retained hexagon column holds the Eq.-pattern {-2, +1, +1} within
/// each sublattice; entries landing on the same row (tiny periodic wraps)
/// are coalesced.
struct ConstraintMatrix {
    int n_plus = 0;
    int n_minus = 0;
    int n_hexagons = 0;
    std::vector<ConstraintEntry> plus;
    std::vector<ConstraintEntry> minus;

    std::vector<std::vector<double>> plus_dense() const;
    std::vector<std::vector<double>> minus_dense() const;
};

/// Assemble G+- for every hexagon loop of the lattice.
ConstraintMatrix constraint_matrices(const LatticeSpec& lattice);

/// C_lm = sum_i phi_i G[i, lm] per hexagon (G^T phi), phases indexed in
/// global site order. Test utility for flux-quantization checks.
std::vector<double> constraint_residual(const LatticeSpec& lattice,
                                        const std::vector<double>& phases);

} // namespace kagomejj
