#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace oscmax {

inline constexpr int kMaxDim = 3;

// First `dim` entries are meaningful; the rest stay zero.
using Coord = std::array<std::int64_t, kMaxDim>;

inline Coord make_coord(std::initializer_list<std::int64_t> v) {
    Coord c{};
    int i = 0;
    for (auto x : v) c[i++] = x;
    return c;
}

// Floor division, correct for negative numerators.
inline std::int64_t floor_div(std::int64_t a, std::int64_t b) {
    std::int64_t q = a / b, r = a % b;
    return (r != 0 && ((r < 0) != (b < 0))) ? q - 1 : q;
}

struct EnumerationBudgetError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A standard dyadic cube 2^level * (offset + [0,1)^dim).
struct DyadicCube {
    int dim = 1;
    int level = 0;
    Coord offset{};

    double side() const { return std::ldexp(1.0, level); }
    double lo(int axis) const { return std::ldexp(static_cast<double>(offset[axis]), level); }

    DyadicCube parent() const {
        DyadicCube p{dim, level + 1, {}};
        for (int d = 0; d < dim; ++d) p.offset[d] = floor_div(offset[d], 2);
        return p;
    }

    // Child index encodes one bit per axis (bit d = upper half along axis d).
    DyadicCube child(int index) const {
        DyadicCube c{dim, level - 1, {}};
        for (int d = 0; d < dim; ++d) c.offset[d] = 2 * offset[d] + ((index >> d) & 1);
        return c;
    }
    int child_count() const { return 1 << dim; }

    bool operator==(const DyadicCube& o) const {
        if (dim != o.dim || level != o.level) return false;
        for (int d = 0; d < dim; ++d)
            if (offset[d] != o.offset[d]) return false;
        return true;
    }

    /// other ⊆ this (true when equal).
    bool contains(const DyadicCube& other) const {
        if (other.level > level) return false;
        for (int d = 0; d < dim; ++d)
            if (floor_div(other.offset[d], std::int64_t(1) << (level - other.level)) != offset[d])
                return false;
        return true;
    }

    bool disjoint(const DyadicCube& other) const {
        return !contains(other) && !other.contains(*this);
    }
};

/// Axis-aligned box in cell coordinates, half-open [lo, hi).
struct CellBox {
    int dim = 1;
    Coord lo{};
    Coord hi{};

    bool empty() const {
        for (int d = 0; d < dim; ++d)
            if (lo[d] >= hi[d]) return true;
        return false;
    }
    std::int64_t cell_count() const {
        if (empty()) return 0;
        std::int64_t n = 1;
        for (int d = 0; d < dim; ++d) n *= hi[d] - lo[d];
        return n;
    }
};

/// Cell-aligned cube anywhere in the cell lattice (may protrude from the base domain).
struct LatticeBox {
    int dim = 1;
    Coord anchor{};
    std::int64_t side = 1;

    CellBox to_box() const {
        CellBox b{dim, anchor, anchor};
        for (int d = 0; d < dim; ++d) b.hi[d] = anchor[d] + side;
        return b;
    }
};

/// Grid-aligned subcube of the base domain: anchor cell + side in cells.
struct Window {
    Coord anchor{};
    int side = 1;
};

/// The ambient cube plus the cell resolution: cells are the level-(root.level - m)
/// dyadic descendants of root, 2^m per side.
struct BaseDomain {
    int dim = 1;
    DyadicCube root{};
    int resolution = 0;  // m

    BaseDomain() = default;
    BaseDomain(int n, int root_level, int m) : dim(n), resolution(m) {
        if (n < 1 || n > kMaxDim) throw std::invalid_argument("dimension must be in [1, " + std::to_string(kMaxDim) + "]");
        if (m < 0) throw std::invalid_argument("resolution must be nonnegative");
        root = DyadicCube{n, root_level, {}};
    }

    std::int64_t cells_per_side() const { return std::int64_t(1) << resolution; }
    std::int64_t total_cells() const { return std::int64_t(1) << (dim * resolution); }
    double side() const { return root.side(); }
    double cell_side() const { return std::ldexp(1.0, root.level - resolution); }
    double cell_volume() const { return std::pow(cell_side(), dim); }

    // Row-major: axis 0 slowest, axis dim-1 fastest.
    std::int64_t cell_index(const Coord& c) const {
        std::int64_t idx = 0;
        for (int d = 0; d < dim; ++d) idx = idx * cells_per_side() + c[d];
        return idx;
    }
    Coord cell_coord(std::int64_t index) const {
        Coord c{};
        for (int d = dim - 1; d >= 0; --d) {
            c[d] = index % cells_per_side();
            index /= cells_per_side();
        }
        return c;
    }
    double cell_center(const Coord& c, int axis) const {
        return root.lo(axis) + (static_cast<double>(c[axis]) + 0.5) * cell_side();
    }
    DyadicCube cell_cube(const Coord& c) const {
        DyadicCube q{dim, root.level - resolution, {}};
        for (int d = 0; d < dim; ++d)
            q.offset[d] = (root.offset[d] << resolution) + c[d];
        return q;
    }
    CellBox full_box() const {
        CellBox b{dim, {}, {}};
        for (int d = 0; d < dim; ++d) b.hi[d] = cells_per_side();
        return b;
    }
    CellBox window_box(const Window& w) const {
        CellBox b{dim, w.anchor, w.anchor};
        for (int d = 0; d < dim; ++d) b.hi[d] = w.anchor[d] + w.side;
        return b;
    }
    bool window_inside(const Window& w) const {
        for (int d = 0; d < dim; ++d)
            if (w.anchor[d] < 0 || w.anchor[d] + w.side > cells_per_side()) return false;
        return true;
    }
    /// Clip a lattice box to the domain cells.
    CellBox clip(const LatticeBox& b) const {
        CellBox r{dim, {}, {}};
        for (int d = 0; d < dim; ++d) {
            r.lo[d] = std::max<std::int64_t>(b.anchor[d], 0);
            r.hi[d] = std::min<std::int64_t>(b.anchor[d] + b.side, cells_per_side());
            if (r.hi[d] < r.lo[d]) r.hi[d] = r.lo[d];
        }
        return r;
    }
};

enum class FamilyKind { contained, centered_clipped };

/// Which subcubes a supremum ranges over. `contained`: every grid-aligned window
/// inside the root. `centered_clipped`: cubes Q(x,r) for cell-center x and odd
/// cell-quantized r, clipped to the root but normalized by the full cube.
struct WindowFamily {
    FamilyKind kind = FamilyKind::contained;
    int min_side = 1;   // cells, inclusive
    int max_side = 0;   // cells, inclusive; 0 = no explicit bound
};

/// One member of a window family: the nominal cube plus its in-domain cell region.
struct AnalysisWindow {
    LatticeBox cube;
    CellBox region;
};

std::uint64_t count_windows(const BaseDomain& domain, const WindowFamily& family);

/// Random access into a window family without materializing it: windows are
/// ordered by side, then by anchor (row-major).
class WindowIndexer {
  public:
    WindowIndexer(const BaseDomain& domain, const WindowFamily& family);
    std::uint64_t size() const { return total_; }
    AnalysisWindow at(std::uint64_t index) const;

  private:
    BaseDomain domain_;
    FamilyKind kind_;
    std::vector<int> sides_;
    std::vector<std::uint64_t> prefix_;  // prefix_[i] = first index of sides_[i]
    std::uint64_t total_ = 0;
};

/// Materialize a family. Throws EnumerationBudgetError if the count exceeds `cap`.
std::vector<AnalysisWindow> enumerate_windows(const BaseDomain& domain, const WindowFamily& family,
                                              std::uint64_t cap = 100000000ull);

std::uint64_t window_cap_from_env();

/// Smallest-side window inside `bound` containing q1 ∪ q2, with
/// side ≤ q1.side + q2.side. Inputs must intersect as closed boxes
/// (shared faces/corners count) and lie inside `bound`.
Window join_cube(const Window& q1, const Window& q2, const Window& bound, const BaseDomain& domain);

/// Companion window of side min(q.side, cells_per_side) that contains q ∩ root and
/// stays as close to q's position as the domain allows.
Window comparison_cube(const LatticeBox& q, const BaseDomain& domain);

}  // namespace oscmax
