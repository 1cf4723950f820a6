#include "oscmax/geometry.hpp"

#include <algorithm>
#include <cstdlib>

namespace oscmax {

namespace {

int resolved_max_side(const BaseDomain& domain, const WindowFamily& family) {
    const auto n = domain.cells_per_side();
    std::int64_t cap = (family.kind == FamilyKind::contained) ? n : 2 * n - 1;
    if (family.max_side > 0) cap = std::min<std::int64_t>(cap, family.max_side);
    return static_cast<int>(cap);
}

}  // namespace

std::uint64_t count_windows(const BaseDomain& domain, const WindowFamily& family) {
    const std::int64_t n = domain.cells_per_side();
    const int lo = std::max(family.min_side, 1);
    const int hi = resolved_max_side(domain, family);
    std::uint64_t total = 0;
    if (family.kind == FamilyKind::contained) {
        for (int w = lo; w <= hi; ++w) {
            std::uint64_t per = 1;
            for (int d = 0; d < domain.dim; ++d) per *= static_cast<std::uint64_t>(n - w + 1);
            total += per;
        }
    } else {
        std::uint64_t centers = 1;
        for (int d = 0; d < domain.dim; ++d) centers *= static_cast<std::uint64_t>(n);
        for (int w = lo; w <= hi; ++w)
            if (w % 2 == 1) total += centers;
    }
    return total;
}

std::uint64_t window_cap_from_env() {
    if (const char* s = std::getenv("OSCMAX_WINDOW_CAP")) {
        char* end = nullptr;
        unsigned long long v = std::strtoull(s, &end, 10);
        if (end && *end == '\0' && v > 0) return v;
    }
    return 100000000ull;
}

WindowIndexer::WindowIndexer(const BaseDomain& domain, const WindowFamily& family)
    : domain_(domain), kind_(family.kind) {
    const std::int64_t n = domain.cells_per_side();
    const int lo = std::max(family.min_side, 1);
    const int hi = resolved_max_side(domain, family);
    for (int w = lo; w <= hi; ++w) {
        std::uint64_t per = 0;
        if (kind_ == FamilyKind::contained) {
            per = 1;
            for (int d = 0; d < domain.dim; ++d) per *= static_cast<std::uint64_t>(n - w + 1);
        } else {
            if (w % 2 == 0) continue;  // even sides are not cell-aligned about cell centers
            per = 1;
            for (int d = 0; d < domain.dim; ++d) per *= static_cast<std::uint64_t>(n);
        }
        sides_.push_back(w);
        prefix_.push_back(total_);
        total_ += per;
    }
}

AnalysisWindow WindowIndexer::at(std::uint64_t index) const {
    auto it = std::upper_bound(prefix_.begin(), prefix_.end(), index);
    const std::size_t si = static_cast<std::size_t>(it - prefix_.begin()) - 1;
    const int w = sides_[si];
    std::uint64_t rem = index - prefix_[si];
    const std::int64_t n = domain_.cells_per_side();
    const std::int64_t extent = (kind_ == FamilyKind::contained) ? n - w + 1 : n;
    Coord pos{};
    for (int d = domain_.dim - 1; d >= 0; --d) {
        pos[d] = static_cast<std::int64_t>(rem % static_cast<std::uint64_t>(extent));
        rem /= static_cast<std::uint64_t>(extent);
    }
    LatticeBox cube{domain_.dim, {}, w};
    if (kind_ == FamilyKind::contained) {
        cube.anchor = pos;
    } else {
        for (int d = 0; d < domain_.dim; ++d) cube.anchor[d] = pos[d] - (w - 1) / 2;
    }
    return AnalysisWindow{cube, domain_.clip(cube)};
}

std::vector<AnalysisWindow> enumerate_windows(const BaseDomain& domain, const WindowFamily& family,
                                              std::uint64_t cap) {
    const std::uint64_t count = count_windows(domain, family);
    if (count > cap)
        throw EnumerationBudgetError("window enumeration budget exceeded: " + std::to_string(count) +
                                     " windows, cap " + std::to_string(cap));
    WindowIndexer indexer(domain, family);
    std::vector<AnalysisWindow> out;
    out.reserve(indexer.size());
    for (std::uint64_t i = 0; i < indexer.size(); ++i) {
        AnalysisWindow aw = indexer.at(i);
        if (!aw.region.empty()) out.push_back(aw);
    }
    return out;
}

Window join_cube(const Window& q1, const Window& q2, const Window& bound, const BaseDomain& domain) {
    const int dim = domain.dim;
    for (int d = 0; d < dim; ++d) {
        const std::int64_t a1 = q1.anchor[d], b1 = a1 + q1.side;
        const std::int64_t a2 = q2.anchor[d], b2 = a2 + q2.side;
        if (b1 < a2 || b2 < a1)  // closed boxes: touching counts as intersecting
            throw std::invalid_argument("join_cube: inputs are disjoint");
        if (a1 < bound.anchor[d] || b1 > bound.anchor[d] + bound.side ||
            a2 < bound.anchor[d] || b2 > bound.anchor[d] + bound.side)
            throw std::invalid_argument("join_cube: inputs not inside bound");
    }
    std::int64_t delta = 0;
    Coord ulo{}, uhi{};
    for (int d = 0; d < dim; ++d) {
        ulo[d] = std::min(q1.anchor[d], q2.anchor[d]);
        uhi[d] = std::max(q1.anchor[d] + q1.side, q2.anchor[d] + q2.side);
        delta = std::max(delta, uhi[d] - ulo[d]);
    }
    // Stretch each union interval to length delta without leaving the bound.
    Window out;
    out.side = static_cast<int>(delta);
    for (int d = 0; d < dim; ++d) {
        std::int64_t lo = std::max(bound.anchor[d], uhi[d] - delta);
        std::int64_t hi = std::min(ulo[d], bound.anchor[d] + bound.side - delta);
        out.anchor[d] = std::clamp(ulo[d], lo, hi);
    }
    return out;
}

Window comparison_cube(const LatticeBox& q, const BaseDomain& domain) {
    const std::int64_t n = domain.cells_per_side();
    CellBox clipped = domain.clip(q);
    if (clipped.empty()) throw std::invalid_argument("comparison_cube: cube does not intersect the root");
    const std::int64_t s = std::min<std::int64_t>(q.side, n);
    Window out;
    out.side = static_cast<int>(s);
    for (int d = 0; d < domain.dim; ++d) {
        // Feasible anchors keep the clipped slab covered and the window inside the root;
        // among those, stay nearest the cube's own anchor.
        const std::int64_t lo = std::max<std::int64_t>(0, clipped.hi[d] - s);
        const std::int64_t hi = std::min<std::int64_t>(clipped.lo[d], n - s);
        out.anchor[d] = std::clamp(q.anchor[d], lo, hi);
    }
    return out;
}

}  // namespace oscmax
