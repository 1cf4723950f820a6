#pragma once

#include <vector>

#include "oscmax/geometry.hpp"

namespace oscmax {

/// Cellwise-constant real function on a base domain, one value per cell, row-major.
struct GridFunction {
    BaseDomain domain;
    std::vector<double> values;

    GridFunction() = default;
    explicit GridFunction(const BaseDomain& d, double fill = 0.0)
        : domain(d), values(static_cast<std::size_t>(d.total_cells()), fill) {}

    double& at(const Coord& c) { return values[static_cast<std::size_t>(domain.cell_index(c))]; }
    double at(const Coord& c) const { return values[static_cast<std::size_t>(domain.cell_index(c))]; }

    bool same_shape(const GridFunction& o) const {
        return domain.dim == o.domain.dim && domain.resolution == o.domain.resolution &&
               domain.root == o.domain.root && values.size() == o.values.size();
    }
};

/// The computed maximal function is itself cellwise constant.
using MaximalField = GridFunction;

template <typename Fn>
void for_each_cell(const BaseDomain& domain, const CellBox& box, Fn&& fn) {
    if (box.empty()) return;
    Coord c = box.lo;
    for (;;) {
        fn(c, domain.cell_index(c));
        int d = domain.dim - 1;
        while (d >= 0) {
            if (++c[d] < box.hi[d]) break;
            c[d] = box.lo[d];
            --d;
        }
        if (d < 0) break;
    }
}

}  // namespace oscmax
