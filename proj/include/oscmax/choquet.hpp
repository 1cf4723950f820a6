#pragma once

#include <utility>
#include <vector>

#include "oscmax/content.hpp"
#include "oscmax/grid.hpp"

namespace oscmax {

/// Layer-cake sum of a nonnegative cellwise integrand against the dyadic content:
/// sum over sorted distinct positive values t_j of (t_j - t_{j-1}) * H({>= t_j}).
/// `vals` holds (value, cell index); sorted/filtered in place. The scratch tree is
/// cleared on entry and exit.
double layer_cake_integral(ContentTree& scratch, std::vector<std::pair<double, std::int64_t>>& vals);

/// Content of a cell region, computed on the same scratch tree.
double region_content(ContentTree& scratch, const BaseDomain& domain, const CellBox& region);

/// Exact Choquet integral of f (>= 0 on the region) over the region.
double choquet_integral(const GridFunction& f, const CellBox& region, const ContentParams& params);
double choquet_integral(const GridFunction& f, const CellSet& region, const ContentParams& params);

/// (integral of |f|^p dH)^(1/p), p >= 1.
double choquet_lp_norm(const GridFunction& f, const CellBox& region, double p, const ContentParams& params);

struct PackingCheck {
    double factor = 1.0;  // smallest A with sum_{Q_j in Q} H(Q_j) <= A H(Q) over dyadic Q
    bool holds = false;   // sum_j int_{Q_j} f dH <= A int_{union} f dH
    double lhs = 0.0;
    double rhs = 0.0;
};

/// family must be pairwise non-overlapping dyadic cubes inside the root; f >= 0.
PackingCheck packing_check(const std::vector<DyadicCube>& family, const GridFunction& f,
                           const ContentParams& params);

/// Cell box spanned by a dyadic cube that lies inside the domain root.
CellBox cube_cell_box(const BaseDomain& domain, const DyadicCube& q);

}  // namespace oscmax
