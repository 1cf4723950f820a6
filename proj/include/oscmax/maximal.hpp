#pragma once

#include "oscmax/choquet.hpp"
#include "oscmax/content.hpp"
#include "oscmax/grid.hpp"

namespace oscmax {

struct MaximalParams {
    double alpha = 0.0;  // 0 <= alpha < dim
    WindowFamily family{};
};

/// Uncentered fractional maximal function: per cell, the max over family windows
/// containing the cell of side^(alpha - n) * (Lebesgue integral of |f|).
/// Contained families run in O(#sizes * #cells) via a summed-area table plus a
/// monotonic-deque dilation per axis.
MaximalField fractional_maximal(const GridFunction& f, const MaximalParams& params, int threads = 1);

/// Beta-dimensional maximal function: per cell, the sup over family windows of the
/// Choquet average of |f| on the window.
MaximalField beta_maximal(const GridFunction& f, const ContentParams& content_params,
                          const WindowFamily& family, int threads = 1);

struct SplitFields {
    MaximalField local_part;   // windows with side < kappa (cells)
    MaximalField global_part;  // windows with side >= kappa
};

/// Splits the window family at side threshold kappa (in cells). An empty side of
/// the split yields the zero field; pointwise max of the parts recovers the full
/// maximal function exactly.
SplitFields local_global_split(const GridFunction& f, const MaximalParams& params, int kappa_cells,
                               int threads = 1);

}  // namespace oscmax
