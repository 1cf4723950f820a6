#pragma once

// Independent slow-path oracles used to pin expected values. These deliberately
// avoid the library's incremental tree / summed-area fast paths: contents come
// from fresh content() calls per level set, sums are direct loops.

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "oscmax/choquet.hpp"
#include "oscmax/content.hpp"
#include "oscmax/grid.hpp"
#include "oscmax/maximal.hpp"

namespace oracles {

using namespace oscmax;

// Portable uniform doubles; std distributions differ across standard libraries.
inline double uniform01(std::mt19937_64& rng) { return (rng() >> 11) * 0x1.0p-53; }

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
    return lo + (hi - lo) * uniform01(rng);
}

// Random dyadic-rational values: sums of these are exact in double, so fast paths
// and direct loops must agree bitwise.
inline double dyadic_value(std::mt19937_64& rng, double scale = 4.0) {
    return scale * static_cast<double>(rng() % 1025) / 1024.0;
}

inline GridFunction random_dyadic_grid(const BaseDomain& dom, std::mt19937_64& rng, double scale = 4.0) {
    GridFunction f(dom);
    for (auto& v : f.values) v = dyadic_value(rng, scale);
    return f;
}

inline GridFunction random_signed_grid(const BaseDomain& dom, std::mt19937_64& rng, double scale = 2.0) {
    GridFunction f(dom);
    for (auto& v : f.values) v = uniform(rng, -scale, scale);
    return f;
}

inline CellSet random_cellset(const BaseDomain& dom, std::mt19937_64& rng, double density = 0.4) {
    CellSet e(dom);
    for (auto& b : e.mask) b = uniform01(rng) < density ? 1 : 0;
    return e;
}

// Riemann discretization of the layer-cake formula over a uniform t-grid with
// midpoint sampling; each level set goes through a fresh content() call.
inline double riemann_choquet(const GridFunction& f, const CellBox& region, const ContentParams& params,
                              double step) {
    double tmax = 0.0;
    for_each_cell(f.domain, region, [&](const Coord&, std::int64_t i) {
        tmax = std::max(tmax, f.values[static_cast<std::size_t>(i)]);
    });
    if (tmax <= 0.0) return 0.0;
    const std::int64_t steps = static_cast<std::int64_t>(std::ceil(tmax / step));
    double integral = 0.0;
    for (std::int64_t k = 0; k < steps; ++k) {
        const double t = (k + 0.5) * step;
        CellSet level(f.domain);
        bool any = false;
        for_each_cell(f.domain, region, [&](const Coord&, std::int64_t i) {
            if (f.values[static_cast<std::size_t>(i)] > t) {
                level.mask[static_cast<std::size_t>(i)] = 1;
                any = true;
            }
        });
        if (any) integral += step * content(level, params).value;
    }
    return integral;
}

// Exact layer-cake over a region computed with fresh content() calls per distinct
// value (no incremental tree); arithmetically parallel to the production loop.
inline double layer_cake_fresh(const GridFunction& f, const CellBox& region, const ContentParams& params) {
    std::vector<std::pair<double, std::int64_t>> vals;
    for_each_cell(f.domain, region, [&](const Coord&, std::int64_t i) {
        vals.emplace_back(f.values[static_cast<std::size_t>(i)], i);
    });
    std::erase_if(vals, [](const auto& v) { return v.first <= 0.0; });
    std::sort(vals.begin(), vals.end(), [](const auto& a, const auto& b) { return a.first > b.first; });
    double integral = 0.0;
    std::size_t i = 0;
    CellSet level(f.domain);
    while (i < vals.size()) {
        const double t = vals[i].first;
        while (i < vals.size() && vals[i].first == t) {
            level.mask[static_cast<std::size_t>(vals[i].second)] = 1;
            ++i;
        }
        const double next = (i < vals.size()) ? vals[i].first : 0.0;
        integral += (t - next) * content(level, params).value;
    }
    return integral;
}

// Direct window-enumeration maximal oracle.
inline MaximalField maximal_brute(const GridFunction& f, double alpha, const WindowFamily& family) {
    const BaseDomain& dom = f.domain;
    MaximalField field(dom, 0.0);
    const auto windows = enumerate_windows(dom, family);
    for (const auto& w : windows) {
        double sum = 0.0;
        for_each_cell(dom, w.region, [&](const Coord&, std::int64_t i) {
            sum += std::abs(f.values[static_cast<std::size_t>(i)]);
        });
        const double value = std::pow(w.cube.side * dom.cell_side(), alpha - dom.dim) * dom.cell_volume() * sum;
        for_each_cell(dom, w.region, [&](const Coord&, std::int64_t i) {
            field.values[static_cast<std::size_t>(i)] = std::max(field.values[static_cast<std::size_t>(i)], value);
        });
    }
    return field;
}

inline MaximalField beta_maximal_brute(const GridFunction& f, double beta, const WindowFamily& family) {
    const BaseDomain& dom = f.domain;
    MaximalField field(dom, 0.0);
    GridFunction g(dom);
    for (std::size_t i = 0; i < f.values.size(); ++i) g.values[i] = std::abs(f.values[i]);
    const auto windows = enumerate_windows(dom, family);
    const ContentParams params{beta};
    for (const auto& w : windows) {
        const double integral = layer_cake_fresh(g, w.region, params);
        CellSet cells(dom);
        for_each_cell(dom, w.region, [&](const Coord&, std::int64_t i) { cells.mask[static_cast<std::size_t>(i)] = 1; });
        const double h = content(cells, params).value;
        const double avg = integral / h;
        for_each_cell(dom, w.region, [&](const Coord&, std::int64_t i) {
            field.values[static_cast<std::size_t>(i)] = std::max(field.values[static_cast<std::size_t>(i)], avg);
        });
    }
    return field;
}

// Dense scan of c -> ((1/H) int |f-c|^p dH)^{1/p} with two zoom stages; purely
// evaluates the objective, no structural knowledge of its breakpoints.
inline double dense_grid_oscillation(const GridFunction& f, const AnalysisWindow& w, double beta, double p,
                                     double coarse_step) {
    std::vector<double> vals;
    for_each_cell(f.domain, w.region, [&](const Coord&, std::int64_t i) {
        vals.push_back(f.values[static_cast<std::size_t>(i)]);
    });
    const double lo0 = *std::min_element(vals.begin(), vals.end());
    const double hi0 = *std::max_element(vals.begin(), vals.end());
    const ContentParams params{beta};
    CellSet cells(f.domain);
    for_each_cell(f.domain, w.region, [&](const Coord&, std::int64_t i) { cells.mask[static_cast<std::size_t>(i)] = 1; });
    const double h = content(cells, params).value;

    GridFunction shifted(f.domain);
    auto objective = [&](double c) {
        for_each_cell(f.domain, w.region, [&](const Coord&, std::int64_t i) {
            shifted.values[static_cast<std::size_t>(i)] = std::pow(std::abs(f.values[static_cast<std::size_t>(i)] - c), p);
        });
        return layer_cake_fresh(shifted, w.region, params);
    };

    double lo = lo0, hi = hi0, step = coarse_step;
    double best = std::numeric_limits<double>::infinity(), best_c = lo0;
    for (int stage = 0; stage < 3; ++stage) {
        const std::int64_t steps = static_cast<std::int64_t>(std::floor((hi - lo) / step)) + 1;
        for (std::int64_t k = 0; k <= steps; ++k) {
            const double c = std::min(hi, lo + k * step);
            const double v = objective(c);
            if (v < best) {
                best = v;
                best_c = c;
            }
        }
        lo = std::max(lo0, best_c - 2 * step);
        hi = std::min(hi0, best_c + 2 * step);
        step *= 1e-3;
    }
    return std::pow(best / h, 1.0 / p);
}

}  // namespace oracles
