#include "oscmax/oscillation.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "oscmax/parallel.hpp"

namespace oscmax {

namespace {

std::vector<double> region_cell_values(const GridFunction& f, const CellBox& region) {
    std::vector<double> v;
    v.reserve(static_cast<std::size_t>(region.cell_count()));
    for_each_cell(f.domain, region, [&](const Coord&, std::int64_t idx) {
        v.push_back(f.values[static_cast<std::size_t>(idx)]);
    });
    return v;
}

double full_cube_content(const AnalysisWindow& w, const BaseDomain& dom, double beta) {
    std::vector<Coord> cells;
    Coord c = w.cube.anchor;
    for (;;) {
        Coord abs_c{};
        for (int d = 0; d < dom.dim; ++d) abs_c[d] = (dom.root.offset[d] << dom.resolution) + c[d];
        cells.push_back(abs_c);
        int d = dom.dim - 1;
        while (d >= 0) {
            if (++c[d] < w.cube.anchor[d] + w.cube.side) break;
            c[d] = w.cube.anchor[d];
            --d;
        }
        if (d < 0) break;
    }
    return lattice_content(dom.dim, dom.root.level - dom.resolution, cells, beta);
}

struct Objective {
    const GridFunction& f;
    const CellBox& region;
    ContentTree& scratch;
    double p;
    bool lebesgue;  // beta == dim: the Choquet integral is the Lebesgue cell sum
    double cellvol;
    std::vector<std::pair<double, std::int64_t>> vals;

    // integral of |f - c|^p over the region (unnormalized)
    double operator()(double c) {
        if (lebesgue) {
            double s = 0.0;
            for_each_cell(f.domain, region, [&](const Coord&, std::int64_t idx) {
                s += std::pow(std::abs(f.values[static_cast<std::size_t>(idx)] - c), p);
            });
            return s * cellvol;
        }
        vals.clear();
        for_each_cell(f.domain, region, [&](const Coord&, std::int64_t idx) {
            vals.emplace_back(std::pow(std::abs(f.values[static_cast<std::size_t>(idx)] - c), p), idx);
        });
        return layer_cake_integral(scratch, vals);
    }
};

}  // namespace

double essinf_region(const GridFunction& f, const CellBox& region) {
    if (region.empty()) throw std::invalid_argument("essinf over an empty window");
    double m = std::numeric_limits<double>::infinity();
    for_each_cell(f.domain, region, [&](const Coord&, std::int64_t idx) {
        m = std::min(m, f.values[static_cast<std::size_t>(idx)]);
    });
    return m;
}

double window_normalizer(ContentTree& scratch, const AnalysisWindow& w, FamilyKind kind, double beta) {
    if (kind == FamilyKind::contained) return region_content(scratch, scratch.domain(), w.region);
    return full_cube_content(w, scratch.domain(), beta);
}

double choquet_average(const GridFunction& f, const AnalysisWindow& w, FamilyKind kind,
                       const ContentParams& params) {
    validate_content_params(params, f.domain.dim);
    ContentTree scratch(f.domain, params.beta);
    const double h = window_normalizer(scratch, w, kind, params.beta);
    return choquet_integral(f, w.region, params) / h;
}

Oscillation mean_oscillation(const GridFunction& f, const AnalysisWindow& w, FamilyKind kind,
                             const ContentParams& params, double p) {
    validate_content_params(params, f.domain.dim);
    if (!(p >= 1.0)) throw std::invalid_argument("p must be >= 1");
    if (w.region.empty()) throw std::invalid_argument("mean_oscillation over an empty window");

    std::vector<double> values = region_cell_values(f, w.region);
    std::sort(values.begin(), values.end());
    values.erase(std::unique(values.begin(), values.end()), values.end());
    if (values.size() == 1) return {0.0, values[0]};

    ContentTree scratch(f.domain, params.beta);
    const bool lebesgue = params.beta == static_cast<double>(f.domain.dim);
    Objective obj{f, w.region, scratch, p, lebesgue, f.domain.cell_volume(), {}};

    // Candidate breakpoints: the ordering of |f_i - c| can change only at cell
    // values and pairwise midpoints. In Lebesgue mode with p = 1 the objective is
    // piecewise linear with kinks at values only (weighted median).
    std::vector<double> candidates = values;
    if (!(lebesgue && p == 1.0)) {
        for (std::size_t i = 0; i < values.size(); ++i)
            for (std::size_t j = i + 1; j < values.size(); ++j)
                candidates.push_back(0.5 * (values[i] + values[j]));
        std::sort(candidates.begin(), candidates.end());
        candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
    }

    std::size_t best = 0;
    double best_val = obj(candidates[0]);
    for (std::size_t i = 1; i < candidates.size(); ++i) {
        const double v = obj(candidates[i]);
        if (v < best_val) {
            best_val = v;
            best = i;
        }
    }
    double best_c = candidates[best];

    if (p > 1.0) {
        // Refine inside the bracketing candidates; the objective is smooth there.
        double lo = (best > 0) ? candidates[best - 1] : candidates[best];
        double hi = (best + 1 < candidates.size()) ? candidates[best + 1] : candidates[best];
        const double gold = 0.5 * (std::sqrt(5.0) - 1.0);
        double x1 = hi - gold * (hi - lo), x2 = lo + gold * (hi - lo);
        double f1 = obj(x1), f2 = obj(x2);
        const double tol = 1e-12 * std::max(1.0, values.back() - values.front());
        while (hi - lo > tol) {
            if (f1 <= f2) {
                hi = x2;
                x2 = x1;
                f2 = f1;
                x1 = hi - gold * (hi - lo);
                f1 = obj(x1);
            } else {
                lo = x1;
                x1 = x2;
                f1 = f2;
                x2 = lo + gold * (hi - lo);
                f2 = obj(x2);
            }
        }
        const double xm = 0.5 * (lo + hi);
        const double fm = obj(xm);
        if (fm < best_val) {
            best_val = fm;
            best_c = xm;
        }
    }

    const double h = window_normalizer(scratch, w, kind, params.beta);
    return {std::pow(best_val / h, 1.0 / p), best_c};
}

namespace {

struct WindowScore {
    double value = -1.0;
    std::uint64_t index = 0;
    double c = 0.0;
};

NormReport sup_over_family(const GridFunction& f, const OscillationParams& params, int threads,
                           const std::function<WindowScore(const AnalysisWindow&, ContentTree&, std::uint64_t)>& score) {
    validate_content_params(params.content, f.domain.dim);
    if (count_windows(f.domain, params.family) == 0) throw std::invalid_argument("empty window family");
    if (count_windows(f.domain, params.family) > window_cap_from_env())
        throw EnumerationBudgetError("norm: window enumeration budget exceeded");
    const WindowIndexer indexer(f.domain, params.family);

    std::vector<WindowScore> partial(static_cast<std::size_t>(std::max(1, threads)));
    parallel_chunks(static_cast<std::int64_t>(indexer.size()), threads, [&](int tid, std::int64_t b, std::int64_t e) {
        ContentTree scratch(f.domain, params.content.beta);
        WindowScore bestw;
        for (std::int64_t i = b; i < e; ++i) {
            const AnalysisWindow w = indexer.at(static_cast<std::uint64_t>(i));
            if (w.region.empty()) continue;
            const WindowScore s = score(w, scratch, static_cast<std::uint64_t>(i));
            if (s.value > bestw.value || (s.value == bestw.value && s.index < bestw.index)) bestw = s;
        }
        partial[static_cast<std::size_t>(tid)] = bestw;
    });
    WindowScore best;
    for (const auto& s : partial)
        if (s.value > best.value || (s.value == best.value && s.index < best.index)) best = s;

    NormReport out;
    if (best.value < 0.0) return out;  // family clipped to nothing
    const WindowIndexer ix(f.domain, params.family);
    out.value = best.value;
    out.witness = ix.at(best.index).cube;
    out.witness_kind = params.family.kind;
    out.witness_c = best.c;
    out.has_witness = true;
    return out;
}

}  // namespace

NormReport bmo_norm(const GridFunction& f, const OscillationParams& params, int threads) {
    return sup_over_family(f, params, threads,
                           [&](const AnalysisWindow& w, ContentTree&, std::uint64_t idx) {
                               const Oscillation o = mean_oscillation(f, w, params.family.kind, params.content, params.p);
                               return WindowScore{o.value, idx, o.minimizer};
                           });
}

NormReport blo_norm(const GridFunction& f, const OscillationParams& params, int threads) {
    return sup_over_family(f, params, threads,
                           [&](const AnalysisWindow& w, ContentTree& scratch, std::uint64_t idx) {
                               const double e = essinf_region(f, w.region);
                               std::vector<std::pair<double, std::int64_t>> vals;
                               for_each_cell(f.domain, w.region, [&](const Coord&, std::int64_t i) {
                                   vals.emplace_back(std::pow(f.values[static_cast<std::size_t>(i)] - e, params.p), i);
                               });
                               const double integral = layer_cake_integral(scratch, vals);
                               const double h = window_normalizer(scratch, w, params.family.kind, params.content.beta);
                               return WindowScore{std::pow(integral / h, 1.0 / params.p), idx, e};
                           });
}

double oscillation_modulus(const GridFunction& f, double r, const OscillationParams& params, int threads) {
    if (!(r > 0.0)) throw std::invalid_argument("oscillation modulus requires r > 0");
    const int wmax = static_cast<int>(std::floor(r / f.domain.cell_side() + 1e-9));
    if (wmax < std::max(params.family.min_side, 1)) return 0.0;
    OscillationParams capped = params;
    capped.family.max_side = (params.family.max_side > 0) ? std::min(params.family.max_side, wmax) : wmax;
    return bmo_norm(f, capped, threads).value;
}

}  // namespace oscmax
