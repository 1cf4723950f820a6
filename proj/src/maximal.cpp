#include "oscmax/maximal.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <stdexcept>

#include "oscmax/parallel.hpp"

namespace oscmax {

namespace {

void validate_alpha(double alpha, int dim) {
    if (!(alpha >= 0.0) || !(alpha < static_cast<double>(dim)))
        throw std::invalid_argument("alpha must satisfy 0 <= alpha < dim");
}

/// Summed-area table over |f|, exclusive prefix: extent (n+1)^dim.
struct Sat {
    int dim;
    std::int64_t n;
    std::vector<double> p;

    explicit Sat(const GridFunction& f) : dim(f.domain.dim), n(f.domain.cells_per_side()) {
        const std::int64_t e = n + 1;
        std::int64_t total = 1;
        for (int d = 0; d < dim; ++d) total *= e;
        p.assign(static_cast<std::size_t>(total), 0.0);
        // Seed with |f| at index+1 per axis, then prefix-sum along each axis.
        for (std::int64_t idx = 0; idx < f.domain.total_cells(); ++idx) {
            Coord c = f.domain.cell_coord(idx);
            std::int64_t q = 0;
            for (int d = 0; d < dim; ++d) q = q * e + (c[d] + 1);
            p[static_cast<std::size_t>(q)] = std::abs(f.values[static_cast<std::size_t>(idx)]);
        }
        std::vector<std::int64_t> stride(dim);
        for (int d = dim - 1, s = 1; d >= 0; --d) {
            stride[d] = s;
            s *= static_cast<int>(e);
        }
        for (int axis = 0; axis < dim; ++axis) {
            const std::int64_t st = stride[axis];
            for (std::int64_t base = 0; base < static_cast<std::int64_t>(p.size()); ++base) {
                Coord c{};
                std::int64_t rem = base;
                for (int d = 0; d < dim; ++d) {
                    c[d] = rem / stride[d];
                    rem %= stride[d];
                }
                if (c[axis] == 0) {
                    double acc = 0.0;
                    for (std::int64_t i = 0; i < e; ++i) {
                        acc += p[static_cast<std::size_t>(base + i * st)];
                        p[static_cast<std::size_t>(base + i * st)] = acc;
                    }
                }
            }
        }
    }

    double box_sum(const CellBox& b) const {
        const std::int64_t e = n + 1;
        double sum = 0.0;
        for (int corner = 0; corner < (1 << dim); ++corner) {
            std::int64_t q = 0;
            int lo_picks = 0;
            for (int d = 0; d < dim; ++d) {
                const bool pick_lo = (corner >> d) & 1;
                lo_picks += pick_lo;
                q = q * e + (pick_lo ? b.lo[d] : b.hi[d]);
            }
            sum += (lo_picks % 2 == 0) ? p[static_cast<std::size_t>(q)] : -p[static_cast<std::size_t>(q)];
        }
        return sum;
    }
};

/// out[c] = max over anchors a in [max(0, c-w+1), min(c, m-1)] of in[a], per line.
void dilate_axis(std::vector<double>& data, std::vector<std::int64_t>& ext, int axis, std::int64_t out_len, int w) {
    const int dim = static_cast<int>(ext.size());
    const std::int64_t m = ext[axis];
    std::vector<std::int64_t> in_stride(dim), out_stride(dim);
    std::vector<std::int64_t> out_ext = ext;
    out_ext[axis] = out_len;
    std::int64_t is = 1, os = 1;
    for (int d = dim - 1; d >= 0; --d) {
        in_stride[d] = is;
        out_stride[d] = os;
        is *= ext[d];
        os *= out_ext[d];
    }
    std::vector<double> out(static_cast<std::size_t>(os), 0.0);

    std::int64_t lines = 1;
    for (int d = 0; d < dim; ++d)
        if (d != axis) lines *= ext[d];

    std::vector<std::int64_t> idx(dim, 0);
    for (std::int64_t line = 0; line < lines; ++line) {
        std::int64_t in_base = 0, out_base = 0;
        for (int d = 0; d < dim; ++d) {
            if (d == axis) continue;
            in_base += idx[d] * in_stride[d];
            out_base += idx[d] * out_stride[d];
        }
        std::deque<std::int64_t> dq;
        std::int64_t next = 0;
        for (std::int64_t c = 0; c < out_len; ++c) {
            const std::int64_t hi = std::min(c, m - 1);
            while (next <= hi) {
                const double v = data[static_cast<std::size_t>(in_base + next * in_stride[axis])];
                while (!dq.empty() && data[static_cast<std::size_t>(in_base + dq.back() * in_stride[axis])] <= v)
                    dq.pop_back();
                dq.push_back(next);
                ++next;
            }
            const std::int64_t lo = std::max<std::int64_t>(0, c - w + 1);
            while (dq.front() < lo) dq.pop_front();
            out[static_cast<std::size_t>(out_base + c * out_stride[axis])] =
                data[static_cast<std::size_t>(in_base + dq.front() * in_stride[axis])];
        }
        for (int d = dim - 1; d >= 0; --d) {
            if (d == axis) continue;
            if (++idx[d] < ext[d]) break;
            idx[d] = 0;
        }
    }
    data = std::move(out);
    ext = out_ext;
}

void max_into(std::vector<double>& dst, const std::vector<double>& src) {
    for (std::size_t i = 0; i < dst.size(); ++i) dst[i] = std::max(dst[i], src[i]);
}

MaximalField fractional_contained(const GridFunction& f, const MaximalParams& params, int threads) {
    const BaseDomain& dom = f.domain;
    const std::int64_t n = dom.cells_per_side();
    const int lo = std::max(params.family.min_side, 1);
    std::int64_t hi = n;
    if (params.family.max_side > 0) hi = std::min<std::int64_t>(hi, params.family.max_side);

    MaximalField field(dom, 0.0);
    if (lo > hi) return field;
    const Sat sat(f);
    const double cellvol = dom.cell_volume();

    const std::int64_t nsizes = hi - lo + 1;
    std::vector<std::vector<double>> partial(static_cast<std::size_t>(std::max<std::int64_t>(
        1, std::min<std::int64_t>(threads, nsizes))));
    parallel_chunks(nsizes, threads, [&](int tid, std::int64_t b, std::int64_t e) {
        std::vector<double> acc(field.values.size(), 0.0);
        for (std::int64_t k = b; k < e; ++k) {
            const int w = static_cast<int>(lo + k);
            const std::int64_t m = n - w + 1;
            const double factor = std::pow(w * dom.cell_side(), params.alpha - dom.dim) * cellvol;
            std::vector<std::int64_t> ext(dom.dim, m);
            std::vector<double> a;
            a.reserve(static_cast<std::size_t>(std::pow(double(m), dom.dim)));
            Coord anchor{};
            for (;;) {
                CellBox box{dom.dim, anchor, anchor};
                for (int d = 0; d < dom.dim; ++d) box.hi[d] = anchor[d] + w;
                a.push_back(factor * sat.box_sum(box));
                int d = dom.dim - 1;
                while (d >= 0) {
                    if (++anchor[d] < m) break;
                    anchor[d] = 0;
                    --d;
                }
                if (d < 0) break;
            }
            for (int axis = 0; axis < dom.dim; ++axis) dilate_axis(a, ext, axis, n, w);
            max_into(acc, a);
        }
        partial[static_cast<std::size_t>(tid)] = std::move(acc);
    });
    for (const auto& acc : partial)
        if (!acc.empty()) max_into(field.values, acc);
    return field;
}

MaximalField fractional_generic(const GridFunction& f, const MaximalParams& params, int threads) {
    const BaseDomain& dom = f.domain;
    MaximalField field(dom, 0.0);
    const Sat sat(f);
    const double cellvol = dom.cell_volume();
    const WindowIndexer indexer(dom, params.family);
    if (count_windows(dom, params.family) > window_cap_from_env())
        throw EnumerationBudgetError("maximal: window enumeration budget exceeded");

    std::vector<std::vector<double>> partial(static_cast<std::size_t>(std::max(1, threads)));
    parallel_chunks(static_cast<std::int64_t>(indexer.size()), threads, [&](int tid, std::int64_t b, std::int64_t e) {
        std::vector<double> acc(field.values.size(), 0.0);
        for (std::int64_t i = b; i < e; ++i) {
            const AnalysisWindow w = indexer.at(static_cast<std::uint64_t>(i));
            if (w.region.empty()) continue;
            const double value =
                std::pow(w.cube.side * dom.cell_side(), params.alpha - dom.dim) * cellvol * sat.box_sum(w.region);
            for_each_cell(dom, w.region, [&](const Coord&, std::int64_t idx) {
                acc[static_cast<std::size_t>(idx)] = std::max(acc[static_cast<std::size_t>(idx)], value);
            });
        }
        partial[static_cast<std::size_t>(tid)] = std::move(acc);
    });
    for (const auto& acc : partial)
        if (!acc.empty()) max_into(field.values, acc);
    return field;
}

}  // namespace

MaximalField fractional_maximal(const GridFunction& f, const MaximalParams& params, int threads) {
    validate_alpha(params.alpha, f.domain.dim);
    if (params.family.kind == FamilyKind::contained) return fractional_contained(f, params, threads);
    return fractional_generic(f, params, threads);
}

MaximalField beta_maximal(const GridFunction& f, const ContentParams& content_params,
                          const WindowFamily& family, int threads) {
    validate_content_params(content_params, f.domain.dim);
    const BaseDomain& dom = f.domain;
    if (count_windows(dom, family) > window_cap_from_env())
        throw EnumerationBudgetError("beta_maximal: window enumeration budget exceeded");

    GridFunction g(dom);
    for (std::size_t i = 0; i < f.values.size(); ++i) g.values[i] = std::abs(f.values[i]);

    MaximalField field(dom, 0.0);
    const WindowIndexer indexer(dom, family);
    std::vector<std::vector<double>> partial(static_cast<std::size_t>(std::max(1, threads)));
    parallel_chunks(static_cast<std::int64_t>(indexer.size()), threads, [&](int tid, std::int64_t b, std::int64_t e) {
        std::vector<double> acc(field.values.size(), 0.0);
        ContentTree scratch(dom, content_params.beta);
        std::vector<std::pair<double, std::int64_t>> vals;
        for (std::int64_t i = b; i < e; ++i) {
            const AnalysisWindow w = indexer.at(static_cast<std::uint64_t>(i));
            if (w.region.empty()) continue;
            vals.clear();
            for_each_cell(dom, w.region, [&](const Coord&, std::int64_t idx) {
                vals.emplace_back(g.values[static_cast<std::size_t>(idx)], idx);
            });
            const double integral = layer_cake_integral(scratch, vals);
            double h;
            if (family.kind == FamilyKind::contained) {
                h = region_content(scratch, dom, w.region);
            } else {
                std::vector<Coord> cells;
                cells.reserve(static_cast<std::size_t>(w.cube.side) * static_cast<std::size_t>(w.cube.side));
                Coord c = w.cube.anchor;
                for (;;) {
                    Coord abs_c{};
                    for (int d = 0; d < dom.dim; ++d)
                        abs_c[d] = (dom.root.offset[d] << dom.resolution) + c[d];
                    cells.push_back(abs_c);
                    int d = dom.dim - 1;
                    while (d >= 0) {
                        if (++c[d] < w.cube.anchor[d] + w.cube.side) break;
                        c[d] = w.cube.anchor[d];
                        --d;
                    }
                    if (d < 0) break;
                }
                h = lattice_content(dom.dim, dom.root.level - dom.resolution, cells, content_params.beta);
            }
            const double avg = integral / h;
            for_each_cell(dom, w.region, [&](const Coord&, std::int64_t idx) {
                acc[static_cast<std::size_t>(idx)] = std::max(acc[static_cast<std::size_t>(idx)], avg);
            });
        }
        partial[static_cast<std::size_t>(tid)] = std::move(acc);
    });
    for (const auto& acc : partial)
        if (!acc.empty()) max_into(field.values, acc);
    return field;
}

SplitFields local_global_split(const GridFunction& f, const MaximalParams& params, int kappa_cells,
                               int threads) {
    if (kappa_cells <= 0) throw std::invalid_argument("kappa must be a positive cell multiple");
    MaximalParams local = params;
    local.family.max_side = (params.family.max_side > 0) ? std::min(params.family.max_side, kappa_cells - 1)
                                                         : kappa_cells - 1;
    MaximalParams global = params;
    global.family.min_side = std::max(params.family.min_side, kappa_cells);

    SplitFields out{MaximalField(f.domain, 0.0), MaximalField(f.domain, 0.0)};
    if (local.family.max_side >= local.family.min_side) out.local_part = fractional_maximal(f, local, threads);
    if (count_windows(f.domain, global.family) > 0) out.global_part = fractional_maximal(f, global, threads);
    return out;
}

}  // namespace oscmax
