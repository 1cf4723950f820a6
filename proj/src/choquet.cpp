#include "oscmax/choquet.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace oscmax {

double layer_cake_integral(ContentTree& scratch, std::vector<std::pair<double, std::int64_t>>& vals) {
    scratch.clear();
    std::erase_if(vals, [](const auto& v) { return v.first <= 0.0; });
    std::sort(vals.begin(), vals.end(), [](const auto& a, const auto& b) {
        if (a.first != b.first) return a.first > b.first;
        return a.second < b.second;
    });
    double integral = 0.0;
    std::size_t i = 0;
    while (i < vals.size()) {
        const double t = vals[i].first;
        while (i < vals.size() && vals[i].first == t) {
            scratch.insert(vals[i].second);
            ++i;
        }
        const double next = (i < vals.size()) ? vals[i].first : 0.0;
        integral += (t - next) * scratch.total();
    }
    scratch.clear();
    return integral;
}

double region_content(ContentTree& scratch, const BaseDomain& domain, const CellBox& region) {
    scratch.clear();
    for_each_cell(domain, region, [&](const Coord&, std::int64_t idx) { scratch.insert(idx); });
    const double h = scratch.total();
    scratch.clear();
    return h;
}

namespace {

std::vector<std::pair<double, std::int64_t>> region_values(const GridFunction& f, const CellBox& region,
                                                           bool require_nonnegative) {
    std::vector<std::pair<double, std::int64_t>> vals;
    vals.reserve(static_cast<std::size_t>(region.cell_count()));
    for_each_cell(f.domain, region, [&](const Coord&, std::int64_t idx) {
        const double v = f.values[static_cast<std::size_t>(idx)];
        if (require_nonnegative && v < 0.0)
            throw std::domain_error("choquet integral requires a nonnegative integrand");
        vals.emplace_back(v, idx);
    });
    return vals;
}

}  // namespace

double choquet_integral(const GridFunction& f, const CellBox& region, const ContentParams& params) {
    validate_content_params(params, f.domain.dim);
    auto vals = region_values(f, region, true);
    ContentTree tree(f.domain, params.beta);
    return layer_cake_integral(tree, vals);
}

double choquet_integral(const GridFunction& f, const CellSet& region, const ContentParams& params) {
    validate_content_params(params, f.domain.dim);
    std::vector<std::pair<double, std::int64_t>> vals;
    for (std::size_t i = 0; i < region.mask.size(); ++i) {
        if (!region.mask[i]) continue;
        const double v = f.values[i];
        if (v < 0.0) throw std::domain_error("choquet integral requires a nonnegative integrand");
        vals.emplace_back(v, static_cast<std::int64_t>(i));
    }
    ContentTree tree(f.domain, params.beta);
    return layer_cake_integral(tree, vals);
}

double choquet_lp_norm(const GridFunction& f, const CellBox& region, double p, const ContentParams& params) {
    validate_content_params(params, f.domain.dim);
    if (!(p >= 1.0)) throw std::invalid_argument("p must be >= 1");
    std::vector<std::pair<double, std::int64_t>> vals;
    for_each_cell(f.domain, region, [&](const Coord&, std::int64_t idx) {
        vals.emplace_back(std::pow(std::abs(f.values[static_cast<std::size_t>(idx)]), p), idx);
    });
    ContentTree tree(f.domain, params.beta);
    return std::pow(layer_cake_integral(tree, vals), 1.0 / p);
}

CellBox cube_cell_box(const BaseDomain& domain, const DyadicCube& q) {
    const int depth = domain.root.level - q.level;
    if (depth < 0 || depth > domain.resolution || !domain.root.contains(q))
        throw std::invalid_argument("cube is not a lattice node of the domain");
    const std::int64_t span = std::int64_t(1) << (domain.resolution - depth);
    CellBox b{domain.dim, {}, {}};
    for (int d = 0; d < domain.dim; ++d) {
        const std::int64_t local = q.offset[d] - (domain.root.offset[d] << depth);
        b.lo[d] = local * span;
        b.hi[d] = (local + 1) * span;
    }
    return b;
}

PackingCheck packing_check(const std::vector<DyadicCube>& family, const GridFunction& f,
                           const ContentParams& params) {
    validate_content_params(params, f.domain.dim);
    if (family.empty()) throw std::invalid_argument("packing_check: empty family");
    for (std::size_t i = 0; i < family.size(); ++i) {
        if (!f.domain.root.contains(family[i])) throw std::invalid_argument("packing_check: cube outside root");
        for (std::size_t j = i + 1; j < family.size(); ++j)
            if (!family[i].disjoint(family[j])) throw std::invalid_argument("packing_check: overlapping family");
    }

    // Hypothesis scan: a dyadic cube has content side^beta, so it is enough to
    // visit the ancestors of family members inside the root tree.
    std::map<std::pair<int, Coord>, double> sums;
    for (const auto& q : family) {
        const double hq = std::pow(q.side(), params.beta);
        DyadicCube a = q;
        for (;;) {
            const int depth = f.domain.root.level - a.level;
            Coord local{};
            for (int d = 0; d < f.domain.dim; ++d) local[d] = a.offset[d] - (f.domain.root.offset[d] << depth);
            sums[{depth, local}] += hq;
            if (depth == 0) break;
            a = a.parent();
        }
    }
    double factor = 1.0;
    for (const auto& [key, s] : sums) {
        const double side = std::ldexp(1.0, f.domain.root.level - key.first);
        factor = std::max(factor, s / std::pow(side, params.beta));
    }

    double lhs = 0.0;
    CellSet all(f.domain);
    for (const auto& q : family) {
        const CellBox box = cube_cell_box(f.domain, q);
        lhs += choquet_integral(f, box, params);
        for_each_cell(f.domain, box, [&](const Coord&, std::int64_t idx) { all.mask[static_cast<std::size_t>(idx)] = 1; });
    }
    const double rhs = factor * choquet_integral(f, all, params);
    PackingCheck out;
    out.factor = factor;
    out.lhs = lhs;
    out.rhs = rhs;
    out.holds = lhs <= rhs * (1.0 + 1e-12) + 1e-300;
    return out;
}

}  // namespace oscmax
