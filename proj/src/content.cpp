#include "oscmax/content.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace oscmax {

void validate_content_params(const ContentParams& p, int dim) {
    if (!(p.beta > 0.0) || !(p.beta <= static_cast<double>(dim)))
        throw std::invalid_argument("beta must satisfy 0 < beta <= dim");
}

CellSet CellSet::from_indices(const BaseDomain& d, const std::vector<std::int64_t>& cells) {
    CellSet e(d);
    for (auto i : cells) {
        if (i < 0 || i >= d.total_cells()) throw std::invalid_argument("cell index out of range");
        e.mask[static_cast<std::size_t>(i)] = 1;
    }
    return e;
}

std::int64_t CellSet::count() const {
    std::int64_t n = 0;
    for (auto b : mask) n += b;
    return n;
}

std::vector<std::int64_t> CellSet::indices() const {
    std::vector<std::int64_t> out;
    for (std::size_t i = 0; i < mask.size(); ++i)
        if (mask[i]) out.push_back(static_cast<std::int64_t>(i));
    return out;
}

ContentTree::ContentTree(const BaseDomain& domain, double beta) : domain_(domain), beta_(beta) {
    validate_content_params(ContentParams{beta}, domain.dim);
    const int m = domain.resolution;
    value_.resize(m + 1);
    self_cost_.resize(m + 1);
    for (int d = 0; d <= m; ++d) {
        value_[d].assign(std::size_t(1) << (domain.dim * d), 0.0);
        self_cost_[d] = std::pow(std::ldexp(1.0, domain.root.level - d), beta_);
    }
    leaf_in_.assign(static_cast<std::size_t>(domain.total_cells()), 0);
}

void ContentTree::insert(std::int64_t cell_index) {
    if (leaf_in_[static_cast<std::size_t>(cell_index)]) return;
    leaf_in_[static_cast<std::size_t>(cell_index)] = 1;
    const int m = domain_.resolution;
    Coord c = domain_.cell_coord(cell_index);
    if (value_[m][static_cast<std::size_t>(cell_index)] == 0.0) touched_.emplace_back(m, cell_index);
    value_[m][static_cast<std::size_t>(cell_index)] = self_cost_[m];
    for (int d = m - 1; d >= 0; --d) {
        for (int a = 0; a < domain_.dim; ++a) c[a] >>= 1;
        std::int64_t flat = 0;
        for (int a = 0; a < domain_.dim; ++a) flat = (flat << d) + c[a];
        // Re-sum the children in fixed order so incremental and fresh builds agree bitwise.
        double child_sum = 0.0;
        const int nc = domain_.root.child_count();
        for (int i = 0; i < nc; ++i) {
            std::int64_t cf = 0;
            for (int a = 0; a < domain_.dim; ++a) cf = (cf << (d + 1)) + (2 * c[a] + ((i >> (domain_.dim - 1 - a)) & 1));
            child_sum += value_[d + 1][static_cast<std::size_t>(cf)];
        }
        const double v = std::min(self_cost_[d], child_sum);
        if (v == value_[d][static_cast<std::size_t>(flat)]) break;
        if (value_[d][static_cast<std::size_t>(flat)] == 0.0) touched_.emplace_back(d, flat);
        value_[d][static_cast<std::size_t>(flat)] = v;
    }
}

void ContentTree::clear() {
    for (auto& [d, flat] : touched_) value_[d][static_cast<std::size_t>(flat)] = 0.0;
    touched_.clear();
    std::fill(leaf_in_.begin(), leaf_in_.end(), 0);
}

void ContentTree::extract_rec(int depth, std::int64_t flat, std::vector<DyadicCube>& out) const {
    const double v = value_[depth][static_cast<std::size_t>(flat)];
    if (v == 0.0) return;
    Coord c{};
    std::int64_t rem = flat;
    for (int a = domain_.dim - 1; a >= 0; --a) {
        c[a] = rem & ((std::int64_t(1) << depth) - 1);
        rem >>= depth;
    }
    auto node_cube = [&]() {
        DyadicCube q{domain_.dim, domain_.root.level - depth, {}};
        for (int a = 0; a < domain_.dim; ++a) q.offset[a] = (domain_.root.offset[a] << depth) + c[a];
        return q;
    };
    if (depth == domain_.resolution) {
        out.push_back(node_cube());
        return;
    }
    double child_sum = 0.0;
    const int nc = domain_.root.child_count();
    for (int i = 0; i < nc; ++i) {
        std::int64_t cf = 0;
        for (int a = 0; a < domain_.dim; ++a) cf = (cf << (depth + 1)) + (2 * c[a] + ((i >> (domain_.dim - 1 - a)) & 1));
        child_sum += value_[depth + 1][static_cast<std::size_t>(cf)];
    }
    if (v == self_cost_[depth] && self_cost_[depth] <= child_sum) {
        out.push_back(node_cube());
        return;
    }
    for (int i = 0; i < nc; ++i) {
        std::int64_t cf = 0;
        for (int a = 0; a < domain_.dim; ++a) cf = (cf << (depth + 1)) + (2 * c[a] + ((i >> (domain_.dim - 1 - a)) & 1));
        extract_rec(depth + 1, cf, out);
    }
}

std::vector<DyadicCube> ContentTree::extract_cover() const {
    std::vector<DyadicCube> out;
    extract_rec(0, 0, out);
    return out;
}

ContentResult content(const CellSet& e, const ContentParams& params) {
    validate_content_params(params, e.domain.dim);
    ContentTree tree(e.domain, params.beta);
    for (std::size_t i = 0; i < e.mask.size(); ++i)
        if (e.mask[i]) tree.insert(static_cast<std::int64_t>(i));
    return ContentResult{tree.total(), tree.extract_cover()};
}

namespace {

struct BruteContext {
    const CellSet& e;
    const BaseDomain& domain;
    double beta;
    std::uint64_t budget;
    std::uint64_t generated = 0;

    // All attainable costs of antichain covers of E restricted to the node.
    std::vector<double> covers(int depth, Coord c) {
        const std::int64_t span = std::int64_t(1) << (domain.resolution - depth);
        CellBox box{domain.dim, {}, {}};
        for (int a = 0; a < domain.dim; ++a) {
            box.lo[a] = c[a] * span;
            box.hi[a] = (c[a] + 1) * span;
        }
        bool occupied = false;
        Coord cc = box.lo;
        for (;;) {
            if (e.mask[static_cast<std::size_t>(domain.cell_index(cc))]) {
                occupied = true;
                break;
            }
            int d = domain.dim - 1;
            while (d >= 0) {
                if (++cc[d] < box.hi[d]) break;
                cc[d] = box.lo[d];
                --d;
            }
            if (d < 0) break;
        }
        if (!occupied) return {0.0};
        const double self_cost = std::pow(std::ldexp(1.0, domain.root.level - depth), beta);
        if (depth == domain.resolution) return {self_cost};

        std::vector<double> combined{0.0};
        for (int i = 0; i < domain.root.child_count(); ++i) {
            Coord child = c;
            for (int a = 0; a < domain.dim; ++a) child[a] = 2 * c[a] + ((i >> (domain.dim - 1 - a)) & 1);
            const std::vector<double> part = covers(depth + 1, child);
            std::vector<double> next;
            next.reserve(combined.size() * part.size());
            generated += combined.size() * part.size();
            if (generated > budget) throw std::runtime_error("content_brute: cover enumeration budget exceeded");
            for (double a : combined)
                for (double b : part) next.push_back(a + b);
            combined = std::move(next);
        }
        combined.push_back(self_cost);
        return combined;
    }
};

}  // namespace

double content_brute(const CellSet& e, const ContentParams& params, std::uint64_t cover_budget) {
    validate_content_params(params, e.domain.dim);
    if (e.domain.total_cells() > 64) throw std::invalid_argument("content_brute: domain exceeds 64 cells");
    if (e.count() == 0) return 0.0;
    BruteContext ctx{e, e.domain, params.beta, cover_budget};
    const std::vector<double> all = ctx.covers(0, Coord{});
    return *std::min_element(all.begin(), all.end());
}

double lattice_content(int dim, int cell_level, const std::vector<Coord>& cells, double beta) {
    validate_content_params(ContentParams{beta}, dim);
    if (cells.empty()) return 0.0;

    // Nodes in different sign-orthants never share a dyadic ancestor; handle each
    // orthant's forest separately and merge upward until a single node remains.
    std::map<int, std::map<Coord, double>> orthants;
    const double leaf_cost = std::pow(std::ldexp(1.0, cell_level), beta);
    for (const auto& c : cells) {
        int key = 0;
        for (int a = 0; a < dim; ++a)
            if (c[a] < 0) key |= 1 << a;
        orthants[key][c] = leaf_cost;
    }
    double total = 0.0;
    for (auto& [key, nodes] : orthants) {
        int level = cell_level;
        while (nodes.size() > 1) {
            std::map<Coord, double> up;
            for (const auto& [c, v] : nodes) {
                Coord p{};
                for (int a = 0; a < dim; ++a) p[a] = floor_div(c[a], 2);
                up[p] += v;
            }
            ++level;
            const double side_cost = std::pow(std::ldexp(1.0, level), beta);
            for (auto& [c, v] : up) v = std::min(side_cost, v);
            nodes = std::move(up);
        }
        total += nodes.begin()->second;
    }
    return total;
}

}  // namespace oscmax
