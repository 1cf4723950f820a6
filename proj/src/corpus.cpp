#include "oscmax/corpus.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace oscmax {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

// Seeded, coordinate-keyed coin; independent of traversal order and resolution.
int node_sign(std::uint64_t seed, int depth, const Coord& c, int dim) {
    std::uint64_t h = splitmix64(seed ^ (0xabcdef12345678ull + static_cast<std::uint64_t>(depth)));
    for (int d = 0; d < dim; ++d) h = splitmix64(h ^ static_cast<std::uint64_t>(c[d] + 0x4000000000000000ll));
    return (h & 1) ? 1 : -1;
}

double triangle(double t) {
    const double u = t - std::floor(t);
    return 2.0 * std::abs(u - 0.5);
}

}  // namespace

std::string corpus_kind_name(CorpusKind k) {
    switch (k) {
        case CorpusKind::constant: return "constant";
        case CorpusKind::indicator: return "indicator";
        case CorpusKind::sawtooth: return "sawtooth";
        case CorpusKind::dyadic_martingale: return "dyadic_martingale";
        case CorpusKind::log_distance_hyperplane: return "log_distance_hyperplane";
        case CorpusKind::log_abs: return "log_abs";
    }
    throw std::logic_error("unknown corpus kind");
}

CorpusKind corpus_kind_from_name(const std::string& name) {
    if (name == "constant") return CorpusKind::constant;
    if (name == "indicator") return CorpusKind::indicator;
    if (name == "sawtooth") return CorpusKind::sawtooth;
    if (name == "dyadic_martingale" || name == "martingale") return CorpusKind::dyadic_martingale;
    if (name == "log_distance_hyperplane" || name == "log_distance") return CorpusKind::log_distance_hyperplane;
    if (name == "log_abs") return CorpusKind::log_abs;
    throw std::invalid_argument("unknown corpus kind: " + name);
}

GridFunction generate(const CorpusSpec& spec) {
    const BaseDomain& dom = spec.domain;
    GridFunction f(dom);
    const double eps = 0.5 * dom.cell_side() * std::sqrt(static_cast<double>(dom.dim));

    switch (spec.kind) {
        case CorpusKind::constant:
            std::fill(f.values.begin(), f.values.end(), spec.constant_value);
            return f;
        case CorpusKind::indicator: {
            if (!dom.window_inside(spec.indicator_window))
                throw std::invalid_argument("indicator window outside domain");
            for_each_cell(dom, dom.window_box(spec.indicator_window),
                          [&](const Coord&, std::int64_t idx) { f.values[static_cast<std::size_t>(idx)] = 1.0; });
            return f;
        }
        case CorpusKind::sawtooth: {
            for (std::int64_t i = 0; i < dom.total_cells(); ++i) {
                const Coord c = dom.cell_coord(i);
                double s = 0.0;
                for (int d = 0; d < dom.dim; ++d) {
                    const double u = (dom.cell_center(c, d) - dom.root.lo(d)) / dom.side();
                    s += triangle(spec.frequency * u);
                }
                f.values[static_cast<std::size_t>(i)] = s / dom.dim;
            }
            return f;
        }
        case CorpusKind::dyadic_martingale: {
            for (std::int64_t i = 0; i < dom.total_cells(); ++i) {
                const Coord c = dom.cell_coord(i);
                double v = 0.0;
                for (int depth = 1; depth <= dom.resolution; ++depth) {
                    Coord node{};
                    for (int d = 0; d < dom.dim; ++d) node[d] = c[d] >> (dom.resolution - depth);
                    v += spec.step * node_sign(spec.seed, depth, node, dom.dim);
                }
                f.values[static_cast<std::size_t>(i)] = v;
            }
            return f;
        }
        case CorpusKind::log_distance_hyperplane:
        case CorpusKind::log_abs: {
            const int k = (spec.kind == CorpusKind::log_abs) ? 0 : spec.hyperplane_dim;
            if (spec.kind == CorpusKind::log_distance_hyperplane && (k < 0 || k >= dom.dim))
                throw std::invalid_argument("hyperplane dimension must satisfy 0 <= k < dim");
            for (std::int64_t i = 0; i < dom.total_cells(); ++i) {
                const Coord c = dom.cell_coord(i);
                double d2 = 0.0;
                const int first_axis = (spec.kind == CorpusKind::log_abs) ? 0 : k;
                for (int d = first_axis; d < dom.dim; ++d) {
                    const double center = dom.root.lo(d) + 0.5 * dom.side();
                    const double dx = dom.cell_center(c, d) - center;
                    d2 += dx * dx;
                }
                double v = -std::log(std::sqrt(d2) + eps);
                if (spec.truncation > 0.0) v = std::clamp(v, -spec.truncation, spec.truncation);
                f.values[static_cast<std::size_t>(i)] = v;
            }
            return f;
        }
    }
    throw std::logic_error("unknown corpus kind");
}

CorpusSpec with_resolution(const CorpusSpec& spec, int m) {
    CorpusSpec out = spec;
    out.domain = BaseDomain(spec.domain.dim, spec.domain.root.level, m);
    if (spec.kind == CorpusKind::indicator) {
        const int dm = m - spec.domain.resolution;
        Window w = spec.indicator_window;
        if (dm >= 0) {
            for (int d = 0; d < spec.domain.dim; ++d) w.anchor[d] <<= dm;
            w.side <<= dm;
        } else {
            for (int d = 0; d < spec.domain.dim; ++d) w.anchor[d] >>= -dm;
            w.side = std::max(1, w.side >> -dm);
        }
        out.indicator_window = w;
    }
    return out;
}

std::string describe(const CorpusSpec& spec) {
    std::ostringstream os;
    os << corpus_kind_name(spec.kind);
    switch (spec.kind) {
        case CorpusKind::constant: os << "(" << spec.constant_value << ")"; break;
        case CorpusKind::indicator:
            os << "(anchor=" << spec.indicator_window.anchor[0] << ",side=" << spec.indicator_window.side << ")";
            break;
        case CorpusKind::sawtooth: os << "(freq=" << spec.frequency << ")"; break;
        case CorpusKind::dyadic_martingale: os << "(seed=" << spec.seed << ",step=" << spec.step << ")"; break;
        case CorpusKind::log_distance_hyperplane: os << "(k=" << spec.hyperplane_dim << ")"; break;
        case CorpusKind::log_abs: break;
    }
    os << "@n" << spec.domain.dim << "m" << spec.domain.resolution;
    return os.str();
}

}  // namespace oscmax
