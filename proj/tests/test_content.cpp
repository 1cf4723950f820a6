#include <doctest.h>

#include <cmath>
#include <random>

#include "oscmax/content.hpp"
#include "oracles.hpp"

using namespace oscmax;

TEST_CASE("content basics") {
    BaseDomain dom(1, 0, 2);
    CHECK(content(CellSet(dom), ContentParams{0.5}).value == 0.0);

    CellSet full(dom);
    std::fill(full.mask.begin(), full.mask.end(), 1);
    for (double beta : {0.3, 0.7, 1.0}) {
        const auto r = content(full, ContentParams{beta});
        CHECK(r.value == doctest::Approx(1.0).epsilon(1e-15));
        REQUIRE(r.cover.size() == 1);  // ties break toward the coarse cover
        CHECK(r.cover[0].level == 0);
    }
}

TEST_CASE("content pinned example: two quarter cells at beta=0.6") {
    BaseDomain dom(1, 0, 2);
    const CellSet e = CellSet::from_indices(dom, {0, 2});
    const auto r = content(e, ContentParams{0.6});
    const double expected = 2.0 * std::pow(0.25, 0.6);  // confirmed by the cover oracle below
    CHECK(r.value == doctest::Approx(expected).epsilon(1e-15));
    CHECK(r.value == doctest::Approx(0.8705505632961241).epsilon(1e-12));
    CHECK(content_brute(e, ContentParams{0.6}) == doctest::Approx(expected).epsilon(1e-15));
    CHECK(r.cover.size() == 2);
}

TEST_CASE("cover is a valid antichain reproducing the value") {
    std::mt19937_64 rng(5);
    for (int dim : {1, 2}) {
        BaseDomain dom(dim, 0, dim == 1 ? 5 : 3);
        for (int it = 0; it < 30; ++it) {
            const CellSet e = oracles::random_cellset(dom, rng, 0.35);
            const auto r = content(e, ContentParams{0.6});
            double cost = 0.0;
            for (std::size_t i = 0; i < r.cover.size(); ++i) {
                cost += std::pow(r.cover[i].side(), 0.6);
                for (std::size_t j = i + 1; j < r.cover.size(); ++j) CHECK(r.cover[i].disjoint(r.cover[j]));
            }
            CHECK(cost == doctest::Approx(r.value).epsilon(1e-12));
            // cover really covers E
            for (std::int64_t idx = 0; idx < dom.total_cells(); ++idx) {
                if (!e.mask[static_cast<std::size_t>(idx)]) continue;
                const DyadicCube cell = dom.cell_cube(dom.cell_coord(idx));
                bool covered = false;
                for (const auto& q : r.cover) covered = covered || q.contains(cell);
                CHECK(covered);
            }
        }
    }
}

TEST_CASE("DP equals brute enumeration: all 256 masks, 1D m=3") {
    BaseDomain dom(1, 0, 3);
    for (double beta : {0.3, 0.7, 1.0}) {
        for (int mask = 0; mask < 256; ++mask) {
            CellSet e(dom);
            for (int i = 0; i < 8; ++i) e.mask[static_cast<std::size_t>(i)] = (mask >> i) & 1;
            const double dp = content(e, ContentParams{beta}).value;
            const double brute = content_brute(e, ContentParams{beta});
            if (beta == 1.0)
                CHECK(dp == brute);  // dyadic costs, exact in double
            else
                CHECK(dp == doctest::Approx(brute).epsilon(1e-12));
        }
    }
}

TEST_CASE("DP equals brute enumeration: random 2D m=2 masks") {
    std::mt19937_64 rng(7);
    BaseDomain dom(2, 0, 2);
    for (int it = 0; it < 200; ++it) {
        const CellSet e = oracles::random_cellset(dom, rng, 0.45);
        for (double beta : {0.3, 0.7, 1.5, 2.0}) {
            const double dp = content(e, ContentParams{beta}).value;
            const double brute = content_brute(e, ContentParams{beta});
            CHECK(dp == doctest::Approx(brute).epsilon(1e-12));
        }
    }
}

TEST_CASE("beta = n gives Lebesgue measure") {
    std::mt19937_64 rng(9);
    for (int dim : {1, 2}) {
        BaseDomain dom(dim, 0, 3);
        for (int it = 0; it < 20; ++it) {
            const CellSet e = oracles::random_cellset(dom, rng, 0.5);
            const double v = content(e, ContentParams{static_cast<double>(dim)}).value;
            const double lebesgue = static_cast<double>(e.count()) * dom.cell_volume();
            CHECK(v == doctest::Approx(lebesgue).epsilon(1e-12));
        }
    }
}

TEST_CASE("monotonicity and subadditivity axioms") {
    std::mt19937_64 rng(13);
    for (int dim : {1, 2}) {
        BaseDomain dom(dim, 0, dim == 1 ? 4 : 3);
        for (double beta : {0.3, 0.7, 1.0}) {
            const ContentParams p{beta};
            for (int it = 0; it < 100; ++it) {
                CellSet a = oracles::random_cellset(dom, rng, 0.3);
                const CellSet b = oracles::random_cellset(dom, rng, 0.3);
                CellSet a_union(dom), a_inter(dom), a_sub(dom);
                for (std::size_t i = 0; i < a.mask.size(); ++i) {
                    a_union.mask[i] = a.mask[i] | b.mask[i];
                    a_inter.mask[i] = a.mask[i] & b.mask[i];
                    a_sub.mask[i] = a.mask[i] & b.mask[i];  // subset of both
                }
                const double ha = content(a, p).value, hb = content(b, p).value;
                const double hu = content(a_union, p).value, hi = content(a_inter, p).value;
                CHECK(content(a_sub, p).value <= ha + 1e-12);
                CHECK(hu <= ha + hb + 1e-12);       // countable (finite) subadditivity
                CHECK(hu + hi <= ha + hb + 1e-12);  // strong subadditivity / submodularity
            }
        }
    }
}

TEST_CASE("cube normalization: node-aligned windows are exact powers") {
    for (int dim : {1, 2}) {
        BaseDomain dom(dim, 0, 3);
        for (double beta : {0.4, 1.0}) {
            for (int depth = 0; depth <= 3; ++depth) {
                BaseDomain sub(dim, 0, depth);
                for (std::int64_t i = 0; i < sub.total_cells(); ++i) {
                    const DyadicCube node = sub.cell_cube(sub.cell_coord(i));
                    CellSet e(dom);
                    const std::int64_t span = dom.cells_per_side() >> depth;
                    Coord base{};
                    for (int d = 0; d < dim; ++d) base[d] = node.offset[d] * span;
                    CellBox box{dim, base, base};
                    for (int d = 0; d < dim; ++d) box.hi[d] = base[d] + span;
                    for_each_cell(dom, box, [&](const Coord&, std::int64_t idx) {
                        e.mask[static_cast<std::size_t>(idx)] = 1;
                    });
                    CHECK(content(e, ContentParams{beta}).value == std::pow(node.side(), beta));
                }
            }
        }
    }
}

TEST_CASE("cell-aligned windows sit between l^beta and a stable constant") {
    // H >= l^beta always (the general-cube content of a cube is exactly l^beta);
    // the upper ratio is an empirical constant. In 1D it has settled by m=3 for
    // the canonical beta ladder; 2D constants at these resolutions are still
    // growing and are only reported, not gated.
    for (double beta : {0.3, 0.7, 1.0}) {
        double prev_c2 = -1.0;
        for (int m : {3, 4, 5}) {
            BaseDomain dom(1, 0, m);
            double c1 = 1e300, c2 = 0.0;
            for (const auto& w : enumerate_windows(dom, WindowFamily{})) {
                CellSet e(dom);
                for_each_cell(dom, w.region, [&](const Coord&, std::int64_t i) { e.mask[static_cast<std::size_t>(i)] = 1; });
                const double h = content(e, ContentParams{beta}).value;
                const double lb = std::pow(w.cube.side * dom.cell_side(), beta);
                const double ratio = h / lb;
                c1 = std::min(c1, ratio);
                c2 = std::max(c2, ratio);
            }
            CHECK(c1 >= 1.0 - 1e-12);
            if (prev_c2 > 0.0) CHECK(std::abs(c2 / prev_c2 - 1.0) < 0.10);
            prev_c2 = c2;
        }
    }
}

TEST_CASE("doubling about the origin, re-rooted one level up") {
    std::mt19937_64 rng(21);
    BaseDomain dom(1, 0, 4);
    const double beta = 0.5;
    double worst = 0.0;
    for (int it = 0; it < 100; ++it) {
        const CellSet e = oracles::random_cellset(dom, rng, 0.4);
        if (e.count() == 0) continue;
        std::vector<Coord> cells, doubled;
        for (std::int64_t i = 0; i < dom.total_cells(); ++i) {
            if (!e.mask[static_cast<std::size_t>(i)]) continue;
            const Coord c = dom.cell_coord(i);
            cells.push_back(c);
            // 2A at cell granularity: cell [c, c+1) doubles to [2c, 2c+2)
            Coord lo = c, hi = c;
            lo[0] = 2 * c[0];
            hi[0] = 2 * c[0] + 1;
            doubled.push_back(lo);
            doubled.push_back(hi);
        }
        const int lvl = dom.root.level - dom.resolution;
        const double h = lattice_content(1, lvl, cells, beta);
        const double h2 = lattice_content(1, lvl + 1, cells, beta);  // doubling = same offsets, one level up
        CHECK(h2 == doctest::Approx(std::pow(2.0, beta) * h).epsilon(1e-12));
        const double h2b = lattice_content(1, lvl, doubled, beta);
        worst = std::max(worst, h2b / h);
        CHECK(h2b <= std::pow(2.0, beta) * h * (1 + 1e-12));
    }
    CHECK(worst > 0.0);
}

TEST_CASE("lattice content agrees with rooted DP inside a domain") {
    std::mt19937_64 rng(31);
    BaseDomain dom(2, 0, 3);
    for (int it = 0; it < 20; ++it) {
        const CellSet e = oracles::random_cellset(dom, rng, 0.3);
        if (e.count() == 0) continue;
        std::vector<Coord> cells;
        for (std::int64_t i = 0; i < dom.total_cells(); ++i)
            if (e.mask[static_cast<std::size_t>(i)]) cells.push_back(dom.cell_coord(i));
        const double a = content(e, ContentParams{0.8}).value;
        const double b = lattice_content(2, -3, cells, 0.8);
        CHECK(a == doctest::Approx(b).epsilon(1e-12));
    }
}

TEST_CASE("lattice content handles negative coordinates via orthant forests") {
    // mirror symmetry: reflecting through 0 preserves the dyadic structure
    std::mt19937_64 rng(33);
    for (int it = 0; it < 50; ++it) {
        std::vector<Coord> cells, mirrored;
        const int count = 1 + static_cast<int>(rng() % 6);
        for (int i = 0; i < count; ++i) {
            const std::int64_t x = static_cast<std::int64_t>(rng() % 16);
            cells.push_back(make_coord({x}));
            mirrored.push_back(make_coord({-1 - x}));
        }
        const double a = lattice_content(1, -3, cells, 0.6);
        const double b = lattice_content(1, -3, mirrored, 0.6);
        CHECK(a == doctest::Approx(b).epsilon(1e-12));
    }
    // straddling the origin: components on each side never merge
    const double one_cell = std::pow(0.125, 0.6);
    CHECK(lattice_content(1, -3, {make_coord({-1}), make_coord({0})}, 0.6) ==
          doctest::Approx(2 * one_cell).epsilon(1e-12));
}

TEST_CASE("parameter validation") {
    BaseDomain dom(1, 0, 2);
    CellSet e(dom);
    CHECK_THROWS_AS(content(e, ContentParams{0.0}), std::invalid_argument);
    CHECK_THROWS_AS(content(e, ContentParams{1.5}), std::invalid_argument);
    BaseDomain big(1, 0, 7);
    CHECK_THROWS_AS(content_brute(CellSet(big), ContentParams{0.5}), std::invalid_argument);
}

TEST_CASE("incremental tree matches fresh builds bitwise") {
    std::mt19937_64 rng(41);
    BaseDomain dom(1, 0, 4);
    ContentTree tree(dom, 0.6);
    for (int it = 0; it < 40; ++it) {
        const CellSet e = oracles::random_cellset(dom, rng, 0.4);
        tree.clear();
        for (std::int64_t i = 0; i < dom.total_cells(); ++i)
            if (e.mask[static_cast<std::size_t>(i)]) tree.insert(i);
        CHECK(tree.total() == content(e, ContentParams{0.6}).value);
    }
}
