#include <doctest.h>

#include <cmath>

#include "oscmax/corpus.hpp"
#include "oscmax/oscillation.hpp"

using namespace oscmax;

TEST_CASE("constant and indicator kinds") {
    CorpusSpec c;
    c.kind = CorpusKind::constant;
    c.domain = BaseDomain(2, 0, 2);
    c.constant_value = 1.25;
    const GridFunction f = generate(c);
    for (double v : f.values) CHECK(v == 1.25);

    CorpusSpec ind;
    ind.kind = CorpusKind::indicator;
    ind.domain = BaseDomain(1, 0, 3);
    ind.indicator_window = Window{make_coord({2}), 3};
    const GridFunction g = generate(ind);
    for (std::int64_t i = 0; i < 8; ++i) CHECK(g.values[static_cast<std::size_t>(i)] == ((i >= 2 && i < 5) ? 1.0 : 0.0));
}

TEST_CASE("determinism: same spec, identical values") {
    CorpusSpec m;
    m.kind = CorpusKind::dyadic_martingale;
    m.domain = BaseDomain(2, 0, 3);
    m.seed = 42;
    m.step = 0.5;
    const GridFunction a = generate(m);
    const GridFunction b = generate(m);
    CHECK(a.values == b.values);

    m.seed = 43;
    const GridFunction c = generate(m);
    CHECK(a.values != c.values);
}

TEST_CASE("martingale refinements are nested across resolutions") {
    CorpusSpec m;
    m.kind = CorpusKind::dyadic_martingale;
    m.domain = BaseDomain(1, 0, 3);
    m.seed = 7;
    m.step = 0.5;
    const GridFunction coarse = generate(m);
    const GridFunction fine = generate(with_resolution(m, 5));
    // each fine cell's first 3 increments match its coarse ancestor
    for (std::int64_t i = 0; i < 32; ++i) {
        const double diff = fine.values[static_cast<std::size_t>(i)] - coarse.values[static_cast<std::size_t>(i / 4)];
        CHECK(std::abs(diff) <= 2 * 0.5 + 1e-12);  // only the two extra levels moved
    }
}

TEST_CASE("martingale bmo norm stays within a factor 2 across m in {3,4,5}") {
    CorpusSpec m;
    m.kind = CorpusKind::dyadic_martingale;
    m.domain = BaseDomain(1, 0, 3);
    m.seed = 1;
    m.step = 0.5;
    std::vector<double> norms;
    for (int res : {3, 4, 5}) {
        const GridFunction f = generate(with_resolution(m, res));
        OscillationParams par{ContentParams{1.0}, 1.0, WindowFamily{}};
        norms.push_back(bmo_norm(f, par).value);
    }
    for (std::size_t i = 1; i < norms.size(); ++i) {
        CHECK(norms[i] <= 2.0 * norms[i - 1]);
        CHECK(norms[i] >= 0.5 * norms[i - 1]);
    }
}

TEST_CASE("log-distance kind: finite values, classical bmo stable across m in 1D") {
    CorpusSpec spec;
    spec.kind = CorpusKind::log_distance_hyperplane;
    spec.domain = BaseDomain(1, 0, 5);
    spec.hyperplane_dim = 0;
    std::vector<double> norms;
    for (int m = 5; m <= 9; ++m) {
        const GridFunction f = generate(with_resolution(spec, m));
        for (double v : f.values) CHECK(std::isfinite(v));
        OscillationParams par{ContentParams{1.0}, 1.0, WindowFamily{}};
        norms.push_back(bmo_norm(f, par).value);
    }
    for (std::size_t i = 1; i < norms.size(); ++i) {
        const double ratio = norms[i] / norms[i - 1];
        CHECK(ratio >= 0.8);
        CHECK(ratio <= 1.25);
    }
}

TEST_CASE("log kinds: hyperplane dimension validation and truncation") {
    CorpusSpec spec;
    spec.kind = CorpusKind::log_distance_hyperplane;
    spec.domain = BaseDomain(2, 0, 3);
    spec.hyperplane_dim = 2;
    CHECK_THROWS_AS(generate(spec), std::invalid_argument);

    spec.hyperplane_dim = 1;
    spec.truncation = 1.0;
    const GridFunction f = generate(spec);
    for (double v : f.values) CHECK(std::abs(v) <= 1.0);
}

TEST_CASE("sawtooth is in [0,1] and periodic-symmetric") {
    CorpusSpec spec;
    spec.kind = CorpusKind::sawtooth;
    spec.domain = BaseDomain(1, 0, 5);
    spec.frequency = 4.0;
    const GridFunction f = generate(spec);
    for (double v : f.values) {
        CHECK(v >= 0.0);
        CHECK(v <= 1.0);
    }
    // frequency 4 on 32 cells: period 8 cells
    for (std::int64_t i = 0; i + 8 < 32; ++i)
        CHECK(f.values[static_cast<std::size_t>(i)] == doctest::Approx(f.values[static_cast<std::size_t>(i + 8)]));
}

TEST_CASE("kind names round trip") {
    for (auto k : {CorpusKind::constant, CorpusKind::indicator, CorpusKind::sawtooth, CorpusKind::dyadic_martingale,
                   CorpusKind::log_distance_hyperplane, CorpusKind::log_abs})
        CHECK(corpus_kind_from_name(corpus_kind_name(k)) == k);
    CHECK_THROWS_AS(corpus_kind_from_name("nope"), std::invalid_argument);
}
