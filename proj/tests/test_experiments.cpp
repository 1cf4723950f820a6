#include <doctest.h>

#include "oscmax/experiments.hpp"

using namespace oscmax;

namespace {

SuiteConfig small(const std::string& suite) {
    SuiteConfig cfg = default_config(suite);
    // shrink sweeps so the unit suite stays fast; acceptance runs the full sizes
    if (suite == "jn_blo") cfg.resolutions = {5};
    if (suite == "blo_boundedness") cfg.resolutions = {3, 4, 5};
    if (suite == "blo_boundedness_divergence") cfg.resolutions = {2, 3, 4};
    if (suite == "beta_maximal_boundedness") cfg.resolutions = {3, 4, 5};
    if (suite == "sawyer_lp") cfg.resolutions = {3, 4, 5};
    if (suite == "uniform_continuity") cfg.resolutions = {4, 5, 6};
    if (suite == "vmo_preservation") cfg.resolutions = {5};
    if (suite == "nesting") cfg.resolutions = {3, 4};
    return cfg;
}

}  // namespace

TEST_CASE("every suite runs, reports, and serializes") {
    for (const auto& name : suite_names()) {
        const SuiteConfig cfg = small(name);
        const Report rep = run_suite(cfg);
        CHECK(rep.suite == name);
        CHECK(!rep.verdicts.empty());
        const auto j = rep.to_json();
        CHECK(j.contains("config"));
        CHECK(j.contains("per_function"));
        CHECK(j.contains("verdicts"));
        CHECK(!rep.to_csv().empty());
        INFO(name);
        CHECK(rep.ok());
    }
}

TEST_CASE("jn_blo: constant corpus is trivial, two-value distribution is a step") {
    SuiteConfig cfg = default_config("jn_blo");
    cfg.resolutions = {1};
    CorpusSpec c;
    c.kind = CorpusKind::constant;
    c.domain = BaseDomain(1, 0, 1);
    c.constant_value = 3.0;
    cfg.corpus = {c};
    const Report rep = run_suite(cfg);
    REQUIRE(rep.verdicts.size() == 1);
    CHECK(rep.verdicts[0].verdict == "TRIVIAL");

    // f = [0,1] at beta = 0.5: H({f - 0 > t}) = (1/2)^(1/2) for t in [0,1), then 0
    SuiteConfig cfg2 = default_config("jn_blo");
    cfg2.resolutions = {1};
    CorpusSpec ind;
    ind.kind = CorpusKind::indicator;
    ind.domain = BaseDomain(1, 0, 1);
    ind.indicator_window = Window{make_coord({1}), 1};
    cfg2.corpus = {ind};
    const Report rep2 = run_suite(cfg2);
    REQUIRE(!rep2.per_function.empty());
    const auto& windows = rep2.per_function[0].at("windows");
    const auto& hs = windows[0].at("content");
    const double half = std::pow(0.5, 0.5);
    for (std::size_t i = 0; i + 1 < hs.size(); ++i) CHECK(hs[i].get<double>() == doctest::Approx(half));
    CHECK(hs[hs.size() - 1].get<double>() == 0.0);  // nothing above the top value
}

TEST_CASE("divergence suite flags the alpha=0 counterexample and the alpha>0 variant stays bounded") {
    SuiteConfig cfg = default_config("blo_boundedness_divergence");
    cfg.resolutions = {2, 3, 4};
    const Report rep = run_suite(cfg);
    REQUIRE(rep.verdicts.size() == 1);
    CHECK(rep.verdicts[0].verdict == "DIVERGES-AS-PREDICTED");

    SuiteConfig bounded = cfg;
    bounded.suite = "blo_boundedness";
    bounded.alpha = 0.5;
    bounded.expect_divergence = false;
    const Report rep2 = run_suite(bounded);
    REQUIRE(rep2.verdicts.size() == 1);
    CHECK(rep2.verdicts[0].verdict == "PASS");
}

TEST_CASE("reports are deterministic given a seed, and runtime is excluded on request") {
    SuiteConfig cfg = small("nesting");
    const Report a = run_suite(cfg);
    const Report b = run_suite(cfg);
    CHECK(a.to_json(false).dump() == b.to_json(false).dump());
    CHECK(a.to_json(false)["runtime_ms"] == 0);
}

TEST_CASE("thread count does not change any suite report") {
    for (const auto& name : suite_names()) {
        SuiteConfig cfg = small(name);
        // tighten further: this runs every suite twice
        if (!cfg.resolutions.empty() && cfg.resolutions.size() > 2) cfg.resolutions.resize(2);
        cfg.threads = 1;
        const Report a = run_suite(cfg);
        cfg.threads = 8;
        const Report b = run_suite(cfg);
        INFO(name);
        CHECK(a.to_json(false).dump() == b.to_json(false).dump());
    }
}

TEST_CASE("suite parameter validation") {
    SuiteConfig bad = default_config("sawyer_lp");
    bad.p = 10.0;  // outside (1, n/alpha)
    CHECK_THROWS_AS(run_suite(bad), std::invalid_argument);

    SuiteConfig vmo = default_config("vmo_preservation");
    vmo.alpha = 0.9;  // >= beta
    CHECK_THROWS_AS(run_suite(vmo), std::invalid_argument);

    CHECK_THROWS_AS(default_config("unknown"), std::invalid_argument);
}

TEST_CASE("nesting with gamma = beta gives ratio 1") {
    SuiteConfig cfg = default_config("nesting");
    cfg.resolutions = {3};
    cfg.beta = 0.5;
    cfg.beta2 = 0.5;
    const Report rep = run_suite(cfg);
    for (const auto& e : rep.per_function) {
        if (!e.contains("ratios")) continue;
        CHECK(e.at("ratios").at("bmo_nesting").get<double>() == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(e.at("ratios").at("blo_nesting").get<double>() == doctest::Approx(1.0).epsilon(1e-12));
    }
}
