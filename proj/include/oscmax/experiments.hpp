#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "oscmax/corpus.hpp"

namespace oscmax {

struct SuiteConfig {
    std::string suite;
    int dim = 1;
    int root_level = 0;
    std::vector<int> resolutions;
    double beta = 0.5;
    double beta2 = 1.0;  // second exponent where a suite compares two contents
    double alpha = 0.5;
    double p = 2.0;
    std::vector<double> lambdas{4, 8, 16, 32};
    int r_cells = 2;  // probe window side for the split-oscillation sweep
    std::uint64_t seed = 1;
    int threads = 1;
    bool expect_divergence = false;
    std::vector<CorpusSpec> corpus;  // empty = suite defaults
};

struct Verdict {
    std::string name;
    std::string verdict;  // PASS / FAIL / TRIVIAL / DIVERGES-AS-PREDICTED
    std::string detail;
};

struct Report {
    std::string suite;
    nlohmann::json config;
    std::vector<nlohmann::json> per_function;
    std::vector<Verdict> verdicts;
    std::int64_t runtime_ms = 0;

    nlohmann::json to_json(bool include_runtime = true) const;
    std::string to_csv() const;
    bool ok() const;  // true when no verdict is FAIL
};

std::vector<std::string> suite_names();
SuiteConfig default_config(const std::string& suite);
nlohmann::json config_to_json(const SuiteConfig& cfg);
void apply_config_json(SuiteConfig& cfg, const nlohmann::json& j);

Report run_suite(const SuiteConfig& cfg);

}  // namespace oscmax
