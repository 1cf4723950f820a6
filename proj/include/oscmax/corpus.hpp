#pragma once

#include <cstdint>
#include <string>

#include "oscmax/grid.hpp"

namespace oscmax {

enum class CorpusKind {
    constant,
    indicator,
    sawtooth,
    dyadic_martingale,
    log_distance_hyperplane,
    log_abs,
};

std::string corpus_kind_name(CorpusKind k);
CorpusKind corpus_kind_from_name(const std::string& name);

/// Deterministic test-function recipe. Singular kinds sample -log(dist + eps) at
/// cell centers with eps = half the cell diagonal, so values stay finite; the same
/// seed reproduces bit-identical functions, and martingale refinements are nested
/// across resolutions.
struct CorpusSpec {
    CorpusKind kind = CorpusKind::constant;
    BaseDomain domain;
    double constant_value = 0.0;
    Window indicator_window{};
    double frequency = 1.0;
    std::uint64_t seed = 0;
    double step = 0.5;
    int hyperplane_dim = 0;  // k, must satisfy 0 <= k < dim
    double truncation = 0.0; // cap on |f| for singular kinds; 0 disables
};

GridFunction generate(const CorpusSpec& spec);

/// Same recipe at another resolution (indicator windows rescale with the grid).
CorpusSpec with_resolution(const CorpusSpec& spec, int m);

std::string describe(const CorpusSpec& spec);

}  // namespace oscmax
