#pragma once

#include <optional>

#include "oscmax/choquet.hpp"
#include "oscmax/content.hpp"
#include "oscmax/grid.hpp"

namespace oscmax {

struct OscillationParams {
    ContentParams content{};
    double p = 1.0;
    WindowFamily family{};
};

/// Largest c with a content-null sublevel set; every nonempty cell set has
/// positive content for beta > 0, so this is the cellwise minimum.
double essinf_region(const GridFunction& f, const CellBox& region);

/// Normalizing content of a family member: the in-domain region for contained
/// windows, the full (possibly protruding) cube for centered ones.
double window_normalizer(ContentTree& scratch, const AnalysisWindow& w, FamilyKind kind, double beta);

/// Choquet average of f (>= 0 on the window region).
double choquet_average(const GridFunction& f, const AnalysisWindow& w, FamilyKind kind,
                       const ContentParams& params);

struct Oscillation {
    double value = 0.0;      // ((1/H) * integral |f - c|^p dH)^(1/p) at the minimizer
    double minimizer = 0.0;  // the optimal c
};

/// Exact inner minimization over c. For p = 1 the objective is piecewise linear in c
/// with breakpoints among cell values and pairwise midpoints, so scanning that
/// candidate set is exact; for p > 1 the best candidate bracket is refined by
/// golden-section search.
Oscillation mean_oscillation(const GridFunction& f, const AnalysisWindow& w, FamilyKind kind,
                             const ContentParams& params, double p);

struct NormReport {
    double value = 0.0;
    LatticeBox witness{};
    FamilyKind witness_kind = FamilyKind::contained;
    double witness_c = 0.0;
    bool has_witness = false;
};

NormReport bmo_norm(const GridFunction& f, const OscillationParams& params, int threads = 1);
NormReport blo_norm(const GridFunction& f, const OscillationParams& params, int threads = 1);

/// sup of the p=1 oscillation over family windows with real side <= r; 0 when the
/// constrained family is empty.
double oscillation_modulus(const GridFunction& f, double r, const OscillationParams& params, int threads = 1);

}  // namespace oscmax
