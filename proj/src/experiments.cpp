#include "oscmax/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "oscmax/choquet.hpp"
#include "oscmax/io.hpp"
#include "oscmax/maximal.hpp"
#include "oscmax/oscillation.hpp"

namespace oscmax {

namespace {

constexpr double kTrendGuard = 1.5;  // sup ratios may grow by < this per resolution doubling
constexpr double kSlack = 1e-12;

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(6);
    os << v;
    return os.str();
}

std::string fmt_series(const std::vector<double>& v) {
    std::ostringstream os;
    os.precision(6);
    for (std::size_t i = 0; i < v.size(); ++i) os << (i ? " " : "") << v[i];
    return os.str();
}

std::vector<CorpusSpec> default_corpus(const SuiteConfig& cfg) {
    if (!cfg.corpus.empty()) return cfg.corpus;
    const int m0 = cfg.resolutions.empty() ? 4 : cfg.resolutions.front();
    BaseDomain dom(cfg.dim, cfg.root_level, m0);
    std::vector<CorpusSpec> out;

    CorpusSpec indicator;
    indicator.kind = CorpusKind::indicator;
    indicator.domain = dom;
    indicator.indicator_window.side = static_cast<int>(dom.cells_per_side() / 2);
    if (indicator.indicator_window.side < 1) indicator.indicator_window.side = 1;
    out.push_back(indicator);

    CorpusSpec saw;
    saw.kind = CorpusKind::sawtooth;
    saw.domain = dom;
    saw.frequency = 3.0;
    out.push_back(saw);

    CorpusSpec mart;
    mart.kind = CorpusKind::dyadic_martingale;
    mart.domain = dom;
    mart.seed = cfg.seed;
    mart.step = 0.5;
    out.push_back(mart);
    return out;
}

Verdict trend_verdict(const std::string& name, const std::vector<double>& sup_ratio, bool expect_divergence) {
    Verdict v{name, "FAIL", ""};
    std::vector<double> used;
    for (double r : sup_ratio)
        if (std::isfinite(r) && r > 0.0) used.push_back(r);
    if (used.size() < 2) {
        v.verdict = "TRIVIAL";
        v.detail = "not enough nonzero ratios (" + fmt_series(sup_ratio) + ")";
        return v;
    }
    if (!expect_divergence) {
        bool stable = true;
        for (std::size_t i = 1; i < used.size(); ++i)
            if (used[i] > kTrendGuard * used[i - 1]) stable = false;
        v.verdict = stable ? "PASS" : "FAIL";
        v.detail = "sup ratios per resolution: " + fmt_series(used);
    } else {
        bool increasing = true;
        for (std::size_t i = 1; i < used.size(); ++i)
            if (used[i] <= used[i - 1]) increasing = false;
        const bool grew = used.back() >= kTrendGuard * used.front();
        v.verdict = (increasing && grew) ? "DIVERGES-AS-PREDICTED" : "FAIL";
        v.detail = "sup ratios per resolution: " + fmt_series(used) +
                   " (growth x" + fmt(used.back() / used.front()) + ")";
    }
    return v;
}

struct LinearFit {
    double intercept = 0.0;
    double slope = 0.0;
    double r_squared = 0.0;
    int points = 0;
};

LinearFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
    LinearFit out;
    out.points = static_cast<int>(x.size());
    if (x.size() < 2) return out;
    const double n = static_cast<double>(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    const double denom = n * sxx - sx * sx;
    if (denom == 0.0) return out;
    out.slope = (n * sxy - sx * sy) / denom;
    out.intercept = (sy - out.slope * sx) / n;
    double ss_res = 0, ss_tot = 0;
    const double ybar = sy / n;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double fit = out.intercept + out.slope * x[i];
        ss_res += (y[i] - fit) * (y[i] - fit);
        ss_tot += (y[i] - ybar) * (y[i] - ybar);
    }
    out.r_squared = (ss_tot > 0.0) ? 1.0 - ss_res / ss_tot : 1.0;
    return out;
}

AnalysisWindow full_window(const BaseDomain& dom) {
    LatticeBox cube{dom.dim, {}, static_cast<std::int64_t>(dom.cells_per_side())};
    return AnalysisWindow{cube, dom.clip(cube)};
}

AnalysisWindow aligned_window(const BaseDomain& dom, int depth) {
    LatticeBox cube{dom.dim, {}, dom.cells_per_side() >> depth};
    return AnalysisWindow{cube, dom.clip(cube)};
}

double lebesgue_lp(const GridFunction& f, double p) {
    double s = 0.0;
    for (double v : f.values) s += std::pow(std::abs(v), p);
    return std::pow(s * f.domain.cell_volume(), 1.0 / p);
}

// ---------------------------------------------------------------- jn_blo

// Level-set distribution of f - essinf over a region, sampled at `steps` uniform
// thresholds; contents come from the exact cover optimizer.
struct Distribution {
    std::vector<double> t;
    std::vector<double> h;
    double hq = 0.0;     // content of the region
    double essinf = 0.0;
    double tmax = 0.0;
    bool monotone = true;
};

Distribution level_distribution(const GridFunction& f, const CellBox& region, const ContentParams& cp, int steps) {
    Distribution out;
    out.essinf = essinf_region(f, region);
    for_each_cell(f.domain, region, [&](const Coord&, std::int64_t i) {
        out.tmax = std::max(out.tmax, f.values[static_cast<std::size_t>(i)] - out.essinf);
    });
    ContentTree scratch(f.domain, cp.beta);
    out.hq = region_content(scratch, f.domain, region);
    double prev = std::numeric_limits<double>::infinity();
    for (int j = 1; j <= steps; ++j) {
        const double t = out.tmax * j / steps;
        CellSet level(f.domain);
        for_each_cell(f.domain, region, [&](const Coord&, std::int64_t i) {
            if (f.values[static_cast<std::size_t>(i)] - out.essinf > t) level.mask[static_cast<std::size_t>(i)] = 1;
        });
        const double h = content(level, cp).value;
        if (h > prev + kSlack) out.monotone = false;
        prev = h;
        out.t.push_back(t);
        out.h.push_back(h);
    }
    return out;
}

// Fit log(H/H(Q')) vs t over the scaling regime: drop the undecayed head (no rate
// information) and the atomic tail where the level set is under a few cells.
LinearFit decay_fit(const std::vector<double>& x, const std::vector<double>& logh, double atomic_floor_log) {
    std::vector<double> fx, fy;
    std::size_t start = 0;
    while (start + 1 < logh.size() && logh[start + 1] == logh[0]) ++start;
    for (std::size_t i = start; i < x.size(); ++i) {
        if (logh[i] < atomic_floor_log) break;
        fx.push_back(x[i]);
        fy.push_back(logh[i]);
    }
    return fit_line(fx, fy);
}

Report run_jn_blo(const SuiteConfig& cfg) {
    Report rep;
    rep.suite = cfg.suite;
    const ContentParams cp{cfg.beta};
    const std::vector<int> res = cfg.resolutions.empty() ? std::vector<int>{6} : cfg.resolutions;

    std::vector<CorpusSpec> corpus = cfg.corpus;
    if (corpus.empty()) {
        for (std::uint64_t k = 0; k < 4; ++k) {
            CorpusSpec mart;
            mart.kind = CorpusKind::dyadic_martingale;
            mart.domain = BaseDomain(cfg.dim, cfg.root_level, res.front());
            mart.seed = cfg.seed + k;
            mart.step = 0.5;
            corpus.push_back(mart);
        }
    }

    for (int m : res) {
        const double atomic_floor_log = std::log(4.0 * std::pow(std::ldexp(1.0, cfg.root_level - m), cfg.beta));
        struct EnsembleItem {
            GridFunction f;
            double blo;
            double essinf;
            double tmax;
        };
        std::vector<EnsembleItem> martingales;

        for (const auto& spec0 : corpus) {
            const CorpusSpec spec = with_resolution(spec0, m);
            const GridFunction f = generate(spec);
            OscillationParams op{cp, 1.0, WindowFamily{}};
            const NormReport blo = blo_norm(f, op, cfg.threads);

            nlohmann::json entry{{"spec", describe(spec)}, {"spec_json", corpus_spec_to_json(spec)}};
            entry["norms"] = {{"blo", blo.value}};
            if (blo.value < 1e-12) {
                entry["verdict"] = "TRIVIAL";
                rep.per_function.push_back(entry);
                rep.verdicts.push_back({"jn distribution " + describe(spec), "TRIVIAL", "constant function, no decay"});
                continue;
            }

            nlohmann::json windows = nlohmann::json::array();
            bool monotone = true;
            for (int depth = 0; depth <= std::min(2, m); ++depth) {
                const AnalysisWindow w = aligned_window(f.domain, depth);
                const Distribution dist = level_distribution(f, w.region, cp, 32);
                monotone = monotone && dist.monotone;
                std::vector<double> x, logh;
                for (std::size_t i = 0; i < dist.t.size(); ++i) {
                    if (dist.h[i] <= 0.0) continue;
                    x.push_back(dist.t[i] / blo.value);
                    logh.push_back(std::log(dist.h[i] / dist.hq));
                }
                const LinearFit fit = decay_fit(x, logh, atomic_floor_log - std::log(dist.hq));
                windows.push_back({{"side_cells", w.cube.side},
                                   {"t", dist.t},
                                   {"content", dist.h},
                                   {"c1", std::exp(fit.intercept)},
                                   {"c2", -fit.slope},
                                   {"r_squared", fit.r_squared},
                                   {"points", fit.points}});
                if (depth == 0 && spec.kind == CorpusKind::dyadic_martingale)
                    martingales.push_back({f, blo.value, dist.essinf, dist.tmax});
            }
            entry["windows"] = windows;
            rep.per_function.push_back(entry);
            rep.verdicts.push_back({"jn distribution " + describe(spec), monotone ? "PASS" : "FAIL",
                                    monotone ? "level-set contents nonincreasing in t" : "non-monotone distribution"});
        }

        // Corpus-level decay law: mean log-content profile of the martingale items
        // on a shared t/norm axis, fitted over the scaling regime.
        if (!martingales.empty()) {
            double xmax = std::numeric_limits<double>::infinity();
            for (const auto& it : martingales) xmax = std::min(xmax, it.tmax / it.blo);
            std::vector<double> xs, ys;
            for (int j = 1; j <= 32; ++j) {
                const double x = xmax * j / 32.0;
                double acc = 0.0;
                bool ok = true;
                for (const auto& it : martingales) {
                    CellSet level(it.f.domain);
                    for (std::size_t i = 0; i < it.f.values.size(); ++i)
                        if (it.f.values[i] - it.essinf > x * it.blo) level.mask[i] = 1;
                    const double h = content(level, cp).value;
                    if (h <= 0.0) {
                        ok = false;
                        break;
                    }
                    acc += std::log(h);
                }
                if (ok) {
                    xs.push_back(x);
                    ys.push_back(acc / static_cast<double>(martingales.size()));
                }
            }
            const LinearFit fit = decay_fit(xs, ys, atomic_floor_log);
            const bool ok = fit.r_squared >= 0.9 && -fit.slope > 0.0;
            rep.per_function.push_back({{"spec", "martingale ensemble @m" + std::to_string(m)},
                                        {"fit", {{"c1", std::exp(fit.intercept)},
                                                 {"c2", -fit.slope},
                                                 {"r_squared", fit.r_squared},
                                                 {"points", fit.points}}}});
            rep.verdicts.push_back({"jn ensemble log-linear decay @m" + std::to_string(m), ok ? "PASS" : "FAIL",
                                    "c1=" + fmt(std::exp(fit.intercept)) + " c2=" + fmt(-fit.slope) +
                                        " r2=" + fmt(fit.r_squared) + " over " + fmt(fit.points) + " points"});
        }
    }
    return rep;
}

// ------------------------------------------------- boundedness ratio suites

Report run_blo_boundedness(const SuiteConfig& cfg) {
    Report rep;
    rep.suite = cfg.suite;
    const std::vector<int> res = cfg.resolutions.empty() ? std::vector<int>{4, 5, 6, 7} : cfg.resolutions;
    const auto corpus = default_corpus(cfg);

    std::vector<double> sup_ratio;
    for (int m : res) {
        double sup = 0.0;
        for (const auto& spec0 : corpus) {
            const CorpusSpec spec = with_resolution(spec0, m);
            const GridFunction f = generate(spec);
            const double n = static_cast<double>(f.domain.dim);
            OscillationParams classical{ContentParams{n}, 1.0, WindowFamily{}};
            const double denom = bmo_norm(f, classical, cfg.threads).value * std::pow(f.domain.side(), cfg.alpha);
            nlohmann::json entry{{"spec", describe(spec)}, {"m", m}};
            if (denom < 1e-12) {
                entry["verdict"] = "SKIPPED (zero BMO norm)";
                rep.per_function.push_back(entry);
                continue;
            }
            const MaximalField mf = fractional_maximal(f, MaximalParams{cfg.alpha, WindowFamily{}}, cfg.threads);
            OscillationParams target{ContentParams{cfg.beta}, 1.0, WindowFamily{}};
            const double num = blo_norm(mf, target, cfg.threads).value;
            const double ratio = num / denom;
            entry["norms"] = {{"blo_beta_of_maximal", num}, {"bmo_classical_scaled", denom}};
            entry["ratios"] = {{"bound", ratio}};
            rep.per_function.push_back(entry);
            sup = std::max(sup, ratio);
        }
        sup_ratio.push_back(sup);
    }
    rep.verdicts.push_back(trend_verdict("maximal BMO->BLO^beta ratio trend", sup_ratio, cfg.expect_divergence));
    return rep;
}

Report run_beta_maximal_boundedness(const SuiteConfig& cfg) {
    Report rep;
    rep.suite = cfg.suite;
    if (!(cfg.beta <= cfg.beta2)) throw std::invalid_argument("requires beta <= beta2");
    const std::vector<int> res = cfg.resolutions.empty() ? std::vector<int>{3, 4, 5, 6} : cfg.resolutions;
    const auto corpus = default_corpus(cfg);

    std::vector<double> sup_ratio;
    for (int m : res) {
        double sup = 0.0;
        for (const auto& spec0 : corpus) {
            const CorpusSpec spec = with_resolution(spec0, m);
            const GridFunction f = generate(spec);
            OscillationParams base{ContentParams{cfg.beta}, 1.0, WindowFamily{}};
            const double denom = bmo_norm(f, base, cfg.threads).value;
            nlohmann::json entry{{"spec", describe(spec)}, {"m", m}};
            if (denom < 1e-12) {
                entry["verdict"] = "SKIPPED (zero BMO norm)";
                rep.per_function.push_back(entry);
                continue;
            }
            const MaximalField mf = beta_maximal(f, ContentParams{cfg.beta2}, WindowFamily{}, cfg.threads);
            const double num = blo_norm(mf, base, cfg.threads).value;
            const double ratio = num / denom;
            entry["norms"] = {{"blo_beta1_of_beta2_maximal", num}, {"bmo_beta1", denom}};
            entry["ratios"] = {{"bound", ratio}};
            rep.per_function.push_back(entry);
            sup = std::max(sup, ratio);
        }
        sup_ratio.push_back(sup);
    }
    rep.verdicts.push_back(trend_verdict("beta-maximal BMO^b1->BLO^b1 ratio trend", sup_ratio, cfg.expect_divergence));
    return rep;
}

Report run_sawyer_lp(const SuiteConfig& cfg) {
    Report rep;
    rep.suite = cfg.suite;
    const double n = static_cast<double>(cfg.dim);
    if (!(cfg.p > 1.0 && cfg.p < n / cfg.alpha))
        throw std::invalid_argument("requires 1 < p < dim/alpha");
    const double beta = n - cfg.alpha * cfg.p;
    if (!(beta > 0.0 && beta <= n)) throw std::invalid_argument("derived beta out of range");
    const std::vector<int> res = cfg.resolutions.empty() ? std::vector<int>{4, 5, 6, 7} : cfg.resolutions;
    const auto corpus = default_corpus(cfg);

    std::vector<double> sup_ratio;
    for (int m : res) {
        double sup = 0.0;
        for (const auto& spec0 : corpus) {
            const CorpusSpec spec = with_resolution(spec0, m);
            const GridFunction f = generate(spec);
            const double denom = lebesgue_lp(f, cfg.p);
            nlohmann::json entry{{"spec", describe(spec)}, {"m", m}, {"beta", beta}};
            if (denom < 1e-12) {
                entry["verdict"] = "SKIPPED (zero function)";
                rep.per_function.push_back(entry);
                continue;
            }
            const MaximalField mf = fractional_maximal(f, MaximalParams{cfg.alpha, WindowFamily{}}, cfg.threads);
            const double num = choquet_lp_norm(mf, f.domain.full_box(), cfg.p, ContentParams{beta});
            const double ratio = num / denom;
            entry["norms"] = {{"choquet_lp_of_maximal", num}, {"lebesgue_lp", denom}};
            entry["ratios"] = {{"bound", ratio}};
            rep.per_function.push_back(entry);
            sup = std::max(sup, ratio);
        }
        sup_ratio.push_back(sup);
    }
    rep.verdicts.push_back(trend_verdict("fractional maximal Lp->Lp(content) ratio trend", sup_ratio, cfg.expect_divergence));
    return rep;
}

// --------------------------------------------------- uniform continuity

std::vector<double> shift_modulus_series(const MaximalField& mf, const std::vector<int>& shifts) {
    const BaseDomain& dom = mf.domain;
    std::vector<double> mu;
    for (int j : shifts) {
        double worst = 0.0;
        for (std::int64_t i = 0; i < dom.total_cells(); ++i) {
            Coord c = dom.cell_coord(i);
            if (c[0] + j >= dom.cells_per_side()) continue;  // shifted cell clipped away
            Coord cs = c;
            cs[0] += j;
            worst = std::max(worst, std::abs(mf.at(cs) - mf.at(c)));
        }
        mu.push_back(worst);
    }
    return mu;
}

Report run_uniform_continuity(const SuiteConfig& cfg) {
    Report rep;
    rep.suite = cfg.suite;
    const std::vector<int> res = cfg.resolutions.empty() ? std::vector<int>{4, 5, 6, 7} : cfg.resolutions;

    std::vector<CorpusSpec> corpus = cfg.corpus;
    if (corpus.empty()) {
        BaseDomain dom(cfg.dim, cfg.root_level, res.front());
        CorpusSpec ind;
        ind.kind = CorpusKind::indicator;
        ind.domain = dom;
        ind.indicator_window.side = std::max<int>(1, static_cast<int>(dom.cells_per_side() / 2));
        corpus.push_back(ind);
        CorpusSpec logd;
        logd.kind = CorpusKind::log_distance_hyperplane;
        logd.domain = dom;
        logd.hyperplane_dim = 0;
        corpus.push_back(logd);
    }

    for (const auto& spec0 : corpus) {
        bool monotone_all = true;
        std::vector<double> one_cell_mu;
        nlohmann::json series = nlohmann::json::array();
        for (int m : res) {
            const CorpusSpec spec = with_resolution(spec0, m);
            const GridFunction f = generate(spec);
            std::vector<int> shifts;
            for (int j = 1; j <= static_cast<int>(f.domain.cells_per_side()) / 2; j *= 2) shifts.push_back(j);
            const MaximalField mf = fractional_maximal(f, MaximalParams{cfg.alpha, WindowFamily{}}, cfg.threads);
            const std::vector<double> mu = shift_modulus_series(mf, shifts);
            for (std::size_t i = 1; i < mu.size(); ++i)
                if (mu[i] + kSlack < mu[i - 1]) monotone_all = false;
            one_cell_mu.push_back(mu.empty() ? 0.0 : mu.front());

            const MaximalField mf0 = fractional_maximal(f, MaximalParams{0.0, WindowFamily{}}, cfg.threads);
            const std::vector<double> mu0 = shift_modulus_series(mf0, shifts);
            series.push_back({{"m", m}, {"shifts", shifts}, {"mu", mu}, {"mu_alpha0", mu0}});
        }
        bool shrinking = true;
        for (std::size_t i = 1; i < one_cell_mu.size(); ++i) {
            if (one_cell_mu[i - 1] == 0.0) continue;  // constant field at coarse m, nothing to compare
            if (one_cell_mu[i] > 1.05 * one_cell_mu[i - 1] + kSlack) shrinking = false;
        }
        rep.per_function.push_back({{"spec", describe(spec0)}, {"series", series}, {"one_cell_mu", one_cell_mu}});
        rep.verdicts.push_back({"uniform continuity " + describe(spec0),
                                (monotone_all && shrinking) ? "PASS" : "FAIL",
                                "mu(delta) monotone=" + std::string(monotone_all ? "yes" : "no") +
                                    ", one-cell modulus per m: " + fmt_series(one_cell_mu)});
    }
    return rep;
}

// ------------------------------------------------------ vmo preservation

Report run_vmo_preservation(const SuiteConfig& cfg) {
    Report rep;
    rep.suite = cfg.suite;
    if (!(cfg.alpha < cfg.beta)) throw std::invalid_argument("requires alpha < beta");
    const int m = cfg.resolutions.empty() ? 6 : cfg.resolutions.back();
    const ContentParams cp{cfg.beta};

    std::vector<CorpusSpec> corpus = cfg.corpus;
    if (corpus.empty()) {
        BaseDomain dom(cfg.dim, cfg.root_level, m);
        for (double freq : {2.0, 8.0}) {
            CorpusSpec saw;
            saw.kind = CorpusKind::sawtooth;
            saw.domain = dom;
            saw.frequency = freq;
            corpus.push_back(saw);
        }
    }

    for (const auto& spec0 : corpus) {
        const CorpusSpec spec = with_resolution(spec0, m);
        const GridFunction f = generate(spec);
        const MaximalField mf = fractional_maximal(f, MaximalParams{cfg.alpha, WindowFamily{}}, cfg.threads);
        OscillationParams op{cp, 1.0, WindowFamily{}};

        std::vector<double> ladder;
        for (int j = 0; j <= 4; ++j)
            ladder.push_back(oscillation_modulus(mf, std::ldexp(f.domain.side(), -j), op, cfg.threads));
        bool ladder_monotone = true;
        for (std::size_t i = 1; i < ladder.size(); ++i)
            if (ladder[i] > ladder[i - 1] + kSlack) ladder_monotone = false;

        // Split sweep on windows of side r_cells, threshold kappa = lambda * r.
        const int r_cells = std::max(1, cfg.r_cells);
        const double r_real = r_cells * f.domain.cell_side();
        WindowFamily probe{FamilyKind::contained, r_cells, r_cells};
        const WindowIndexer probes(f.domain, probe);
        const double p_lemma = std::max(1.0 + 1e-6, 0.5 * (cfg.beta / f.domain.dim + cfg.beta / std::max(cfg.alpha, 1e-9)));

        std::vector<double> glob_osc, loc_osc, loc_bound_const;
        bool subadditive = true;
        for (double lambda : cfg.lambdas) {
            const int kappa = static_cast<int>(std::llround(lambda * r_cells));
            const SplitFields split = local_global_split(f, MaximalParams{cfg.alpha, WindowFamily{}}, kappa, cfg.threads);

            double worst_g = 0.0, worst_l = 0.0;
            for (std::uint64_t i = 0; i < probes.size(); ++i) {
                const AnalysisWindow w = probes.at(i);
                const double og = mean_oscillation(split.global_part, w, FamilyKind::contained, cp, 1.0).value;
                const double ol = mean_oscillation(split.local_part, w, FamilyKind::contained, cp, 1.0).value;
                const double of = mean_oscillation(mf, w, FamilyKind::contained, cp, 1.0).value;
                if (of > og + ol + 1e-9 * std::max(1.0, of)) subadditive = false;
                worst_g = std::max(worst_g, og);
                worst_l = std::max(worst_l, ol);
            }
            glob_osc.push_back(worst_g);
            loc_osc.push_back(worst_l);
            const double omega3 = oscillation_modulus(f, 3.0 * lambda * r_real, op, cfg.threads);
            const double bound = std::pow(lambda, cfg.beta / p_lemma) * std::pow(f.domain.side(), cfg.alpha) * omega3;
            loc_bound_const.push_back(bound > 0.0 ? worst_l / bound : 0.0);
        }
        bool lambda_monotone = true;
        for (std::size_t i = 1; i < glob_osc.size(); ++i)
            if (glob_osc[i] > glob_osc[i - 1] + kSlack) lambda_monotone = false;

        rep.per_function.push_back({{"spec", describe(spec)},
                                    {"omega_ladder", ladder},
                                    {"lambdas", cfg.lambdas},
                                    {"global_oscillation", glob_osc},
                                    {"local_oscillation", loc_osc},
                                    {"local_bound_constant", loc_bound_const},
                                    {"p_lemma", p_lemma}});
        rep.verdicts.push_back({"vmo ladder " + describe(spec), ladder_monotone ? "PASS" : "FAIL",
                                "omega(M f, 2^-j): " + fmt_series(ladder)});
        rep.verdicts.push_back({"global part lambda decay " + describe(spec), lambda_monotone ? "PASS" : "FAIL",
                                "oscillation per lambda: " + fmt_series(glob_osc)});
        rep.verdicts.push_back({"split subadditivity " + describe(spec), subadditive ? "PASS" : "FAIL",
                                "O(max) <= O(loc) + O(glob) on probe windows"});
    }
    return rep;
}

// -------------------------------------------------------------- nesting

Report run_nesting(const SuiteConfig& cfg) {
    Report rep;
    rep.suite = cfg.suite;
    if (!(cfg.beta <= cfg.beta2)) throw std::invalid_argument("requires beta (gamma) <= beta2");
    const std::vector<int> res = cfg.resolutions.empty() ? std::vector<int>{4, 5} : cfg.resolutions;
    const auto corpus = default_corpus(cfg);
    const double n = static_cast<double>(cfg.dim);

    std::vector<double> sup_bmo_ratio, sup_blo_ratio;
    bool finite = true;
    for (int m : res) {
        double sb = 0.0, sl = 0.0;
        for (const auto& spec0 : corpus) {
            const CorpusSpec spec = with_resolution(spec0, m);
            const GridFunction f = generate(spec);
            OscillationParams gamma_p{ContentParams{cfg.beta}, 1.0, WindowFamily{}};
            OscillationParams beta_p{ContentParams{cfg.beta2}, 1.0, WindowFamily{}};
            OscillationParams classical{ContentParams{n}, 1.0, WindowFamily{}};
            const double bmo_g = bmo_norm(f, gamma_p, cfg.threads).value;
            const double bmo_b = bmo_norm(f, beta_p, cfg.threads).value;
            const double blo_g = blo_norm(f, gamma_p, cfg.threads).value;
            const double blo_b = blo_norm(f, beta_p, cfg.threads).value;
            const double bmo_classical = bmo_norm(f, classical, cfg.threads).value;

            nlohmann::json entry{{"spec", describe(spec)}, {"m", m}};
            entry["norms"] = {{"bmo_gamma", bmo_g}, {"bmo_beta", bmo_b}, {"blo_gamma", blo_g}, {"blo_beta", blo_b}};
            if (bmo_g > 1e-12 && blo_g > 1e-12) {
                const double rb = bmo_b / bmo_g, rl = blo_b / blo_g;
                entry["ratios"] = {{"bmo_nesting", rb}, {"blo_nesting", rl}};
                if (!std::isfinite(rb) || !std::isfinite(rl)) finite = false;
                sb = std::max(sb, rb);
                sl = std::max(sl, rl);
            }

            nlohmann::json pj = nlohmann::json::array();
            for (double p : {1.0, 2.0, 4.0}) {
                OscillationParams bp{ContentParams{cfg.beta2}, p, WindowFamily{}};
                const double blo_p = blo_norm(f, bp, cfg.threads).value;
                const double bmo_p = bmo_norm(f, bp, cfg.threads).value;
                pj.push_back({{"p", p},
                              {"blo_p_over_blo", blo_b > 1e-12 ? blo_p / blo_b : 0.0},
                              {"bmo_p_over_p_bmo", bmo_classical > 1e-12 ? bmo_p / (p * bmo_classical) : 0.0}});
                if (!std::isfinite(blo_p) || !std::isfinite(bmo_p)) finite = false;
            }
            entry["p_ladder"] = pj;
            rep.per_function.push_back(entry);
        }
        sup_bmo_ratio.push_back(sb);
        sup_blo_ratio.push_back(sl);
    }
    rep.verdicts.push_back({"norm comparisons finite", finite ? "PASS" : "FAIL", ""});
    rep.verdicts.push_back(trend_verdict("BMO nesting constant stability", sup_bmo_ratio, false));
    rep.verdicts.push_back(trend_verdict("BLO nesting constant stability", sup_blo_ratio, false));
    return rep;
}

}  // namespace

std::vector<std::string> suite_names() {
    return {"jn_blo",          "blo_boundedness", "blo_boundedness_divergence", "beta_maximal_boundedness",
            "sawyer_lp",       "uniform_continuity", "vmo_preservation",        "nesting"};
}

SuiteConfig default_config(const std::string& suite) {
    SuiteConfig cfg;
    cfg.suite = suite;
    if (suite == "jn_blo") {
        cfg.resolutions = {6};
        cfg.beta = 0.5;
    } else if (suite == "blo_boundedness") {
        cfg.resolutions = {4, 5, 6, 7};
        cfg.alpha = 0.5;
        cfg.beta = 0.5;
    } else if (suite == "blo_boundedness_divergence") {
        cfg.dim = 2;
        cfg.resolutions = {2, 3, 4, 5};
        cfg.alpha = 0.0;
        cfg.beta = 1.0;  // the content dimension matching the singular hyperplane
        cfg.expect_divergence = true;
        CorpusSpec logd;
        logd.kind = CorpusKind::log_distance_hyperplane;
        logd.domain = BaseDomain(2, 0, 2);
        logd.hyperplane_dim = 1;
        cfg.corpus.push_back(logd);
    } else if (suite == "beta_maximal_boundedness") {
        cfg.resolutions = {3, 4, 5, 6};
        cfg.beta = 0.5;
        cfg.beta2 = 1.0;
    } else if (suite == "sawyer_lp") {
        cfg.resolutions = {4, 5, 6, 7};
        cfg.alpha = 0.25;
        cfg.p = 2.0;
    } else if (suite == "uniform_continuity") {
        cfg.resolutions = {4, 5, 6, 7};
        cfg.alpha = 0.5;
    } else if (suite == "vmo_preservation") {
        cfg.resolutions = {6};
        cfg.alpha = 0.25;
        cfg.beta = 0.75;
        cfg.r_cells = 2;
    } else if (suite == "nesting") {
        cfg.resolutions = {4, 5};
        cfg.beta = 0.5;
        cfg.beta2 = 1.0;
    } else {
        throw std::invalid_argument("unknown suite: " + suite);
    }
    return cfg;
}

nlohmann::json config_to_json(const SuiteConfig& cfg) {
    nlohmann::json j{{"suite", cfg.suite},
                     {"dim", cfg.dim},
                     {"root_level", cfg.root_level},
                     {"resolutions", cfg.resolutions},
                     {"beta", cfg.beta},
                     {"beta2", cfg.beta2},
                     {"alpha", cfg.alpha},
                     {"p", cfg.p},
                     {"lambdas", cfg.lambdas},
                     {"r_cells", cfg.r_cells},
                     {"seed", cfg.seed},
                     {"threads", cfg.threads},
                     {"expect_divergence", cfg.expect_divergence}};
    nlohmann::json specs = nlohmann::json::array();
    for (const auto& s : cfg.corpus) specs.push_back(corpus_spec_to_json(s));
    j["corpus"] = specs;
    return j;
}

void apply_config_json(SuiteConfig& cfg, const nlohmann::json& j) {
    cfg.dim = j.value("dim", cfg.dim);
    cfg.root_level = j.value("root_level", cfg.root_level);
    if (j.contains("resolutions")) cfg.resolutions = j.at("resolutions").get<std::vector<int>>();
    cfg.beta = j.value("beta", cfg.beta);
    cfg.beta2 = j.value("beta2", cfg.beta2);
    cfg.alpha = j.value("alpha", cfg.alpha);
    cfg.p = j.value("p", cfg.p);
    if (j.contains("lambdas")) cfg.lambdas = j.at("lambdas").get<std::vector<double>>();
    cfg.r_cells = j.value("r_cells", cfg.r_cells);
    cfg.seed = j.value("seed", cfg.seed);
    cfg.threads = j.value("threads", cfg.threads);
    cfg.expect_divergence = j.value("expect_divergence", cfg.expect_divergence);
    if (j.contains("corpus")) {
        cfg.corpus.clear();
        for (const auto& s : j.at("corpus")) cfg.corpus.push_back(corpus_spec_from_json(s));
    }
}

nlohmann::json Report::to_json(bool include_runtime) const {
    nlohmann::json v = nlohmann::json::array();
    for (const auto& x : verdicts) v.push_back({{"name", x.name}, {"verdict", x.verdict}, {"detail", x.detail}});
    nlohmann::json j{{"suite", suite}, {"config", config}, {"per_function", per_function}, {"verdicts", v}};
    j["runtime_ms"] = include_runtime ? runtime_ms : 0;
    if (!include_runtime && j["config"].contains("threads")) j["config"]["threads"] = 0;
    return j;
}

std::string Report::to_csv() const {
    std::ostringstream os;
    os.precision(12);
    if (suite == "jn_blo") {
        os << "function,side_cells,t,content\n";
        for (const auto& e : per_function) {
            if (!e.contains("windows")) continue;
            for (const auto& w : e.at("windows")) {
                const auto& ts = w.at("t");
                const auto& hs = w.at("content");
                for (std::size_t i = 0; i < ts.size(); ++i)
                    os << e.at("spec").get<std::string>() << "," << w.at("side_cells") << "," << ts[i].get<double>()
                       << "," << hs[i].get<double>() << "\n";
            }
        }
    } else if (suite == "vmo_preservation") {
        os << "function,j,omega\n";
        for (const auto& e : per_function) {
            if (!e.contains("omega_ladder")) continue;
            const auto& ladder = e.at("omega_ladder");
            for (std::size_t i = 0; i < ladder.size(); ++i)
                os << e.at("spec").get<std::string>() << "," << i << "," << ladder[i].get<double>() << "\n";
        }
    } else {
        os << "function,m,ratio\n";
        for (const auto& e : per_function) {
            if (!e.contains("ratios")) continue;
            os << e.at("spec").get<std::string>() << "," << e.value("m", 0) << ","
               << e.at("ratios").begin()->get<double>() << "\n";
        }
    }
    return os.str();
}

bool Report::ok() const {
    for (const auto& v : verdicts)
        if (v.verdict == "FAIL") return false;
    return true;
}

Report run_suite(const SuiteConfig& cfg) {
    const auto start = std::chrono::steady_clock::now();
    Report rep;
    if (cfg.suite == "jn_blo") {
        rep = run_jn_blo(cfg);
    } else if (cfg.suite == "blo_boundedness" || cfg.suite == "blo_boundedness_divergence") {
        rep = run_blo_boundedness(cfg);
    } else if (cfg.suite == "beta_maximal_boundedness") {
        rep = run_beta_maximal_boundedness(cfg);
    } else if (cfg.suite == "sawyer_lp") {
        rep = run_sawyer_lp(cfg);
    } else if (cfg.suite == "uniform_continuity") {
        rep = run_uniform_continuity(cfg);
    } else if (cfg.suite == "vmo_preservation") {
        rep = run_vmo_preservation(cfg);
    } else if (cfg.suite == "nesting") {
        rep = run_nesting(cfg);
    } else {
        throw std::invalid_argument("unknown suite: " + cfg.suite);
    }
    rep.config = config_to_json(cfg);
    rep.runtime_ms =
        std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
    return rep;
}

}  // namespace oscmax
