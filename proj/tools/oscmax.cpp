#include <CLI11.hpp>
#include <iostream>

#include "oscmax/experiments.hpp"
#include "oscmax/io.hpp"
#include "oscmax/maximal.hpp"
#include "oscmax/oscillation.hpp"

using namespace oscmax;

namespace {

CellSet cellset_from_any(const std::string& path) {
    const std::string text = read_file(path);
    if (!text.empty() && text.find_first_not_of(" \t\r\n") != std::string::npos && text[text.find_first_not_of(" \t\r\n")] == '{') {
        const json j = json::parse(text);
        if (j.contains("cells")) return cellset_from_json(j);
        // grid file: the set is wherever the function is nonzero
        const GridFunction f = grid_from_json(j);
        CellSet e(f.domain);
        for (std::size_t i = 0; i < f.values.size(); ++i)
            if (f.values[i] != 0.0) e.mask[i] = 1;
        return e;
    }
    return cellset_from_bitmap(text);
}

WindowFamily family_from_name(const std::string& name) {
    if (name == "contained") return WindowFamily{FamilyKind::contained, 1, 0};
    if (name == "centered") return WindowFamily{FamilyKind::centered_clipped, 1, 0};
    throw CLI::ValidationError("--family must be contained or centered");
}

void emit(const std::string& text, const std::string& out) {
    if (out.empty())
        std::cout << text;
    else
        write_file(out, text);
}

json spec_json_from_arg(const std::string& arg) {
    if (!arg.empty() && arg.front() == '{') return json::parse(arg);
    return json::parse(read_file(arg));
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"oscmax: dyadic Hausdorff contents, Choquet integrals, maximal functions and capacitary oscillation norms on grid functions"};
    app.require_subcommand(1);

    std::string grid_path, out_path, family_name = "contained", format = "json";
    std::string spec_arg, suite, kind = "bmo", resolutions_arg;
    double beta = 0.5, beta2 = 1.0, alpha = 0.0, p = 1.0, radius = 0.0;
    double lambda = 0.0;
    int kappa = 0, threads = 1;
    std::uint64_t seed = 1;
    std::vector<std::int64_t> window_arg;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--grid", grid_path, "grid or cell-set file (.json/.csv/.txt)");
        cmd->add_option("--out", out_path, "output file (default stdout)");
        cmd->add_option("--threads", threads, "worker threads");
    };

    auto* c_content = app.add_subcommand("content", "dyadic Hausdorff content of a cell set, with optimal cover");
    add_common(c_content);
    c_content->add_option("--beta", beta, "content exponent")->required();

    auto* c_choquet = app.add_subcommand("choquet", "Choquet integral / Lp norm of a grid function");
    add_common(c_choquet);
    c_choquet->add_option("--beta", beta)->required();
    c_choquet->add_option("--p", p, "p >= 1: report the Lp Choquet norm");
    c_choquet->add_option("--window", window_arg, "anchor cells then side, e.g. --window 0 0 4");

    auto* c_maximal = app.add_subcommand("maximal", "fractional or beta-dimensional maximal field");
    add_common(c_maximal);
    c_maximal->add_option("--alpha", alpha, "fractional order (ignored with --beta)");
    double beta_maximal_arg = -1.0;
    c_maximal->add_option("--beta", beta_maximal_arg, "compute the beta-dimensional maximal function");
    c_maximal->add_option("--family", family_name, "contained|centered");
    c_maximal->add_option("--kappa", kappa, "side threshold in cells: also emit local/global split");

    auto* c_norm = app.add_subcommand("norm", "BMO^{beta,p} / BLO^{beta,p} norm with witness");
    add_common(c_norm);
    c_norm->add_option("--kind", kind, "bmo|blo");
    c_norm->add_option("--beta", beta)->required();
    c_norm->add_option("--p", p);
    c_norm->add_option("--family", family_name, "contained|centered");

    auto* c_modulus = app.add_subcommand("modulus", "oscillation modulus at scale r");
    add_common(c_modulus);
    c_modulus->add_option("--beta", beta)->required();
    c_modulus->add_option("--r", radius, "scale (real units)")->required();

    auto* c_gen = app.add_subcommand("gen", "generate a corpus function");
    add_common(c_gen);
    c_gen->add_option("--spec", spec_arg, "corpus spec: inline JSON or a file")->required();
    c_gen->add_option("--format", format, "json|csv");

    auto* c_verify = app.add_subcommand("verify", "run an experiment suite");
    add_common(c_verify);
    c_verify->add_option("--suite", suite, "suite name")->required();
    c_verify->add_option("--seed", seed);
    c_verify->add_option("--resolutions", resolutions_arg, "comma-separated list, e.g. 5,6");
    c_verify->add_option("--beta", beta);
    c_verify->add_option("--beta2", beta2);
    c_verify->add_option("--alpha", alpha);
    c_verify->add_option("--p", p);
    c_verify->add_option("--lambda", lambda, "single lambda for the split sweep");
    c_verify->add_option("--kappa", kappa, "probe window side in cells");
    c_verify->add_option("--spec", spec_arg, "extra config JSON merged over the suite defaults");
    c_verify->add_option("--format", format, "json|csv");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (c_content->parsed()) {
            const CellSet e = cellset_from_any(grid_path);
            const ContentResult r = content(e, ContentParams{beta});
            json cover = json::array();
            for (const auto& q : r.cover)
                cover.push_back({{"level", q.level},
                                 {"offset", std::vector<std::int64_t>(q.offset.begin(), q.offset.begin() + q.dim)}});
            std::ostringstream os;
            os.precision(12);
            os << r.value << "\n";
            if (!out_path.empty())
                write_file(out_path, json{{"value", r.value}, {"cover", cover}}.dump(2) + "\n");
            std::cout << os.str();
            return 0;
        }
        if (c_choquet->parsed()) {
            const GridFunction f = load_grid(grid_path);
            CellBox region = f.domain.full_box();
            if (!window_arg.empty()) {
                if (static_cast<int>(window_arg.size()) != f.domain.dim + 1)
                    throw std::invalid_argument("--window needs dim anchor coordinates plus side");
                Window w;
                for (int d = 0; d < f.domain.dim; ++d) w.anchor[d] = window_arg[static_cast<std::size_t>(d)];
                w.side = static_cast<int>(window_arg.back());
                if (!f.domain.window_inside(w)) throw std::invalid_argument("window outside domain");
                region = f.domain.window_box(w);
            }
            const double v = (p == 1.0) ? choquet_integral(f, region, ContentParams{beta})
                                        : choquet_lp_norm(f, region, p, ContentParams{beta});
            std::ostringstream os;
            os.precision(12);
            os << v << "\n";
            emit(os.str(), out_path);
            return 0;
        }
        if (c_maximal->parsed()) {
            const GridFunction f = load_grid(grid_path);
            const WindowFamily family = family_from_name(family_name);
            json out;
            if (kappa > 0) {
                const SplitFields s = local_global_split(f, MaximalParams{alpha, family}, kappa, threads);
                out = {{"local", grid_to_json(s.local_part)}, {"global", grid_to_json(s.global_part)}};
            } else if (beta_maximal_arg > 0.0) {
                out = grid_to_json(beta_maximal(f, ContentParams{beta_maximal_arg}, family, threads));
            } else {
                out = grid_to_json(fractional_maximal(f, MaximalParams{alpha, family}, threads));
            }
            if (!out_path.empty()) {
                write_file(out_path, out.dump(2) + "\n");
            } else if (out.contains("values")) {
                std::cout << out["values"].dump() << "\n";
            } else {
                std::cout << out.dump(2) << "\n";
            }
            return 0;
        }
        if (c_norm->parsed()) {
            const GridFunction f = load_grid(grid_path);
            OscillationParams params{ContentParams{beta}, p, family_from_name(family_name)};
            const NormReport r = (kind == "blo") ? blo_norm(f, params, threads) : bmo_norm(f, params, threads);
            emit(norm_report_to_json(r).dump(2) + "\n", out_path);
            return 0;
        }
        if (c_modulus->parsed()) {
            const GridFunction f = load_grid(grid_path);
            OscillationParams params{ContentParams{beta}, 1.0, WindowFamily{}};
            std::ostringstream os;
            os.precision(12);
            os << oscillation_modulus(f, radius, params, threads) << "\n";
            emit(os.str(), out_path);
            return 0;
        }
        if (c_gen->parsed()) {
            const CorpusSpec spec = corpus_spec_from_json(spec_json_from_arg(spec_arg));
            const GridFunction f = generate(spec);
            if (out_path.empty())
                std::cout << (format == "csv" ? grid_to_csv(f) : grid_to_json(f).dump(2) + "\n");
            else
                save_grid(f, out_path);
            return 0;
        }
        if (c_verify->parsed()) {
            SuiteConfig cfg = default_config(suite);
            cfg.seed = seed;
            cfg.threads = threads;
            if (!resolutions_arg.empty()) {
                cfg.resolutions.clear();
                std::istringstream rs(resolutions_arg);
                std::string tok;
                while (std::getline(rs, tok, ',')) cfg.resolutions.push_back(std::stoi(tok));
            }
            if (c_verify->count("--beta")) cfg.beta = beta;
            if (c_verify->count("--beta2")) cfg.beta2 = beta2;
            if (c_verify->count("--alpha")) cfg.alpha = alpha;
            if (c_verify->count("--p")) cfg.p = p;
            if (c_verify->count("--lambda")) cfg.lambdas = {lambda};
            if (c_verify->count("--kappa")) cfg.r_cells = kappa;
            if (!spec_arg.empty()) apply_config_json(cfg, spec_json_from_arg(spec_arg));
            const Report rep = run_suite(cfg);
            emit(format == "csv" ? rep.to_csv() : rep.to_json().dump(2) + "\n", out_path);
            for (const auto& v : rep.verdicts)
                std::cerr << "[" << v.verdict << "] " << v.name << (v.detail.empty() ? "" : ": " + v.detail) << "\n";
            return rep.ok() ? 0 : 1;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
