#include "oscmax/io.hpp"

#include <fstream>
#include <sstream>

namespace oscmax {

namespace {

bool has_suffix(const std::string& s, const std::string& suf) {
    return s.size() >= suf.size() && s.compare(s.size() - suf.size(), suf.size(), suf) == 0;
}

bool is_power_of_two(std::int64_t v) { return v > 0 && (v & (v - 1)) == 0; }

int log2_exact(std::int64_t v) {
    int m = 0;
    while ((std::int64_t(1) << m) < v) ++m;
    return m;
}

}  // namespace

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << text;
}

json grid_to_json(const GridFunction& f) {
    return json{{"dim", f.domain.dim},
                {"root_level", f.domain.root.level},
                {"resolution_m", f.domain.resolution},
                {"values", f.values}};
}

GridFunction grid_from_json(const json& j) {
    const int dim = j.at("dim").get<int>();
    const int root_level = j.value("root_level", 0);
    const int m = j.at("resolution_m").get<int>();
    BaseDomain dom(dim, root_level, m);
    GridFunction f(dom);
    const auto& vals = j.at("values");
    if (static_cast<std::int64_t>(vals.size()) != dom.total_cells())
        throw std::invalid_argument("grid values length must be 2^(dim*m) = " + std::to_string(dom.total_cells()));
    f.values = vals.get<std::vector<double>>();
    return f;
}

std::string grid_to_csv(const GridFunction& f) {
    std::ostringstream os;
    os.precision(17);
    const std::int64_t n = f.domain.cells_per_side();
    if (f.domain.dim == 1) {
        for (std::int64_t i = 0; i < n; ++i) os << f.values[static_cast<std::size_t>(i)] << "\n";
    } else if (f.domain.dim == 2) {
        for (std::int64_t r = 0; r < n; ++r) {
            for (std::int64_t c = 0; c < n; ++c) {
                if (c) os << ",";
                os << f.values[static_cast<std::size_t>(r * n + c)];
            }
            os << "\n";
        }
    } else {
        throw std::invalid_argument("csv grids support dim 1 or 2 only");
    }
    return os.str();
}

GridFunction grid_from_csv(const std::string& text, int root_level) {
    std::vector<std::vector<double>> rows;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<double> row;
        std::istringstream ls(line);
        std::string tok;
        while (std::getline(ls, tok, ',')) row.push_back(std::stod(tok));
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw std::invalid_argument("empty csv grid");
    const bool one_dim = rows[0].size() == 1;
    if (one_dim) {
        const std::int64_t n = static_cast<std::int64_t>(rows.size());
        if (!is_power_of_two(n)) throw std::invalid_argument("grid side must be a power of two, got " + std::to_string(n));
        BaseDomain dom(1, root_level, log2_exact(n));
        GridFunction f(dom);
        for (std::int64_t i = 0; i < n; ++i) f.values[static_cast<std::size_t>(i)] = rows[static_cast<std::size_t>(i)][0];
        return f;
    }
    const std::int64_t n = static_cast<std::int64_t>(rows.size());
    if (!is_power_of_two(n)) throw std::invalid_argument("grid side must be a power of two, got " + std::to_string(n));
    BaseDomain dom(2, root_level, log2_exact(n));
    GridFunction f(dom);
    for (std::int64_t r = 0; r < n; ++r) {
        if (static_cast<std::int64_t>(rows[static_cast<std::size_t>(r)].size()) != n)
            throw std::invalid_argument("csv grid must be square");
        for (std::int64_t c = 0; c < n; ++c)
            f.values[static_cast<std::size_t>(r * n + c)] = rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)];
    }
    return f;
}

GridFunction load_grid(const std::string& path) {
    const std::string text = read_file(path);
    if (has_suffix(path, ".csv")) return grid_from_csv(text);
    return grid_from_json(json::parse(text));
}

void save_grid(const GridFunction& f, const std::string& path) {
    if (has_suffix(path, ".csv"))
        write_file(path, grid_to_csv(f));
    else
        write_file(path, grid_to_json(f).dump(2) + "\n");
}

json cellset_to_json(const CellSet& e) {
    return json{{"dim", e.domain.dim},
                {"level", e.domain.root.level},
                {"resolution", e.domain.resolution},
                {"cells", e.indices()}};
}

CellSet cellset_from_json(const json& j) {
    BaseDomain dom(j.at("dim").get<int>(), j.value("level", 0), j.at("resolution").get<int>());
    return CellSet::from_indices(dom, j.at("cells").get<std::vector<std::int64_t>>());
}

std::string cellset_to_bitmap(const CellSet& e) {
    std::ostringstream os;
    const std::int64_t n = e.domain.cells_per_side();
    if (e.domain.dim == 1) {
        for (std::int64_t i = 0; i < n; ++i) os << (e.mask[static_cast<std::size_t>(i)] ? '1' : '0');
        os << "\n";
    } else if (e.domain.dim == 2) {
        for (std::int64_t r = 0; r < n; ++r) {
            for (std::int64_t c = 0; c < n; ++c) os << (e.mask[static_cast<std::size_t>(r * n + c)] ? '1' : '0');
            os << "\n";
        }
    } else {
        throw std::invalid_argument("bitmap cell sets support dim 1 or 2 only");
    }
    return os.str();
}

CellSet cellset_from_bitmap(const std::string& text, int root_level) {
    std::vector<std::string> rows;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
        if (!line.empty()) rows.push_back(line);
    }
    if (rows.empty()) throw std::invalid_argument("empty bitmap");
    const bool one_dim = rows.size() == 1;
    const std::int64_t n = static_cast<std::int64_t>(one_dim ? rows[0].size() : rows.size());
    if (!is_power_of_two(n)) throw std::invalid_argument("bitmap side must be a power of two, got " + std::to_string(n));
    BaseDomain dom(one_dim ? 1 : 2, root_level, log2_exact(n));
    CellSet e(dom);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (static_cast<std::int64_t>(rows[r].size()) != n) throw std::invalid_argument("ragged bitmap");
        for (std::int64_t c = 0; c < n; ++c)
            if (rows[r][static_cast<std::size_t>(c)] == '1') e.mask[static_cast<std::size_t>(r * n + c)] = 1;
    }
    return e;
}

CellSet load_cellset(const std::string& path) {
    const std::string text = read_file(path);
    if (has_suffix(path, ".json")) return cellset_from_json(json::parse(text));
    return cellset_from_bitmap(text);
}

void save_cellset(const CellSet& e, const std::string& path) {
    if (has_suffix(path, ".json"))
        write_file(path, cellset_to_json(e).dump(2) + "\n");
    else
        write_file(path, cellset_to_bitmap(e));
}

json corpus_spec_to_json(const CorpusSpec& spec) {
    json j{{"kind", corpus_kind_name(spec.kind)},
           {"dim", spec.domain.dim},
           {"root_level", spec.domain.root.level},
           {"m", spec.domain.resolution}};
    switch (spec.kind) {
        case CorpusKind::constant: j["value"] = spec.constant_value; break;
        case CorpusKind::indicator:
            j["anchor"] = std::vector<std::int64_t>(spec.indicator_window.anchor.begin(),
                                                    spec.indicator_window.anchor.begin() + spec.domain.dim);
            j["side"] = spec.indicator_window.side;
            break;
        case CorpusKind::sawtooth: j["frequency"] = spec.frequency; break;
        case CorpusKind::dyadic_martingale:
            j["seed"] = spec.seed;
            j["step"] = spec.step;
            break;
        case CorpusKind::log_distance_hyperplane: j["k"] = spec.hyperplane_dim; break;
        case CorpusKind::log_abs: break;
    }
    if (spec.truncation > 0.0) j["truncation"] = spec.truncation;
    return j;
}

CorpusSpec corpus_spec_from_json(const json& j) {
    CorpusSpec spec;
    spec.kind = corpus_kind_from_name(j.at("kind").get<std::string>());
    spec.domain = BaseDomain(j.value("dim", 1), j.value("root_level", 0), j.at("m").get<int>());
    spec.constant_value = j.value("value", 0.0);
    if (j.contains("anchor")) {
        const auto a = j.at("anchor").get<std::vector<std::int64_t>>();
        for (std::size_t d = 0; d < a.size() && d < kMaxDim; ++d) spec.indicator_window.anchor[d] = a[d];
    }
    spec.indicator_window.side = j.value("side", 1);
    spec.frequency = j.value("frequency", 1.0);
    spec.seed = j.value("seed", std::uint64_t(0));
    spec.step = j.value("step", 0.5);
    spec.hyperplane_dim = j.value("k", 0);
    spec.truncation = j.value("truncation", 0.0);
    return spec;
}

json norm_report_to_json(const NormReport& r) {
    json j{{"value", r.value}};
    if (r.has_witness) {
        j["witness"] = {{"anchor", std::vector<std::int64_t>(r.witness.anchor.begin(),
                                                             r.witness.anchor.begin() + r.witness.dim)},
                        {"side_cells", r.witness.side},
                        {"family", r.witness_kind == FamilyKind::contained ? "contained" : "centered"}};
        j["witness_c"] = r.witness_c;
    }
    return j;
}

}  // namespace oscmax
