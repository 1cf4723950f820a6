#pragma once

#include <string>

#include <json.hpp>

#include "oscmax/content.hpp"
#include "oscmax/corpus.hpp"
#include "oscmax/grid.hpp"
#include "oscmax/oscillation.hpp"

namespace oscmax {

using json = nlohmann::json;

json grid_to_json(const GridFunction& f);
GridFunction grid_from_json(const json& j);
std::string grid_to_csv(const GridFunction& f);
GridFunction grid_from_csv(const std::string& text, int root_level = 0);

/// Loads .json, or .csv (1D column / 2D matrix), by extension.
GridFunction load_grid(const std::string& path);
void save_grid(const GridFunction& f, const std::string& path);

json cellset_to_json(const CellSet& e);
CellSet cellset_from_json(const json& j);
std::string cellset_to_bitmap(const CellSet& e);
CellSet cellset_from_bitmap(const std::string& text, int root_level = 0);
CellSet load_cellset(const std::string& path);
void save_cellset(const CellSet& e, const std::string& path);

json corpus_spec_to_json(const CorpusSpec& spec);
CorpusSpec corpus_spec_from_json(const json& j);

json norm_report_to_json(const NormReport& r);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& text);

}  // namespace oscmax
