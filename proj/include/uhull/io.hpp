#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "uhull/geometry.hpp"
#include "uhull/mc_index.hpp"
#include "uhull/model.hpp"
#include "uhull/probability_map.hpp"

namespace uhull::io {

// {"dimension": d, "model": "unipoint" | "multipoint",
//  "points": [{"sites": [{"coords": ["1/2", "3"], "prob": "0.25"}]}]}
// Coordinates and probabilities are exact decimal or fraction strings;
// integer JSON numbers are accepted too. Throws InvalidInput on malformed
// documents and the model's own validation errors otherwise.
UncertainPointSet parse_model(std::string_view json_text);
std::string dump_model(const UncertainPointSet& model);

// {"queries": [["0", "0"], ...]}; every query must have `dimension` coordinates.
std::vector<Point> parse_queries(std::string_view json_text, std::size_t dimension);

// Versioned documents holding the model and the stored results; loading
// rebuilds the derived structures without recomputing probabilities or
// resampling.
std::string dump_map(const ProbabilityMap& map);
ProbabilityMap load_map(std::string_view json_text);

std::string dump_mc_index(const MonteCarloIndex& index);
MonteCarloIndex load_mc_index(std::string_view json_text);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view text);

}  // namespace uhull::io
