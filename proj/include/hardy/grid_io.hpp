#pragma once

#include <filesystem>
#include <string>

#include "hardy/grid.hpp"
#include "json.hpp"

namespace hardy {

// JSON layout: {"n", "cells_per_side", "h", "origin": [x, y], "values": [...]}
// with values flattened row-major. Doubles are written in shortest round-trip
// form, so write/read reproduces every bit.
nlohmann::json grid_spec_to_json(const GridSpec& spec);
GridSpec grid_spec_from_json(const nlohmann::json& j);

nlohmann::json to_json(const GridFunction& f);
GridFunction grid_function_from_json(const nlohmann::json& j);

// CSV layout: header "i,value" (1D) or "i,j,value" (2D) preceded by comment
// lines "# n=..,cells_per_side=..,h=..,origin=..,.."; one row per cell.
std::string to_csv(const GridFunction& f);
GridFunction grid_function_from_csv(const std::string& text);

/// Picks the format from the extension (.csv, otherwise JSON).
GridFunction load_grid_function(const std::filesystem::path& path);
void save_grid_function(const GridFunction& f, const std::filesystem::path& path);

/// Formats a double with 17 significant digits.
std::string format_double(double v);

}  // namespace hardy
