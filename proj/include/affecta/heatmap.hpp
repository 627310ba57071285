#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "affecta/context_map.hpp"

namespace affecta {

struct HeatmapLayer {
  enum class Kind { attribute, top_behavior };
  Kind kind = Kind::attribute;
  int attribute_index = 0;

  static HeatmapLayer attribute(int index) { return {Kind::attribute, index}; }
  static HeatmapLayer top_behavior() { return {Kind::top_behavior, 0}; }

  /// "attribute:<i>" or "behavior".
  static HeatmapLayer parse(std::string_view text);
  std::string name() const;

  bool operator==(const HeatmapLayer&) const = default;
};

/// A width×height grid of values in row-major order.
struct Heatmap {
  std::string layer;
  int width = 0;
  int height = 0;
  std::vector<double> values;

  bool operator==(const Heatmap&) const = default;
};

/// Attribute layers hold the raw [0,1] values, the behavior layer the top
/// behavior id of each cell.
Heatmap export_heatmap(const ContextMap& map, HeatmapLayer layer);

nlohmann::json heatmap_to_json(const Heatmap& h);
Heatmap heatmap_from_json(const nlohmann::json& doc);

/// Binary PPM (P6). Attribute layers use a grayscale ramp, the behavior
/// layer a fixed palette (1 light blue, 2 yellow). Each cell becomes a
/// scale×scale block.
std::string render_ppm(const Heatmap& h, int scale = 16);

/// One character per cell for terminals: digits for behavior ids, a
/// density ramp for attributes.
std::string render_ascii(const Heatmap& h);

/// Writes <stem>.json and <stem>.ppm under `dir`.
void write_heatmap(const Heatmap& h, const std::filesystem::path& dir, const std::string& stem, int scale = 16);

}  // namespace affecta
