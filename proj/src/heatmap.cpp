#include "affecta/heatmap.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>

#include "affecta/behavior.hpp"
#include "affecta/errors.hpp"

namespace affecta {

using nlohmann::json;

HeatmapLayer HeatmapLayer::parse(std::string_view text) {
  if (text == "behavior" || text == "top_behavior") return top_behavior();
  if (text == "attribute") return attribute(0);
  constexpr std::string_view prefix = "attribute:";
  if (text.starts_with(prefix)) {
    const std::string_view digits = text.substr(prefix.size());
    int index = 0;
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), index);
    if (ec == std::errc{} && ptr == digits.data() + digits.size() && index >= 0) return attribute(index);
  }
  throw ArgumentError("unknown heatmap layer '" + std::string(text) + "'");
}

std::string HeatmapLayer::name() const {
  return kind == Kind::top_behavior ? "behavior" : "attribute:" + std::to_string(attribute_index);
}

Heatmap export_heatmap(const ContextMap& map, HeatmapLayer layer) {
  if (layer.kind == HeatmapLayer::Kind::attribute &&
      (layer.attribute_index < 0 || layer.attribute_index >= map.attr_count())) {
    throw ArgumentError("heatmap attribute index " + std::to_string(layer.attribute_index) + " out of range");
  }
  Heatmap h{layer.name(), map.width(), map.height(), {}};
  h.values.reserve(map.cell_count());
  for (const Cell& c : map.cells()) {
    if (layer.kind == HeatmapLayer::Kind::attribute) {
      h.values.push_back(c.vector[static_cast<std::size_t>(layer.attribute_index)]);
    } else {
      h.values.push_back(top_behavior(c.behaviors));
    }
  }
  return h;
}

json heatmap_to_json(const Heatmap& h) {
  json rows = json::array();
  for (int r = 0; r < h.height; ++r) {
    json row = json::array();
    for (int c = 0; c < h.width; ++c) {
      const double v = h.values[static_cast<std::size_t>(r) * h.width + c];
      if (h.layer == "behavior") {
        row.push_back(static_cast<int>(v));
      } else {
        row.push_back(v);
      }
    }
    rows.push_back(std::move(row));
  }
  return {{"layer", h.layer}, {"width", h.width}, {"height", h.height}, {"values", std::move(rows)}};
}

Heatmap heatmap_from_json(const json& doc) {
  try {
    Heatmap h;
    h.layer = doc.at("layer").get<std::string>();
    h.width = doc.at("width").get<int>();
    h.height = doc.at("height").get<int>();
    const json& rows = doc.at("values");
    if (!rows.is_array() || rows.size() != static_cast<std::size_t>(h.height)) {
      throw DecodeError("heatmap: row count does not match height");
    }
    for (const json& row : rows) {
      if (!row.is_array() || row.size() != static_cast<std::size_t>(h.width)) {
        throw DecodeError("heatmap: row length does not match width");
      }
      for (const json& v : row) h.values.push_back(v.get<double>());
    }
    return h;
  } catch (const json::exception& e) {
    throw DecodeError(std::string("heatmap: ") + e.what());
  }
}

namespace {

using Rgb = std::array<unsigned char, 3>;

// 0 deep blue, 1 light blue, 2 yellow, 3 red
constexpr std::array<Rgb, kBehaviorCount> kBehaviorPalette{{
    {30, 40, 120},
    {120, 200, 240},
    {245, 215, 50},
    {210, 50, 40},
}};

Rgb color_of(const Heatmap& h, double v) {
  if (h.layer == "behavior") {
    const int id = std::clamp(static_cast<int>(v), 0, kBehaviorCount - 1);
    return kBehaviorPalette[static_cast<std::size_t>(id)];
  }
  const auto g = static_cast<unsigned char>(std::lround(std::clamp(v, 0.0, 1.0) * 255.0));
  return {g, g, g};
}

}  // namespace

std::string render_ppm(const Heatmap& h, int scale) {
  if (scale < 1) throw ArgumentError("render_ppm: scale must be >= 1");
  const int w = h.width * scale;
  const int hh = h.height * scale;
  std::string out = "P6\n" + std::to_string(w) + " " + std::to_string(hh) + "\n255\n";
  out.reserve(out.size() + static_cast<std::size_t>(w) * hh * 3);
  for (int y = 0; y < hh; ++y) {
    for (int x = 0; x < w; ++x) {
      const Rgb c = color_of(h, h.values[static_cast<std::size_t>(y / scale) * h.width + x / scale]);
      out.append(reinterpret_cast<const char*>(c.data()), c.size());
    }
  }
  return out;
}

std::string render_ascii(const Heatmap& h) {
  static constexpr std::string_view ramp = " .:-=+*#%@";
  std::string out;
  for (int r = 0; r < h.height; ++r) {
    for (int c = 0; c < h.width; ++c) {
      const double v = h.values[static_cast<std::size_t>(r) * h.width + c];
      if (h.layer == "behavior") {
        out += static_cast<char>('0' + static_cast<int>(v));
      } else {
        const auto k = static_cast<std::size_t>(std::lround(std::clamp(v, 0.0, 1.0) * (ramp.size() - 1)));
        out += ramp[k];
      }
    }
    out += '\n';
  }
  return out;
}

void write_heatmap(const Heatmap& h, const std::filesystem::path& dir, const std::string& stem, int scale) {
  std::filesystem::create_directories(dir);
  {
    std::ofstream js(dir / (stem + ".json"));
    if (!js) throw std::runtime_error("cannot write " + (dir / (stem + ".json")).string());
    js << heatmap_to_json(h).dump(2) << '\n';
  }
  std::ofstream ppm(dir / (stem + ".ppm"), std::ios::binary);
  if (!ppm) throw std::runtime_error("cannot write " + (dir / (stem + ".ppm")).string());
  ppm << render_ppm(h, scale);
}

}  // namespace affecta
