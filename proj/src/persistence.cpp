#include "affecta/persistence.hpp"

#include <fstream>
#include <string>

#include "affecta/errors.hpp"

namespace affecta {

using nlohmann::json;

json encode_map(const ContextMap& map) {
  json cells = json::array();
  for (const Cell& c : map.cells()) {
    json behaviors = json::object();
    for (BehaviorId id = 0; id < kBehaviorCount; ++id) {
      behaviors[std::to_string(id)] = {{"pos", c.behaviors[id].weighted_positive},
                                       {"total", c.behaviors[id].weighted_total}};
    }
    cells.push_back({{"attrs", c.vector.attrs}, {"behaviors", std::move(behaviors)}});
  }
  return {
      {"version", kMapDocumentVersion},
      {"width", map.width()},
      {"height", map.height()},
      {"attr_count", map.attr_count()},
      {"weights", map.weights().weights},
      {"base_learning_rate", map.base_learning_rate()},
      {"neighborhood_radius", map.neighborhood_radius()},
      {"rng_seed", map.rng_seed()},
      {"cells", std::move(cells)},
  };
}

namespace {

const json& field(const json& obj, const char* key) {
  if (!obj.is_object()) throw DecodeError("map document: expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) throw DecodeError(std::string("map document: missing field '") + key + "'");
  return *it;
}

double number(const json& v, const char* what) {
  if (!v.is_number()) throw DecodeError(std::string("map document: '") + what + "' must be a number");
  return v.get<double>();
}

int integer(const json& v, const char* what) {
  if (!v.is_number_integer()) throw DecodeError(std::string("map document: '") + what + "' must be an integer");
  return v.get<int>();
}

std::vector<double> numbers(const json& v, const char* what) {
  if (!v.is_array()) throw DecodeError(std::string("map document: '") + what + "' must be an array");
  std::vector<double> out;
  out.reserve(v.size());
  for (const json& x : v) out.push_back(number(x, what));
  return out;
}

}  // namespace

ContextMap decode_map(const json& doc) {
  const json& version = field(doc, "version");
  if (!version.is_number_integer() || version.get<int>() != kMapDocumentVersion) {
    throw DecodeError("map document: unsupported version");
  }
  MapConfig cfg;
  cfg.width = integer(field(doc, "width"), "width");
  cfg.height = integer(field(doc, "height"), "height");
  cfg.attr_count = integer(field(doc, "attr_count"), "attr_count");
  cfg.weights.weights = numbers(field(doc, "weights"), "weights");
  cfg.base_learning_rate = number(field(doc, "base_learning_rate"), "base_learning_rate");
  cfg.neighborhood_radius = integer(field(doc, "neighborhood_radius"), "neighborhood_radius");
  const json& seed = field(doc, "rng_seed");
  if (!seed.is_number_unsigned() && !(seed.is_number_integer() && seed.get<std::int64_t>() >= 0)) {
    throw DecodeError("map document: 'rng_seed' must be a non-negative integer");
  }

  const json& cells_doc = field(doc, "cells");
  if (!cells_doc.is_array()) throw DecodeError("map document: 'cells' must be an array");
  std::vector<Cell> cells;
  cells.reserve(cells_doc.size());
  for (const json& c : cells_doc) {
    Cell cell;
    cell.vector.attrs = numbers(field(c, "attrs"), "attrs");
    const json& behaviors = field(c, "behaviors");
    if (!behaviors.is_object() || behaviors.size() != kBehaviorCount) {
      throw DecodeError("map document: 'behaviors' must hold exactly four entries");
    }
    for (BehaviorId id = 0; id < kBehaviorCount; ++id) {
      const json& s = field(behaviors, std::to_string(id).c_str());
      cell.behaviors[id].weighted_positive = number(field(s, "pos"), "pos");
      cell.behaviors[id].weighted_total = number(field(s, "total"), "total");
    }
    cells.push_back(std::move(cell));
  }
  try {
    return ContextMap(std::move(cfg), seed.get<std::uint64_t>(), std::move(cells));
  } catch (const ConfigError& e) {
    throw DecodeError(std::string("map document: ") + e.what());
  }
}

void save_map(const ContextMap& map, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out << encode_map(map).dump(2) << '\n';
}

ContextMap load_map(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw DecodeError(std::string("map document: ") + e.what());
  }
  return decode_map(doc);
}

std::uint64_t map_digest(const ContextMap& map) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : encode_map(map).dump()) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace affecta
