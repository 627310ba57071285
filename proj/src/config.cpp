#include "affecta/config.hpp"

#include <fstream>
#include <set>

#include "affecta/errors.hpp"

namespace affecta {

using nlohmann::json;

const Room& ExperimentConfig::room(std::string_view label) const {
  for (const Room& r : rooms) {
    if (r.label == label) return r;
  }
  throw ConfigError("unknown room '" + std::string(label) + "'");
}

void ExperimentConfig::validate() const {
  map.validate();
  robot.validate();
  oracle.validate();
  phase2.epsilon.validate();
  std::set<std::string> labels;
  for (const Room& r : rooms) {
    r.validate();
    if (r.label.empty()) throw ConfigError("every room needs a label");
    if (!labels.insert(r.label).second) throw ConfigError("duplicate room label '" + r.label + "'");
  }
  if (phase1.updates_per_room < 0) throw ConfigError("phase1.updates_per_room must be >= 0");
  if (phase2.interactions_total < 0) throw ConfigError("phase2.interactions_total must be >= 0");
  if (phase2.participants < 1) throw ConfigError("phase2.participants must be >= 1");
  if (validation.attempts < 1) throw ConfigError("validation.attempts must be >= 1");
  if (validation.measurements_per_attempt < 1) throw ConfigError("validation.measurements_per_attempt must be >= 1");
  if (validation.region_probe_samples < 1) throw ConfigError("validation.region_probe_samples must be >= 1");
  if (phase1.rooms.empty() && phase1.updates_per_room > 0) throw ConfigError("phase1.rooms must not be empty");
  if (phase2.rooms.empty() && phase2.interactions_total > 0) throw ConfigError("phase2.rooms must not be empty");
  for (const auto& r : phase1.rooms) room(r);
  for (const auto& r : phase2.rooms) room(r);
  room(validation.room);
}

json config_to_json(const ExperimentConfig& cfg) {
  json rooms = json::array();
  for (const Room& r : cfg.rooms) rooms.push_back({{"label", r.label}, {"width", r.width}, {"length", r.length}});
  return {
      {"map",
       {{"width", cfg.map.width},
        {"height", cfg.map.height},
        {"attr_count", cfg.map.attr_count},
        {"weights", cfg.map.weights.weights},
        {"base_learning_rate", cfg.map.base_learning_rate},
        {"neighborhood_radius", cfg.map.neighborhood_radius},
        {"seed", cfg.seed}}},
      {"rooms", std::move(rooms)},
      {"phase1", {{"updates_per_room", cfg.phase1.updates_per_room}, {"rooms", cfg.phase1.rooms}}},
      {"phase2",
       {{"interactions_total", cfg.phase2.interactions_total},
        {"participants", cfg.phase2.participants},
        {"epsilon",
         {{"initial", cfg.phase2.epsilon.initial},
          {"decay", cfg.phase2.epsilon.decay},
          {"floor", cfg.phase2.epsilon.floor}}},
        {"rooms", cfg.phase2.rooms}}},
      {"validation",
       {{"room", cfg.validation.room},
        {"attempts", cfg.validation.attempts},
        {"measurements_per_attempt", cfg.validation.measurements_per_attempt},
        {"region_probe_samples", cfg.validation.region_probe_samples}}},
      {"oracle", {{"temperature", cfg.oracle.temperature}, {"bias_sigma", cfg.oracle.bias_sigma}}},
      {"robot",
       {{"speed", cfg.robot.speed},
        {"t_max", cfg.robot.t_max},
        {"min_drive", cfg.robot.min_drive},
        {"noise_sigma", cfg.robot.noise_sigma}}},
      {"output", {{"dir", cfg.output.dir}}},
  };
}

namespace {

const json* section(const json& doc, const char* name) {
  auto it = doc.find(name);
  if (it == doc.end()) return nullptr;
  if (!it->is_object()) throw ConfigError(std::string("config section [") + name + "] must be an object");
  return &*it;
}

template <typename T>
void read(const json* obj, const char* key, T& out) {
  if (obj == nullptr) return;
  auto it = obj->find(key);
  if (it == obj->end()) return;
  try {
    if constexpr (std::is_floating_point_v<T>) {
      if (!it->is_number()) throw ConfigError(std::string("config key '") + key + "' must be a number");
    } else if constexpr (std::is_integral_v<T>) {
      if (!it->is_number_integer()) throw ConfigError(std::string("config key '") + key + "' must be an integer");
    }
    out = it->get<T>();
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config key '") + key + "': " + e.what());
  }
}

}  // namespace

ExperimentConfig config_from_json(const json& doc) {
  if (!doc.is_object()) throw ConfigError("config document must be an object");
  ExperimentConfig cfg;

  const json* map = section(doc, "map");
  read(map, "width", cfg.map.width);
  read(map, "height", cfg.map.height);
  read(map, "attr_count", cfg.map.attr_count);
  read(map, "weights", cfg.map.weights.weights);
  read(map, "base_learning_rate", cfg.map.base_learning_rate);
  read(map, "neighborhood_radius", cfg.map.neighborhood_radius);
  read(map, "seed", cfg.seed);
  if (map != nullptr && map->contains("attr_count") && !map->contains("weights")) {
    cfg.map.weights.weights.assign(static_cast<std::size_t>(std::max(cfg.map.attr_count, 0)), 1.0);
  }

  if (auto it = doc.find("rooms"); it != doc.end()) {
    if (!it->is_array()) throw ConfigError("config section [rooms] must be an array");
    cfg.rooms.clear();
    for (const json& r : *it) {
      if (!r.is_object()) throw ConfigError("each room must be an object");
      Room room;
      read(&r, "label", room.label);
      read(&r, "width", room.width);
      read(&r, "length", room.length);
      cfg.rooms.push_back(room);
    }
  }

  const json* p1 = section(doc, "phase1");
  read(p1, "updates_per_room", cfg.phase1.updates_per_room);
  read(p1, "rooms", cfg.phase1.rooms);

  const json* p2 = section(doc, "phase2");
  read(p2, "interactions_total", cfg.phase2.interactions_total);
  read(p2, "participants", cfg.phase2.participants);
  read(p2, "rooms", cfg.phase2.rooms);
  if (p2 != nullptr) {
    const json* eps = section(*p2, "epsilon");
    read(eps, "initial", cfg.phase2.epsilon.initial);
    read(eps, "decay", cfg.phase2.epsilon.decay);
    read(eps, "floor", cfg.phase2.epsilon.floor);
  }

  const json* val = section(doc, "validation");
  read(val, "room", cfg.validation.room);
  read(val, "attempts", cfg.validation.attempts);
  read(val, "measurements_per_attempt", cfg.validation.measurements_per_attempt);
  read(val, "region_probe_samples", cfg.validation.region_probe_samples);

  const json* oracle = section(doc, "oracle");
  read(oracle, "temperature", cfg.oracle.temperature);
  read(oracle, "bias_sigma", cfg.oracle.bias_sigma);

  const json* robot = section(doc, "robot");
  read(robot, "speed", cfg.robot.speed);
  read(robot, "t_max", cfg.robot.t_max);
  read(robot, "min_drive", cfg.robot.min_drive);
  read(robot, "noise_sigma", cfg.robot.noise_sigma);

  const json* out = section(doc, "output");
  read(out, "dir", cfg.output.dir);

  cfg.validate();
  return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config " + path.string());
  try {
    return config_from_json(json::parse(in));
  } catch (const json::parse_error& e) {
    throw ConfigError("config " + path.string() + ": " + e.what());
  }
}

}  // namespace affecta
