#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "affecta/behavior.hpp"
#include "affecta/context_map.hpp"
#include "affecta/environment.hpp"
#include "affecta/oracle.hpp"

namespace affecta {

struct Phase1Config {
  // 96 training measurements / 3 drives per sample / 2 rooms
  int updates_per_room = 16;
  std::vector<std::string> rooms{"living", "bedroom"};

  bool operator==(const Phase1Config&) const = default;
};

struct Phase2Config {
  int interactions_total = 72;
  int participants = 6;
  EpsilonSchedule epsilon;
  std::vector<std::string> rooms{"living", "bedroom"};

  bool operator==(const Phase2Config&) const = default;
};

struct ValidationConfig {
  std::string room = "middle";
  int attempts = 3;
  int measurements_per_attempt = 3;
  // Samples averaged when locating a room's region on the map for reports.
  int region_probe_samples = 5;

  bool operator==(const ValidationConfig&) const = default;
};

struct OutputConfig {
  std::string dir = "out";

  bool operator==(const OutputConfig&) const = default;
};

struct ExperimentConfig {
  std::uint64_t seed = 1;
  MapConfig map;
  std::vector<Room> rooms{{6.0, 5.0, "living"}, {2.0, 3.0, "bedroom"}, {4.0, 4.0, "middle"}};
  Phase1Config phase1;
  Phase2Config phase2;
  ValidationConfig validation;
  OracleParams oracle;
  RobotParams robot;
  OutputConfig output;

  /// Throws ConfigError if no room carries `label`.
  const Room& room(std::string_view label) const;

  void validate() const;

  bool operator==(const ExperimentConfig&) const = default;
};

/// Sectioned JSON form: {map, rooms, phase1, phase2, validation, oracle, robot, output}.
/// The master seed lives in map.seed.
nlohmann::json config_to_json(const ExperimentConfig& cfg);

/// Overlays `doc` onto the defaults; absent keys keep their default value.
/// Throws ConfigError on mistyped values or a config that fails validate().
ExperimentConfig config_from_json(const nlohmann::json& doc);

ExperimentConfig load_config(const std::filesystem::path& path);

}  // namespace affecta
