#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "affecta/behavior.hpp"
#include "affecta/config.hpp"

namespace affecta {

struct UpdateEvent {
  int step = 0;
  std::string room;
  ContextVector sample;
  GridPos bmu;

  bool operator==(const UpdateEvent&) const = default;
};

struct VoteEvent {
  int t = 0;
  std::string room;
  int participant = 0;
  ContextVector sample;
  GridPos bmu;
  double epsilon = 0.0;
  BehaviorPair pair;
  BehaviorId winner = 0;

  bool operator==(const VoteEvent&) const = default;
};

struct ValidationAttempt {
  ContextVector sample;
  GridPos bmu;
  BehaviorId choice = 0;

  bool operator==(const ValidationAttempt&) const = default;
};

/// Where a room lands on the map and what the map prefers there.
struct RegionSummary {
  std::string room;
  ContextVector probe;
  GridPos bmu;
  double attribute = 0.0;
  std::array<double, kBehaviorCount> fitness{};
  BehaviorId top = 0;

  bool operator==(const RegionSummary&) const = default;
};

/// Everything a run did, in order. Together with the embedded config it is
/// enough to regenerate the run and check the result bit for bit.
struct RunReport {
  std::string command;  // explore | train | validate
  ExperimentConfig config;
  // set when a validate run was given a persisted map instead of training one
  std::optional<std::string> input_map;
  std::vector<UpdateEvent> updates;
  std::vector<VoteEvent> votes;
  std::vector<ValidationAttempt> validation;
  std::optional<BehaviorId> validation_choice;
  std::vector<RegionSummary> regions;
  std::optional<std::uint64_t> map_digest;

  bool operator==(const RunReport&) const = default;
};

nlohmann::json report_to_json(const RunReport& report);
RunReport report_from_json(const nlohmann::json& doc);

void save_report(const RunReport& report, const std::filesystem::path& path);
RunReport load_report(const std::filesystem::path& path);

}  // namespace affecta
