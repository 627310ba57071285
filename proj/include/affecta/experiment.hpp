#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "affecta/config.hpp"
#include "affecta/report.hpp"

namespace affecta {

/// Independent random streams derived from the master seed. The map's
/// initial values come from Rng(seed) itself (see new_map).
enum class Stream : std::uint32_t { phase1 = 1, phase2 = 2, roster = 3, validation = 4, probe = 5, session = 6, single_probe = 7 };

Rng make_stream(std::uint64_t seed, Stream stream);

struct MapRun {
  ContextMap map;
  RunReport report;
};

struct ValidationRun {
  BehaviorId choice = 0;
  RunReport report;
};

/// What the phase-2 loop asks the voter for each interaction.
struct VoteRequest {
  int t = 0;
  int participant = 0;
  const Room* room = nullptr;
  BehaviorPair pair;
};

/// Decides the winner of a presented pair. The default voter is the
/// calibrated participant roster.
using Voter = std::function<BehaviorId(const VoteRequest&, Rng&)>;

/// Explores every phase-1 room round-robin, one gather_context_sample →
/// update_map per visit.
MapRun run_phase1(const ExperimentConfig& cfg);

/// Pairwise-vote prioritization on a trained map. Rooms alternate and
/// participants rotate per interaction; epsilon follows the interaction index.
MapRun run_phase2(const ExperimentConfig& cfg, ContextMap map, const Voter& voter = {});

/// Phase 1 followed by phase 2, with a single combined report.
MapRun run_training(const ExperimentConfig& cfg);

/// Queries the map `attempts` times in the validation room and returns the
/// modal top behavior, lowest id on ties.
ValidationRun run_validation(const ExperimentConfig& cfg, const ContextMap& map);

/// Modal id, lowest on ties.
BehaviorId modal_choice(const std::vector<BehaviorId>& choices);

/// Averages `probe_samples` fresh samples from `room` and reports the BMU
/// with its stored attribute and fitness table.
RegionSummary locate_region(const ContextMap& map, const Room& room, const RobotParams& robot, int probe_samples,
                            Rng& rng);

/// Regions of the given rooms using the seed's probe stream, so the probes
/// are the same however the map was trained.
std::vector<RegionSummary> summarize_regions(const ExperimentConfig& cfg, const ContextMap& map,
                                             const std::vector<std::string>& rooms);

/// Behavior closest to / farthest from the room's preferred intensity.
BehaviorId expected_top(const Room& room);
BehaviorId expected_bottom(const Room& room);

/// Runs one report-producing CLI command: "explore" (phase 1), "train"
/// (phases 1+2) or "validate" (train, or load `input_map`, then validate).
MapRun run_command(const std::string& command, const ExperimentConfig& cfg,
                   const std::optional<std::string>& input_map = std::nullopt);

/// Regenerates a report's run from its embedded config and compares.
struct ReplayResult {
  bool identical = false;
  MapRun regenerated;
};
ReplayResult replay(const RunReport& report);

/// Per-seed raw outcome of the full pipeline.
struct SeedOutcome {
  std::uint64_t seed = 0;
  std::vector<RegionSummary> phase1_regions;  // after exploration
  std::vector<RegionSummary> phase2_regions;  // after prioritization
  // BMUs of single (non-averaged) fresh samples, one per phase-1 room
  std::vector<GridPos> single_sample_bmus;
  std::vector<double> single_sample_attributes;
  BehaviorId validation_choice = 0;
};

SeedOutcome evaluate_seed(const ExperimentConfig& cfg, std::uint64_t seed);

/// Runs seeds first_seed .. first_seed+runs-1 on `threads` workers; results
/// are ordered by seed regardless of scheduling.
std::vector<SeedOutcome> run_sweep(const ExperimentConfig& cfg, int runs, std::uint64_t first_seed = 1,
                                   int threads = 0);

struct SweepSummary {
  int runs = 0;
  int regions_distinct = 0;       // first two phase-1 rooms: ≥2 steps apart, attribute ordered by area
  int prioritized = 0;            // every phase-2 room: expected top and bottom behavior
  int validated = 0;              // among prioritized runs: validation between the trained optima
  nlohmann::json to_json() const;
};

SweepSummary summarize_sweep(const ExperimentConfig& cfg, const std::vector<SeedOutcome>& outcomes);
nlohmann::json seed_outcome_to_json(const SeedOutcome& o);

}  // namespace affecta
