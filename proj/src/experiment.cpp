#include "affecta/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

#include "affecta/errors.hpp"
#include "affecta/persistence.hpp"

namespace affecta {

Rng make_stream(std::uint64_t seed, Stream stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream)};
  return Rng(seq);
}

MapRun run_phase1(const ExperimentConfig& cfg) {
  cfg.validate();
  MapRun run{new_map(cfg.map, cfg.seed), RunReport{}};
  run.report.command = "explore";
  run.report.config = cfg;
  Rng rng = make_stream(cfg.seed, Stream::phase1);
  int step = 0;
  for (int u = 0; u < cfg.phase1.updates_per_room; ++u) {
    for (const std::string& label : cfg.phase1.rooms) {
      const ContextVector sample = gather_context_sample(cfg.room(label), cfg.robot, rng);
      const GridPos bmu = update_map(run.map, sample);
      run.report.updates.push_back({step++, label, sample, bmu});
    }
  }
  run.report.regions = summarize_regions(cfg, run.map, cfg.phase1.rooms);
  run.report.map_digest = map_digest(run.map);
  return run;
}

MapRun run_phase2(const ExperimentConfig& cfg, ContextMap map, const Voter& voter) {
  cfg.validate();
  MapRun run{std::move(map), RunReport{}};
  run.report.command = "train";
  run.report.config = cfg;
  Rng rng = make_stream(cfg.seed, Stream::phase2);
  const std::vector<Participant> roster =
      make_roster(cfg.phase2.participants, cfg.oracle, make_stream(cfg.seed, Stream::roster)());
  const auto& rooms = cfg.phase2.rooms;
  for (int t = 0; t < cfg.phase2.interactions_total; ++t) {
    const std::string& label = rooms[static_cast<std::size_t>(t) % rooms.size()];
    const Room& room = cfg.room(label);
    const int who = t % cfg.phase2.participants;
    const ContextVector sample = gather_context_sample(room, cfg.robot, rng);
    const GridPos bmu = best_matching_unit(run.map, sample);
    const double eps = epsilon(cfg.phase2.epsilon, t);
    const BehaviorPair pair = select_pair(run.map.at(bmu).behaviors, eps, rng);
    BehaviorId winner;
    if (voter) {
      winner = voter(VoteRequest{t, who, &room, pair}, rng);
      if (winner != pair.first && winner != pair.second) {
        throw ArgumentError("voter returned a behavior outside the presented pair");
      }
    } else {
      winner = choose(roster[static_cast<std::size_t>(who)], room, pair.first, pair.second, rng);
    }
    const BehaviorId loser = winner == pair.first ? pair.second : pair.first;
    apply_feedback(run.map, bmu, winner, loser);
    run.report.votes.push_back({t, label, who, sample, bmu, eps, pair, winner});
  }
  run.report.regions = summarize_regions(cfg, run.map, rooms);
  run.report.map_digest = map_digest(run.map);
  return run;
}

MapRun run_training(const ExperimentConfig& cfg) {
  MapRun p1 = run_phase1(cfg);
  MapRun p2 = run_phase2(cfg, std::move(p1.map));
  p2.report.updates = std::move(p1.report.updates);
  return p2;
}

BehaviorId modal_choice(const std::vector<BehaviorId>& choices) {
  if (choices.empty()) throw ArgumentError("modal_choice: no choices");
  std::array<int, kBehaviorCount> counts{};
  for (BehaviorId id : choices) {
    if (!is_valid_behavior(id)) throw ArgumentError("modal_choice: behavior id out of range");
    ++counts[static_cast<std::size_t>(id)];
  }
  return static_cast<BehaviorId>(std::max_element(counts.begin(), counts.end()) - counts.begin());
}

ValidationRun run_validation(const ExperimentConfig& cfg, const ContextMap& map) {
  cfg.validate();
  ValidationRun run;
  run.report.command = "validate";
  run.report.config = cfg;
  Rng rng = make_stream(cfg.seed, Stream::validation);
  const Room& room = cfg.room(cfg.validation.room);
  std::vector<BehaviorId> choices;
  for (int a = 0; a < cfg.validation.attempts; ++a) {
    const ContextVector sample = gather_context_sample(room, cfg.robot, rng, cfg.validation.measurements_per_attempt);
    const GridPos bmu = best_matching_unit(map, sample);
    const BehaviorId choice = top_behavior(map.at(bmu).behaviors);
    run.report.validation.push_back({sample, bmu, choice});
    choices.push_back(choice);
  }
  run.choice = modal_choice(choices);
  run.report.validation_choice = run.choice;
  run.report.regions = summarize_regions(cfg, map, {cfg.validation.room});
  run.report.map_digest = map_digest(map);
  return run;
}

namespace {

std::uint64_t label_key(const std::string& label) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : label) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace

RegionSummary locate_region(const ContextMap& map, const Room& room, const RobotParams& robot, int probe_samples,
                            Rng& rng) {
  if (probe_samples < 1) throw ArgumentError("locate_region: probe_samples must be >= 1");
  ContextVector probe{std::vector<double>(static_cast<std::size_t>(map.attr_count()), 0.0)};
  for (int i = 0; i < probe_samples; ++i) {
    const ContextVector s = gather_context_sample(room, robot, rng);
    if (s.size() != probe.size()) throw ArgumentError("locate_region: sample length does not match map");
    for (std::size_t k = 0; k < s.size(); ++k) probe[k] += s[k];
  }
  for (double& v : probe.attrs) v /= probe_samples;

  RegionSummary out;
  out.room = room.label;
  out.probe = probe;
  out.bmu = best_matching_unit(map, probe);
  const Cell& cell = map.at(out.bmu);
  out.attribute = cell.vector[0];
  out.fitness = fitness_table(cell.behaviors);
  out.top = top_behavior(cell.behaviors);
  return out;
}

std::vector<RegionSummary> summarize_regions(const ExperimentConfig& cfg, const ContextMap& map,
                                             const std::vector<std::string>& rooms) {
  std::vector<RegionSummary> out;
  for (const std::string& label : rooms) {
    // keyed by label so a room's probe does not depend on which other rooms are listed
    Rng rng = make_stream(cfg.seed ^ label_key(label), Stream::probe);
    out.push_back(locate_region(map, cfg.room(label), cfg.robot, cfg.validation.region_probe_samples, rng));
  }
  return out;
}

BehaviorId expected_top(const Room& room) {
  const double ideal = preferred_intensity(room);
  BehaviorId best = 0;
  for (BehaviorId id = 1; id < kBehaviorCount; ++id) {
    if (std::abs(id - ideal) < std::abs(best - ideal)) best = id;
  }
  return best;
}

BehaviorId expected_bottom(const Room& room) {
  const double ideal = preferred_intensity(room);
  BehaviorId worst = 0;
  for (BehaviorId id = 1; id < kBehaviorCount; ++id) {
    if (std::abs(id - ideal) > std::abs(worst - ideal)) worst = id;
  }
  return worst;
}

MapRun run_command(const std::string& command, const ExperimentConfig& cfg,
                   const std::optional<std::string>& input_map) {
  if (command == "explore") return run_phase1(cfg);
  if (command == "train") return run_training(cfg);
  if (command == "validate") {
    if (input_map) {
      ContextMap map = load_map(*input_map);
      ValidationRun v = run_validation(cfg, map);
      v.report.input_map = input_map;
      return {std::move(map), std::move(v.report)};
    }
    MapRun trained = run_training(cfg);
    ValidationRun v = run_validation(cfg, trained.map);
    v.report.updates = std::move(trained.report.updates);
    v.report.votes = std::move(trained.report.votes);
    return {std::move(trained.map), std::move(v.report)};
  }
  throw ArgumentError("unknown command '" + command + "'");
}

ReplayResult replay(const RunReport& report) {
  ReplayResult out{false, run_command(report.command, report.config, report.input_map)};
  out.identical = out.regenerated.report == report;
  return out;
}

SeedOutcome evaluate_seed(const ExperimentConfig& base, std::uint64_t seed) {
  ExperimentConfig cfg = base;
  cfg.seed = seed;
  SeedOutcome out;
  out.seed = seed;

  MapRun p1 = run_phase1(cfg);
  out.phase1_regions = p1.report.regions;
  Rng single = make_stream(seed, Stream::single_probe);
  for (const std::string& label : cfg.phase1.rooms) {
    const ContextVector s = gather_context_sample(cfg.room(label), cfg.robot, single);
    const GridPos bmu = best_matching_unit(p1.map, s);
    out.single_sample_bmus.push_back(bmu);
    out.single_sample_attributes.push_back(p1.map.at(bmu).vector[0]);
  }

  MapRun p2 = run_phase2(cfg, std::move(p1.map));
  out.phase2_regions = p2.report.regions;
  out.validation_choice = run_validation(cfg, p2.map).choice;
  return out;
}

std::vector<SeedOutcome> run_sweep(const ExperimentConfig& cfg, int runs, std::uint64_t first_seed, int threads) {
  if (runs < 0) throw ArgumentError("run_sweep: runs must be >= 0");
  std::vector<SeedOutcome> results(static_cast<std::size_t>(runs));
  if (threads <= 0) threads = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  threads = std::min(threads, std::max(runs, 1));

  std::atomic<int> next{0};
  std::exception_ptr failure;
  std::mutex failure_mu;
  {
    std::vector<std::jthread> workers;
    for (int w = 0; w < threads; ++w) {
      workers.emplace_back([&] {
        for (int i = next++; i < runs; i = next++) {
          try {
            results[static_cast<std::size_t>(i)] = evaluate_seed(cfg, first_seed + static_cast<std::uint64_t>(i));
          } catch (...) {
            std::lock_guard lock(failure_mu);
            if (!failure) failure = std::current_exception();
          }
        }
      });
    }
  }
  if (failure) std::rethrow_exception(failure);
  return results;
}

namespace {

bool prioritized(const ExperimentConfig& cfg, const RegionSummary& r) {
  const Room& room = cfg.room(r.room);
  const BehaviorId bottom = expected_bottom(room);
  if (r.top != expected_top(room)) return false;
  for (BehaviorId id = 0; id < kBehaviorCount; ++id) {
    if (id != bottom && !(r.fitness[bottom] < r.fitness[id])) return false;
  }
  return true;
}

}  // namespace

SweepSummary summarize_sweep(const ExperimentConfig& cfg, const std::vector<SeedOutcome>& outcomes) {
  SweepSummary s;
  s.runs = static_cast<int>(outcomes.size());
  for (const SeedOutcome& o : outcomes) {
    if (o.phase1_regions.size() >= 2) {
      const RegionSummary& a = o.phase1_regions[0];
      const RegionSummary& b = o.phase1_regions[1];
      const double area_a = cfg.room(a.room).area();
      const double area_b = cfg.room(b.room).area();
      const bool ordered = area_a > area_b ? a.attribute > b.attribute : b.attribute > a.attribute;
      if (grid_step_distance(a.bmu, b.bmu) >= 2 && ordered) ++s.regions_distinct;
    }
    const bool ok = !o.phase2_regions.empty() &&
                    std::all_of(o.phase2_regions.begin(), o.phase2_regions.end(),
                                [&](const RegionSummary& r) { return prioritized(cfg, r); });
    if (!ok) continue;
    ++s.prioritized;
    BehaviorId lo = kBehaviorCount, hi = -1;
    for (const RegionSummary& r : o.phase2_regions) {
      lo = std::min(lo, r.top);
      hi = std::max(hi, r.top);
    }
    if (o.validation_choice >= lo && o.validation_choice <= hi) ++s.validated;
  }
  return s;
}

nlohmann::json SweepSummary::to_json() const {
  auto rate = [&](int n, int d) { return d > 0 ? static_cast<double>(n) / d : 0.0; };
  return {{"runs", runs},
          {"regions_distinct", regions_distinct},
          {"regions_distinct_rate", rate(regions_distinct, runs)},
          {"prioritized", prioritized},
          {"prioritized_rate", rate(prioritized, runs)},
          {"validated", validated},
          {"validated_rate", rate(validated, prioritized)}};
}

nlohmann::json seed_outcome_to_json(const SeedOutcome& o) {
  auto regions = [](const std::vector<RegionSummary>& rs) {
    nlohmann::json out = nlohmann::json::array();
    for (const RegionSummary& r : rs) {
      out.push_back({{"room", r.room},
                     {"bmu", {{"col", r.bmu.col}, {"row", r.bmu.row}}},
                     {"attribute", r.attribute},
                     {"fitness", r.fitness},
                     {"top", r.top}});
    }
    return out;
  };
  return {{"seed", o.seed},
          {"phase1_regions", regions(o.phase1_regions)},
          {"phase2_regions", regions(o.phase2_regions)},
          {"validation_choice", o.validation_choice}};
}

}  // namespace affecta
