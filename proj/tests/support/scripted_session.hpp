#pragma once

// Randomized scripted sessions: the same script is driven once through the
// service request API (ServiceCore::handle with JSON text) and once by direct
// library calls, and the resulting maps are compared.

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "affecta/experiment.hpp"
#include "affecta/service.hpp"
#include "support/generators.hpp"

namespace affecta::testing {

struct ScriptedSession {
  std::uint64_t seed = 1;
  Room room;
  MapConfig map;
  RobotParams robot;
  EpsilonSchedule schedule;
  int rounds = 0;
  // per round: vote after measuring?  out-of-order probes are mixed in
  std::vector<bool> vote_round;
  std::uint64_t voter_seed = 0;
  double probe_rate = 0.2;
};

inline ScriptedSession random_script(Rng& rng) {
  ScriptedSession s;
  s.seed = rng();
  s.room = {uniform(rng, 1.5, 8.0), uniform(rng, 1.5, 8.0), "scripted"};
  s.map.width = uniform_int(rng, 2, 10);
  s.map.height = uniform_int(rng, 2, 10);
  s.map.base_learning_rate = uniform(rng, 0.1, 1.0);
  s.map.neighborhood_radius = uniform_int(rng, 0, 4);
  s.robot.noise_sigma = coin(rng, 0.2) ? 0.0 : uniform(rng, 0.0, 1.0);
  s.schedule = random_schedule(rng);
  s.rounds = uniform_int(rng, 1, 40);
  for (int i = 0; i < s.rounds; ++i) s.vote_round.push_back(coin(rng, 0.75));
  s.voter_seed = rng();
  return s;
}

inline nlohmann::json start_body(const ScriptedSession& s) {
  return {{"room", {{"width", s.room.width}, {"length", s.room.length}, {"label", s.room.label}}},
          {"seed", s.seed},
          {"map",
           {{"width", s.map.width},
            {"height", s.map.height},
            {"base_learning_rate", s.map.base_learning_rate},
            {"neighborhood_radius", s.map.neighborhood_radius}}},
          {"robot", {{"noise_sigma", s.robot.noise_sigma}}},
          {"epsilon", {{"initial", s.schedule.initial}, {"decay", s.schedule.decay}, {"floor", s.schedule.floor}}}};
}

struct ScriptOutcome {
  bool ok = true;
  std::string detail;
  std::optional<ContextMap> service_map;
  std::optional<ContextMap> direct_map;
  int votes = 0;

  void fail(const std::string& why) {
    if (ok) detail = why;
    ok = false;
  }
};

/// Drives one script against `core` and the library side by side.
inline ScriptOutcome run_script(ServiceCore& core, const ScriptedSession& s) {
  ScriptOutcome out;
  auto call = [&](const char* method, const std::string& path, const nlohmann::json& body) {
    return core.handle(method, path, body.is_null() ? std::string() : body.dump());
  };

  const ServiceResponse started = call("POST", "/session", start_body(s));
  if (started.status != 201) {
    out.fail("start failed: " + started.body.dump());
    return out;
  }
  const std::string base = "/session/" + started.body["session"].get<std::string>();

  ContextMap direct = new_map(s.map, s.seed);
  Rng rng = make_stream(s.seed, Stream::session);
  Rng voter(s.voter_seed);
  Rng probes(s.voter_seed ^ 0x9e3779b97f4a7c15ULL);
  int t = 0;
  std::optional<GridPos> bmu;

  auto probe_conflict = [&](const char* action, const nlohmann::json& body) {
    if (!coin(probes, s.probe_rate)) return;
    const ServiceResponse r = call("POST", base + "/" + action, body);
    if (r.status != 409) out.fail(std::string("out-of-order ") + action + " returned " + std::to_string(r.status));
  };

  for (int round = 0; round < s.rounds && out.ok; ++round) {
    if (!bmu) probe_conflict("pair", nullptr);
    probe_conflict("vote", {{"winner", 0}});

    const ServiceResponse m = call("POST", base + "/measure", nullptr);
    const ContextVector sample = gather_context_sample(s.room, s.robot, rng);
    bmu = update_map(direct, sample);
    if (m.status != 200) {
      out.fail("measure returned " + std::to_string(m.status));
      break;
    }
    if (m.body["sample"].get<std::vector<double>>() != sample.attrs) out.fail("measured sample differs");
    if (m.body["bmu"]["col"] != bmu->col || m.body["bmu"]["row"] != bmu->row) out.fail("bmu differs");
    if (!s.vote_round[static_cast<std::size_t>(round)]) continue;

    const ServiceResponse p = call("POST", base + "/pair", nullptr);
    const BehaviorPair pair = select_pair(direct.at(*bmu).behaviors, epsilon(s.schedule, t), rng);
    if (p.status != 200) {
      out.fail("pair returned " + std::to_string(p.status));
      break;
    }
    if (p.body["a"]["id"] != pair.first || p.body["b"]["id"] != pair.second ||
        p.body["mode"] != std::string(to_string(pair.mode))) {
      out.fail("presented pair differs");
    }
    probe_conflict("measure", nullptr);
    probe_conflict("pair", nullptr);

    const bool first_wins = coin(voter);
    const BehaviorId winner = first_wins ? pair.first : pair.second;
    const BehaviorId loser = first_wins ? pair.second : pair.first;
    const ServiceResponse v = call("POST", base + "/vote", {{"winner", winner}});
    apply_feedback(direct, *bmu, winner, loser);
    ++t;
    ++out.votes;
    if (v.status != 200 || v.body["t"] != t) out.fail("vote returned " + v.body.dump());
  }

  out.service_map = core.map_snapshot(started.body["session"].get<std::string>());
  out.direct_map = direct;
  if (!out.service_map || !(*out.service_map == *out.direct_map)) out.fail("maps differ");
  return out;
}

}  // namespace affecta::testing
