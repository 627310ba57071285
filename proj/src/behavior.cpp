#include "affecta/behavior.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "affecta/errors.hpp"

namespace affecta {

std::array<Behavior, kBehaviorCount> default_behaviors() {
  return {{
      {0, 0.0, 0.0, false, "still"},
      {1, 1.0 / 3.0, 1.0 / 3.0, true, "gentle"},
      {2, 2.0 / 3.0, 2.0 / 3.0, true, "lively"},
      {3, 1.0, 1.0, true, "exuberant"},
  }};
}

double fitness(const BehaviorStats& s) {
  if (s.weighted_total <= 0.0) return 0.5;
  return s.weighted_positive / s.weighted_total;
}

BehaviorId top_behavior(const BehaviorTable& t) {
  BehaviorId best = 0;
  double best_fit = fitness(t[0]);
  for (BehaviorId id = 1; id < kBehaviorCount; ++id) {
    const double f = fitness(t[id]);
    if (f > best_fit) {
      best_fit = f;
      best = id;
    }
  }
  return best;
}

std::array<double, kBehaviorCount> fitness_table(const BehaviorTable& t) {
  std::array<double, kBehaviorCount> out{};
  for (BehaviorId id = 0; id < kBehaviorCount; ++id) out[id] = fitness(t[id]);
  return out;
}

void EpsilonSchedule::validate() const {
  if (!(decay > 0.0 && decay <= 1.0)) throw ConfigError("epsilon decay must lie in (0, 1]");
  if (!(floor >= 0.0 && floor <= initial && initial <= 1.0)) {
    throw ConfigError("epsilon schedule requires 0 <= floor <= initial <= 1");
  }
}

double epsilon(const EpsilonSchedule& schedule, int t) {
  if (t < 0) throw ArgumentError("epsilon: t must be >= 0");
  return std::max(schedule.floor, schedule.initial * std::pow(schedule.decay, t));
}

std::string_view to_string(SelectionMode mode) {
  return mode == SelectionMode::explore ? "explore" : "verify";
}

SelectionMode selection_mode_from_string(std::string_view s) {
  if (s == "explore") return SelectionMode::explore;
  if (s == "verify") return SelectionMode::verify;
  throw ArgumentError("unknown selection mode: " + std::string(s));
}

namespace {

// Uniform id in [0, kBehaviorCount) other than `excluded`.
BehaviorId draw_other(BehaviorId excluded, Rng& rng) {
  std::uniform_int_distribution<int> pick(0, kBehaviorCount - 2);
  const int k = pick(rng);
  return k >= excluded ? k + 1 : k;
}

}  // namespace

BehaviorPair select_pair(const BehaviorTable& t, double eps, Rng& rng) {
  if (!(eps >= 0.0 && eps <= 1.0)) throw ArgumentError("select_pair: eps must lie in [0,1]");
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  BehaviorPair pair;
  if (unit(rng) < eps) {
    std::uniform_int_distribution<int> pick(0, kBehaviorCount - 1);
    pair.first = pick(rng);
    pair.mode = SelectionMode::explore;
  } else {
    pair.first = top_behavior(t);
    pair.mode = SelectionMode::verify;
  }
  pair.second = draw_other(pair.first, rng);
  return pair;
}

void apply_feedback(ContextMap& map, GridPos bmu, BehaviorId winner, BehaviorId loser) {
  if (!is_valid_behavior(winner) || !is_valid_behavior(loser)) {
    throw ArgumentError("apply_feedback: behavior id out of range");
  }
  if (winner == loser) throw ArgumentError("apply_feedback: winner and loser must differ");
  if (!map.contains(bmu)) throw ArgumentError("apply_feedback: bmu out of bounds");
  auto cells = map.cells();
  for_each_in_neighborhood(map, bmu, [&](std::size_t idx, int steps) {
    const double w = neighborhood_rate(1.0, steps);
    BehaviorTable& table = cells[idx].behaviors;
    table[winner].weighted_positive += w;
    table[winner].weighted_total += w;
    table[loser].weighted_total += w;
  });
}

}  // namespace affecta
