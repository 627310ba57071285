#pragma once

#include <array>
#include <string>
#include <string_view>

#include "affecta/behavior_table.hpp"
#include "affecta/context_map.hpp"

namespace affecta {

/// A discrete behavior. Its id doubles as its intensity level: higher ids
/// move and gesture with larger amplitude, id 0 does not move at all.
struct Behavior {
  BehaviorId id = 0;
  double movement_amplitude = 0.0;
  double gesture_amplitude = 0.0;
  bool has_movement = false;
  std::string label;
};

/// The four canonical behaviors, amplitudes 0, 1/3, 2/3 and 1.
std::array<Behavior, kBehaviorCount> default_behaviors();

/// Share of weighted positive votes; 0.5 for a behavior that was never voted on.
double fitness(const BehaviorStats& s);

/// Highest-fitness behavior, lowest id on ties.
BehaviorId top_behavior(const BehaviorTable& t);

std::array<double, kBehaviorCount> fitness_table(const BehaviorTable& t);

/// Geometric decay of the exploration probability with a floor.
struct EpsilonSchedule {
  double initial = 0.8;
  double decay = 0.97;
  double floor = 0.1;

  void validate() const;

  bool operator==(const EpsilonSchedule&) const = default;
};

/// max(floor, initial · decay^t)
double epsilon(const EpsilonSchedule& schedule, int t);

enum class SelectionMode { explore, verify };

std::string_view to_string(SelectionMode mode);
SelectionMode selection_mode_from_string(std::string_view s);

struct BehaviorPair {
  BehaviorId first = 0;
  BehaviorId second = 1;
  SelectionMode mode = SelectionMode::explore;

  bool operator==(const BehaviorPair&) const = default;
};

/// Epsilon-greedy pair selection. With probability `eps` two distinct ids
/// are drawn uniformly (explore); otherwise the current top behavior is
/// paired with a uniformly drawn challenger (verify).
BehaviorPair select_pair(const BehaviorTable& t, double eps, Rng& rng);

/// Records one pairwise vote at `bmu` and, with weight 0.5^d, in every cell
/// within the map's neighborhood radius: both behaviors gain total weight,
/// only the winner gains positive weight.
void apply_feedback(ContextMap& map, GridPos bmu, BehaviorId winner, BehaviorId loser);

}  // namespace affecta
