#pragma once

#include <array>
#include <cstddef>

namespace affecta {

/// Behaviors are identified by their intensity level.
using BehaviorId = int;

inline constexpr int kBehaviorCount = 4;

/// Weighted vote tallies for one behavior in one cell.
struct BehaviorStats {
  double weighted_positive = 0.0;
  double weighted_total = 0.0;

  bool operator==(const BehaviorStats&) const = default;
};

/// Tallies for every behavior id; all four ids are always present.
struct BehaviorTable {
  std::array<BehaviorStats, kBehaviorCount> stats{};

  const BehaviorStats& operator[](BehaviorId id) const { return stats[static_cast<std::size_t>(id)]; }
  BehaviorStats& operator[](BehaviorId id) { return stats[static_cast<std::size_t>(id)]; }

  bool operator==(const BehaviorTable&) const = default;
};

inline bool is_valid_behavior(BehaviorId id) { return id >= 0 && id < kBehaviorCount; }

}  // namespace affecta
