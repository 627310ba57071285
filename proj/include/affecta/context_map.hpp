#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "affecta/behavior_table.hpp"

namespace affecta {

/// Random engine used across the library. Every stochastic operation takes
/// one by reference so that a run is fully determined by its seeds.
using Rng = std::mt19937_64;

/// Normalized physical attributes of one context measurement, each in [0,1].
struct ContextVector {
  std::vector<double> attrs;

  std::size_t size() const { return attrs.size(); }
  double operator[](std::size_t i) const { return attrs[i]; }
  double& operator[](std::size_t i) { return attrs[i]; }

  bool operator==(const ContextVector&) const = default;
};

/// Per-attribute importance modifiers used by the distance metric.
struct AttributeWeights {
  std::vector<double> weights;

  std::size_t size() const { return weights.size(); }
  double operator[](std::size_t i) const { return weights[i]; }

  /// Throws ConfigError unless all weights are finite, non-negative and at
  /// least one is positive.
  void validate() const;

  bool operator==(const AttributeWeights&) const = default;
};

struct GridPos {
  int col = 0;
  int row = 0;

  bool operator==(const GridPos&) const = default;
};

struct Cell {
  ContextVector vector;
  BehaviorTable behaviors;

  bool operator==(const Cell&) const = default;
};

struct MapConfig {
  int width = 10;
  int height = 10;
  int attr_count = 1;
  AttributeWeights weights{{1.0}};
  double base_learning_rate = 0.8;
  int neighborhood_radius = 3;

  void validate() const;

  bool operator==(const MapConfig&) const = default;
};

/// 2-D grid of context vectors with a behavior table per cell. Cells are
/// stored in row-major order.
class ContextMap {
 public:
  /// Takes ownership of fully specified cells (used by new_map and the
  /// persistence decoder). Throws ConfigError if any invariant is violated.
  ContextMap(MapConfig config, std::uint64_t rng_seed, std::vector<Cell> cells);

  int width() const { return config_.width; }
  int height() const { return config_.height; }
  int attr_count() const { return config_.attr_count; }
  const AttributeWeights& weights() const { return config_.weights; }
  double base_learning_rate() const { return config_.base_learning_rate; }
  int neighborhood_radius() const { return config_.neighborhood_radius; }
  std::uint64_t rng_seed() const { return rng_seed_; }
  const MapConfig& config() const { return config_; }

  std::size_t cell_count() const { return cells_.size(); }
  std::span<const Cell> cells() const { return cells_; }
  std::span<Cell> cells() { return cells_; }

  bool contains(GridPos p) const;
  std::size_t index_of(GridPos p) const;
  GridPos pos_of(std::size_t index) const;

  const Cell& at(GridPos p) const { return cells_[index_of(p)]; }
  Cell& at(GridPos p) { return cells_[index_of(p)]; }

  bool operator==(const ContextMap&) const = default;

 private:
  MapConfig config_;
  std::uint64_t rng_seed_;
  std::vector<Cell> cells_;
};

/// Fresh map with every attribute drawn uniformly from [0,1] by a generator
/// seeded with `seed`; behavior tallies start at zero.
ContextMap new_map(const MapConfig& config, std::uint64_t seed);
ContextMap new_map(int width, int height, int attr_count, const AttributeWeights& weights,
                   std::uint64_t seed);

/// Σ w[i]·(a[i]−b[i])².
double weighted_distance(const ContextVector& a, const ContextVector& b, const AttributeWeights& w);

/// Cell minimizing weighted_distance to `input`; ties go to the lowest
/// row-major index.
GridPos best_matching_unit(const ContextMap& map, const ContextVector& input);

/// Euclidean grid distance rounded to the nearest integer step.
int grid_step_distance(GridPos p, GridPos q);

/// Learning rate applied `steps` away from the BMU: base · 0.5^steps.
double neighborhood_rate(double base, int steps);

/// Moves the BMU and its neighborhood (step distance ≤ radius) toward
/// `input` and returns the BMU.
GridPos update_map(ContextMap& map, const ContextVector& input);

/// Throws ArgumentError unless `v` has the map's attribute count and every
/// value lies in [0,1].
void check_input(const ContextMap& map, const ContextVector& v);

/// Calls fn(cell_index, steps) for every cell within the map's radius of
/// `center`, in row-major order.
template <typename Fn>
void for_each_in_neighborhood(const ContextMap& map, GridPos center, Fn&& fn) {
  const int radius = map.neighborhood_radius();
  for (int row = 0; row < map.height(); ++row) {
    for (int col = 0; col < map.width(); ++col) {
      const int steps = grid_step_distance({col, row}, center);
      if (steps <= radius) fn(static_cast<std::size_t>(row) * map.width() + col, steps);
    }
  }
}

}  // namespace affecta
