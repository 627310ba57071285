#include "affecta/context_map.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "affecta/errors.hpp"

namespace affecta {

void AttributeWeights::validate() const {
  if (weights.empty()) throw ConfigError("attribute weights must not be empty");
  bool any_positive = false;
  for (double w : weights) {
    if (!std::isfinite(w) || w < 0.0) throw ConfigError("attribute weights must be finite and >= 0");
    any_positive = any_positive || w > 0.0;
  }
  if (!any_positive) throw ConfigError("at least one attribute weight must be > 0");
}

void MapConfig::validate() const {
  if (width < 1 || height < 1) throw ConfigError("map width and height must be >= 1");
  if (attr_count < 1) throw ConfigError("attr_count must be >= 1");
  if (weights.size() != static_cast<std::size_t>(attr_count)) {
    throw ConfigError("weights length " + std::to_string(weights.size()) + " does not match attr_count " +
                      std::to_string(attr_count));
  }
  weights.validate();
  if (!(base_learning_rate > 0.0 && base_learning_rate <= 1.0)) {
    throw ConfigError("base_learning_rate must lie in (0, 1]");
  }
  if (neighborhood_radius < 0) throw ConfigError("neighborhood_radius must be >= 0");
}

ContextMap::ContextMap(MapConfig config, std::uint64_t rng_seed, std::vector<Cell> cells)
    : config_(std::move(config)), rng_seed_(rng_seed), cells_(std::move(cells)) {
  config_.validate();
  if (cells_.size() != static_cast<std::size_t>(config_.width) * config_.height) {
    throw ConfigError("cell count does not match width*height");
  }
  for (const Cell& c : cells_) {
    if (c.vector.size() != static_cast<std::size_t>(config_.attr_count)) {
      throw ConfigError("cell vector length does not match attr_count");
    }
    for (double a : c.vector.attrs) {
      if (!(a >= 0.0 && a <= 1.0)) throw ConfigError("cell attribute outside [0,1]");
    }
    for (const BehaviorStats& s : c.behaviors.stats) {
      if (!(s.weighted_positive >= 0.0 && s.weighted_positive <= s.weighted_total) ||
          !std::isfinite(s.weighted_total)) {
        throw ConfigError("behavior tallies must satisfy 0 <= positive <= total");
      }
    }
  }
}

bool ContextMap::contains(GridPos p) const {
  return p.col >= 0 && p.col < config_.width && p.row >= 0 && p.row < config_.height;
}

std::size_t ContextMap::index_of(GridPos p) const {
  if (!contains(p)) throw ArgumentError("grid position out of bounds");
  return static_cast<std::size_t>(p.row) * config_.width + p.col;
}

GridPos ContextMap::pos_of(std::size_t index) const {
  const int w = config_.width;
  return {static_cast<int>(index % w), static_cast<int>(index / w)};
}

ContextMap new_map(const MapConfig& config, std::uint64_t seed) {
  config.validate();
  Rng rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<Cell> cells(static_cast<std::size_t>(config.width) * config.height);
  for (Cell& c : cells) {
    c.vector.attrs.resize(config.attr_count);
    for (double& a : c.vector.attrs) a = unit(rng);
  }
  return ContextMap(config, seed, std::move(cells));
}

ContextMap new_map(int width, int height, int attr_count, const AttributeWeights& weights,
                   std::uint64_t seed) {
  MapConfig cfg;
  cfg.width = width;
  cfg.height = height;
  cfg.attr_count = attr_count;
  cfg.weights = weights;
  return new_map(cfg, seed);
}

double weighted_distance(const ContextVector& a, const ContextVector& b, const AttributeWeights& w) {
  if (a.size() != b.size() || a.size() != w.size()) {
    throw ArgumentError("weighted_distance: vector and weight lengths differ");
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    sum += w[i] * d * d;
  }
  return sum;
}

GridPos best_matching_unit(const ContextMap& map, const ContextVector& input) {
  if (input.size() != static_cast<std::size_t>(map.attr_count())) {
    throw ArgumentError("best_matching_unit: input length does not match map");
  }
  const auto cells = map.cells();
  std::size_t best = 0;
  double best_dist = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < cells.size(); ++i) {
    const double d = weighted_distance(cells[i].vector, input, map.weights());
    // strict < keeps the lowest index on ties
    if (d < best_dist) {
      best_dist = d;
      best = i;
    }
  }
  return map.pos_of(best);
}

int grid_step_distance(GridPos p, GridPos q) {
  const double dc = p.col - q.col;
  const double dr = p.row - q.row;
  return static_cast<int>(std::lround(std::sqrt(dc * dc + dr * dr)));
}

double neighborhood_rate(double base, int steps) { return std::ldexp(base, -steps); }

void check_input(const ContextMap& map, const ContextVector& v) {
  if (v.size() != static_cast<std::size_t>(map.attr_count())) {
    throw ArgumentError("context vector length " + std::to_string(v.size()) + " does not match map attr_count " +
                        std::to_string(map.attr_count()));
  }
  for (double a : v.attrs) {
    if (!(a >= 0.0 && a <= 1.0)) throw ArgumentError("context vector attribute outside [0,1]");
  }
}

GridPos update_map(ContextMap& map, const ContextVector& input) {
  check_input(map, input);
  const GridPos bmu = best_matching_unit(map, input);
  auto cells = map.cells();
  for_each_in_neighborhood(map, bmu, [&](std::size_t idx, int steps) {
    const double rate = neighborhood_rate(map.base_learning_rate(), steps);
    for (std::size_t i = 0; i < input.size(); ++i) {
      double& a = cells[idx].vector[i];
      a = std::clamp(a + rate * (input[i] - a), 0.0, 1.0);
    }
  });
  return bmu;
}

}  // namespace affecta
