#include <map>

#include <gtest/gtest.h>

#include "affecta/behavior.hpp"
#include "affecta/errors.hpp"
#include "support/generators.hpp"
#include "support/properties.hpp"

using namespace affecta;
using namespace affecta::testing;

TEST(Behaviors, DefaultSetIsOrderedByIntensity) {
  const auto b = default_behaviors();
  for (int i = 0; i < kBehaviorCount; ++i) {
    EXPECT_EQ(b[i].id, i);
    EXPECT_DOUBLE_EQ(b[i].movement_amplitude, i / 3.0);
    EXPECT_DOUBLE_EQ(b[i].gesture_amplitude, i / 3.0);
    EXPECT_EQ(b[i].has_movement, i > 0);
  }
}

TEST(Fitness, Ratios) {
  EXPECT_NEAR(fitness({2.0, 3.0}), 0.6667, 1e-4);
  EXPECT_NEAR(fitness({0.5, 1.5}), 1.0 / 3.0, 1e-15);
  EXPECT_EQ(fitness({}), 0.5);
  EXPECT_EQ(fitness({0.0, 4.0}), 0.0);
}

TEST(Fitness, TopBehaviorLowestIdOnTies) {
  BehaviorTable t;
  EXPECT_EQ(top_behavior(t), 0);
  t[1] = {1.0, 1.0};
  t[3] = {2.0, 2.0};
  EXPECT_EQ(top_behavior(t), 1);
  t[0] = {0.0, 1.0};
  t[1] = {1.0, 2.0};
  t[2] = {1.0, 2.0};
  t[3] = {0.0, 1.0};
  EXPECT_EQ(top_behavior(t), 1);
}

TEST(Fitness, BoundsProperty) {
  const PropertyResult r = check_fitness_bounds(1000, 21);
  EXPECT_TRUE(r.passed) << r.detail;
}

TEST(Epsilon, MatchesRepeatedMultiplication) {
  const EpsilonSchedule s;
  double e = 0.8;
  for (int t = 0; t <= 100; ++t) {
    EXPECT_NEAR(epsilon(s, t), std::max(0.1, e), 1e-12) << "t=" << t;
    e *= 0.97;
  }
  EXPECT_EQ(epsilon(s, 0), 0.8);
  EXPECT_NEAR(epsilon(s, 10), 0.589939, 1e-6);
  EXPECT_EQ(epsilon(s, 100), 0.1);
  EXPECT_THROW(epsilon(s, -1), ArgumentError);
}

TEST(Epsilon, MonotonicProperty) {
  const PropertyResult r = check_epsilon_monotonic(200, 22);
  EXPECT_TRUE(r.passed) << r.detail;
}

TEST(Epsilon, ScheduleValidation) {
  EXPECT_THROW((EpsilonSchedule{0.5, 0.97, 0.6}.validate()), ConfigError);
  EXPECT_THROW((EpsilonSchedule{1.2, 0.97, 0.1}.validate()), ConfigError);
  EXPECT_THROW((EpsilonSchedule{0.8, 0.0, 0.1}.validate()), ConfigError);
  EXPECT_NO_THROW((EpsilonSchedule{0.8, 1.0, 0.0}.validate()));
}

TEST(SelectPair, ExploreIsUniformOverOrderedPairs) {
  Rng rng(23);
  const BehaviorTable t;
  std::map<std::pair<int, int>, int> counts;
  const int n = 60000;
  for (int i = 0; i < n; ++i) {
    const BehaviorPair p = select_pair(t, 1.0, rng);
    ASSERT_EQ(p.mode, SelectionMode::explore);
    ASSERT_NE(p.first, p.second);
    ++counts[{std::min(p.first, p.second), std::max(p.first, p.second)}];
  }
  ASSERT_EQ(counts.size(), 6u);
  for (const auto& [pair, c] : counts) EXPECT_NEAR(static_cast<double>(c) / n, 1.0 / 6.0, 0.02);
}

TEST(SelectPair, VerifyAlwaysIncludesTop) {
  Rng rng(24);
  BehaviorTable t;
  t[2] = {5.0, 5.0};
  std::array<int, kBehaviorCount> challengers{};
  for (int i = 0; i < 30000; ++i) {
    const BehaviorPair p = select_pair(t, 0.0, rng);
    ASSERT_EQ(p.mode, SelectionMode::verify);
    ASSERT_EQ(p.first, 2);
    ASSERT_NE(p.second, 2);
    ++challengers[static_cast<std::size_t>(p.second)];
  }
  EXPECT_EQ(challengers[2], 0);
  for (int b : {0, 1, 3}) EXPECT_NEAR(challengers[static_cast<std::size_t>(b)] / 30000.0, 1.0 / 3.0, 0.02);
}

TEST(SelectPair, ExploreFrequencyTracksEpsilon) {
  Rng rng(25);
  BehaviorTable t;
  int explored = 0;
  for (int i = 0; i < 20000; ++i) explored += select_pair(t, 0.3, rng).mode == SelectionMode::explore;
  EXPECT_NEAR(explored / 20000.0, 0.3, 0.015);
  EXPECT_THROW(select_pair(t, 1.1, rng), ArgumentError);
}

TEST(ApplyFeedback, WorkedExample) {
  MapConfig cfg;
  cfg.width = 3;
  cfg.height = 1;
  cfg.neighborhood_radius = 1;
  ContextMap map = new_map(cfg, 1);
  apply_feedback(map, {0, 0}, 3, 1);
  EXPECT_EQ(map.at({0, 0}).behaviors[3].weighted_positive, 1.0);
  EXPECT_EQ(map.at({0, 0}).behaviors[3].weighted_total, 1.0);
  EXPECT_EQ(map.at({0, 0}).behaviors[1].weighted_positive, 0.0);
  EXPECT_EQ(map.at({0, 0}).behaviors[1].weighted_total, 1.0);
  EXPECT_EQ(map.at({1, 0}).behaviors[3].weighted_total, 0.5);
  EXPECT_EQ(map.at({2, 0}).behaviors[3].weighted_total, 0.0);
  EXPECT_EQ(top_behavior(map.at({0, 0}).behaviors), 3);
}

TEST(ApplyFeedback, RejectsBadArguments) {
  ContextMap map = new_map(MapConfig{}, 1);
  const ContextMap before = map;
  EXPECT_THROW(apply_feedback(map, {0, 0}, 1, 1), ArgumentError);
  EXPECT_THROW(apply_feedback(map, {0, 0}, 4, 1), ArgumentError);
  EXPECT_THROW(apply_feedback(map, {0, 0}, 0, -1), ArgumentError);
  EXPECT_THROW(apply_feedback(map, {10, 0}, 0, 1), ArgumentError);
  EXPECT_EQ(map, before);
}

TEST(ApplyFeedback, ConservationProperty) {
  const PropertyResult r = check_vote_conservation(200, 26);
  EXPECT_TRUE(r.passed) << r.detail;
}

TEST(ApplyFeedback, MatchesEnumeratedTally) {
  // enumeration oracle: count votes per (cell, behavior) by hand
  Rng rng(27);
  MapConfig cfg;
  cfg.width = 5;
  cfg.height = 4;
  cfg.neighborhood_radius = 2;
  ContextMap map = new_map(cfg, 2);
  std::vector<std::array<std::pair<double, double>, kBehaviorCount>> tally(map.cell_count());
  for (int v = 0; v < 200; ++v) {
    const GridPos bmu = random_pos(rng, map);
    const auto [w, l] = random_vote(rng);
    apply_feedback(map, bmu, w, l);
    for (int r = 0; r < cfg.height; ++r) {
      for (int c = 0; c < cfg.width; ++c) {
        const double dist = std::sqrt(double((c - bmu.col) * (c - bmu.col) + (r - bmu.row) * (r - bmu.row)));
        const long steps = std::lround(dist);
        if (steps > 2) continue;
        const double weight = steps == 0 ? 1.0 : steps == 1 ? 0.5 : 0.25;
        auto& cell = tally[static_cast<std::size_t>(r * cfg.width + c)];
        cell[static_cast<std::size_t>(w)].first += weight;
        cell[static_cast<std::size_t>(w)].second += weight;
        cell[static_cast<std::size_t>(l)].second += weight;
      }
    }
  }
  for (std::size_t i = 0; i < map.cell_count(); ++i) {
    for (int b = 0; b < kBehaviorCount; ++b) {
      EXPECT_DOUBLE_EQ(map.cells()[i].behaviors[b].weighted_positive, tally[i][static_cast<std::size_t>(b)].first);
      EXPECT_DOUBLE_EQ(map.cells()[i].behaviors[b].weighted_total, tally[i][static_cast<std::size_t>(b)].second);
    }
  }
}

TEST(SelectionMode, StringRoundTrip) {
  EXPECT_EQ(selection_mode_from_string(to_string(SelectionMode::explore)), SelectionMode::explore);
  EXPECT_EQ(selection_mode_from_string(to_string(SelectionMode::verify)), SelectionMode::verify);
  EXPECT_THROW(selection_mode_from_string("guess"), ArgumentError);
}
