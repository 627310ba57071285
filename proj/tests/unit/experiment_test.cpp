#include <algorithm>

#include <gtest/gtest.h>

#include "affecta/errors.hpp"
#include "affecta/experiment.hpp"
#include "affecta/persistence.hpp"
#include "support/properties.hpp"

using namespace affecta;
using namespace affecta::testing;

TEST(Phase1, ZeroUpdatesLeavesFreshMap) {
  ExperimentConfig cfg;
  cfg.seed = 61;
  cfg.phase1.updates_per_room = 0;
  const MapRun run = run_phase1(cfg);
  EXPECT_EQ(run.map, new_map(cfg.map, cfg.seed));
  EXPECT_TRUE(run.report.updates.empty());
}

TEST(Phase1, RoundRobinUpdateLog) {
  ExperimentConfig cfg;
  const MapRun run = run_phase1(cfg);
  ASSERT_EQ(run.report.updates.size(), 32u);
  for (std::size_t i = 0; i < run.report.updates.size(); ++i) {
    EXPECT_EQ(run.report.updates[i].step, static_cast<int>(i));
    EXPECT_EQ(run.report.updates[i].room, i % 2 == 0 ? "living" : "bedroom");
  }
  // replaying the logged samples through update_map reproduces the map
  ContextMap replayed = new_map(cfg.map, cfg.seed);
  for (const UpdateEvent& e : run.report.updates) EXPECT_EQ(update_map(replayed, e.sample), e.bmu);
  EXPECT_EQ(replayed, run.map);
  EXPECT_EQ(run.report.map_digest, map_digest(run.map));
}

TEST(Phase1, Deterministic) {
  ExperimentConfig cfg;
  cfg.seed = 62;
  EXPECT_EQ(run_phase1(cfg).map, run_phase1(cfg).map);
  ExperimentConfig other = cfg;
  other.seed = 63;
  EXPECT_NE(run_phase1(cfg).map, run_phase1(other).map);
}

TEST(Phase2, AlwaysPreferThree) {
  ExperimentConfig cfg;
  cfg.seed = 64;
  const MapRun explored = run_phase1(cfg);
  const Voter prefer_three = [](const VoteRequest& r, Rng&) {
    if (r.pair.first == 3 || r.pair.second == 3) return BehaviorId{3};
    return r.pair.first;
  };
  const MapRun trained = run_phase2(cfg, explored.map, prefer_three);
  ASSERT_EQ(trained.report.votes.size(), 72u);
  for (const VoteEvent& v : trained.report.votes) {
    const BehaviorTable& t = trained.map.at(v.bmu).behaviors;
    EXPECT_EQ(top_behavior(t), 3);
    EXPECT_EQ(fitness(t[3]), 1.0);
  }
}

TEST(Phase2, VoteLogReplaysThroughLibrary) {
  ExperimentConfig cfg;
  cfg.seed = 65;
  const MapRun explored = run_phase1(cfg);
  const MapRun trained = run_phase2(cfg, explored.map);
  ContextMap map = explored.map;
  for (std::size_t t = 0; t < trained.report.votes.size(); ++t) {
    const VoteEvent& v = trained.report.votes[t];
    EXPECT_EQ(v.t, static_cast<int>(t));
    EXPECT_EQ(v.participant, static_cast<int>(t) % cfg.phase2.participants);
    EXPECT_EQ(v.room, t % 2 == 0 ? "living" : "bedroom");
    EXPECT_DOUBLE_EQ(v.epsilon, epsilon(cfg.phase2.epsilon, static_cast<int>(t)));
    EXPECT_EQ(v.bmu, best_matching_unit(map, v.sample));
    ASSERT_TRUE(v.winner == v.pair.first || v.winner == v.pair.second);
    apply_feedback(map, v.bmu, v.winner, v.winner == v.pair.first ? v.pair.second : v.pair.first);
  }
  EXPECT_EQ(map, trained.map);
  // phase 2 never moves the map's vectors
  for (std::size_t i = 0; i < map.cell_count(); ++i) {
    EXPECT_EQ(trained.map.cells()[i].vector, explored.map.cells()[i].vector);
  }
}

TEST(Phase2, RejectsMismatchedMap) {
  ExperimentConfig cfg;
  EXPECT_THROW(run_phase2(cfg, new_map(2, 2, 2, AttributeWeights{{1.0, 1.0}}, 1)), std::invalid_argument);
}

TEST(Validation, SingleAttemptAndModalChoice) {
  ExperimentConfig cfg;
  cfg.seed = 66;
  cfg.validation.attempts = 1;
  const MapRun trained = run_training(cfg);
  const ValidationRun v = run_validation(cfg, trained.map);
  ASSERT_EQ(v.report.validation.size(), 1u);
  EXPECT_EQ(v.choice, v.report.validation[0].choice);
  EXPECT_EQ(v.choice, top_behavior(trained.map.at(v.report.validation[0].bmu).behaviors));
  EXPECT_EQ(v.report.validation_choice, v.choice);
}

TEST(Validation, ModalChoicePermutationInvariant) {
  Rng rng(67);
  for (int k = 0; k < 500; ++k) {
    std::vector<BehaviorId> choices;
    const int n = uniform_int(rng, 1, 9);
    for (int i = 0; i < n; ++i) choices.push_back(uniform_int(rng, 0, 3));
    const BehaviorId m = modal_choice(choices);
    std::array<int, kBehaviorCount> counts{};
    for (BehaviorId c : choices) ++counts[static_cast<std::size_t>(c)];
    const int best = *std::max_element(counts.begin(), counts.end());
    EXPECT_EQ(counts[static_cast<std::size_t>(m)], best);
    for (BehaviorId b = 0; b < m; ++b) EXPECT_LT(counts[static_cast<std::size_t>(b)], best);
    std::shuffle(choices.begin(), choices.end(), rng);
    EXPECT_EQ(modal_choice(choices), m);
  }
  EXPECT_THROW(modal_choice({}), ArgumentError);
}

TEST(Regions, ExpectedOptima) {
  EXPECT_EQ(expected_top({6.0, 5.0, "l"}), 2);
  EXPECT_EQ(expected_bottom({6.0, 5.0, "l"}), 0);
  EXPECT_EQ(expected_top({2.0, 3.0, "b"}), 1);
  EXPECT_EQ(expected_bottom({2.0, 3.0, "b"}), 3);
}

TEST(Regions, ProbesIndependentOfTraining) {
  ExperimentConfig cfg;
  cfg.seed = 68;
  const MapRun explored = run_phase1(cfg);
  const MapRun trained = run_training(cfg);
  const auto a = summarize_regions(cfg, explored.map, {"living", "bedroom"});
  const auto b = summarize_regions(cfg, trained.map, {"living", "bedroom"});
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].probe, b[i].probe);
    EXPECT_EQ(a[i].bmu, b[i].bmu);
  }
}

TEST(Commands, ReplayDetectsTampering) {
  ExperimentConfig cfg;
  cfg.seed = 69;
  for (const char* command : {"explore", "train", "validate"}) {
    const MapRun run = run_command(command, cfg);
    EXPECT_TRUE(replay(run.report).identical) << command;
  }
  RunReport tampered = run_command("train", cfg).report;
  tampered.votes[5].winner = tampered.votes[5].winner == tampered.votes[5].pair.first ? tampered.votes[5].pair.second
                                                                                     : tampered.votes[5].pair.first;
  EXPECT_FALSE(replay(tampered).identical);
  EXPECT_THROW(run_command("dance", cfg), ArgumentError);
}

TEST(Commands, ValidateFromPersistedMap) {
  ExperimentConfig cfg;
  cfg.seed = 70;
  const MapRun trained = run_training(cfg);
  const auto path = std::filesystem::temp_directory_path() / "affecta_validate_map.json";
  save_map(trained.map, path);
  const MapRun v = run_command("validate", cfg, path.string());
  EXPECT_EQ(v.map, trained.map);
  EXPECT_EQ(v.report.input_map, path.string());
  EXPECT_EQ(v.report.validation_choice, run_validation(cfg, trained.map).choice);
  EXPECT_TRUE(replay(v.report).identical);
}

TEST(Sweep, DeterminismProperty) {
  const PropertyResult r = check_pipeline_determinism(3, 71);
  EXPECT_TRUE(r.passed) << r.detail;
}

TEST(Sweep, SummaryCountsMatchOutcomes) {
  ExperimentConfig cfg;
  const auto outcomes = run_sweep(cfg, 20, 1, 2);
  ASSERT_EQ(outcomes.size(), 20u);
  for (std::size_t i = 0; i < outcomes.size(); ++i) EXPECT_EQ(outcomes[i].seed, i + 1);
  const SweepSummary s = summarize_sweep(cfg, outcomes);
  EXPECT_EQ(s.runs, 20);
  EXPECT_LE(s.validated, s.prioritized);
  EXPECT_EQ(s.to_json()["runs"], 20);
}
