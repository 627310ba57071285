#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "affecta/binomial.hpp"
#include "affecta/errors.hpp"
#include "affecta/oracle.hpp"
#include "support/calibration_search.hpp"

using namespace affecta;

TEST(PreferredIntensity, Rooms) {
  EXPECT_DOUBLE_EQ(preferred_intensity({6.0, 5.0, "living"}), 2.0);
  EXPECT_DOUBLE_EQ(preferred_intensity({2.0, 3.0, "bedroom"}), 0.8);
  EXPECT_DOUBLE_EQ(preferred_intensity({4.0, 4.0, "middle"}), 1.3);
  EXPECT_DOUBLE_EQ(preferred_intensity({20.0, 20.0, "hall"}), 3.0);
}

TEST(WinProbability, SymmetryAndComplement) {
  const Participant p{0.1, 0.7, 0};
  const Room room{4.0, 4.0, "middle"};
  for (int a = 0; a < kBehaviorCount; ++a) {
    for (int b = 0; b < kBehaviorCount; ++b) {
      if (a == b) continue;
      EXPECT_NEAR(win_probability(p, room, a, b) + win_probability(p, room, b, a), 1.0, 1e-15);
    }
  }
  // equidistant from the ideal point → coin flip
  const Participant centered{0.0, 1.0, 0};
  EXPECT_DOUBLE_EQ(win_probability(centered, {6.0, 5.0, "l"}, 1, 3), 0.5);
}

TEST(WinProbability, SoftmaxOracle) {
  const Room room{6.0, 5.0, "living"};
  const Participant p{0.0, 0.35, 0};
  const double sa = std::exp(-std::abs(2 - 2.0) / 0.35);
  const double sb = std::exp(-std::abs(0 - 2.0) / 0.35);
  EXPECT_NEAR(win_probability(p, room, 2, 0), sa / (sa + sb), 1e-14);
  const Participant sharp{0.0, 1e-4, 0};
  EXPECT_EQ(win_probability(sharp, room, 2, 0), 1.0);
  EXPECT_EQ(win_probability(sharp, room, 0, 2), 0.0);
  EXPECT_THROW(win_probability(p, room, 1, 1), ArgumentError);
}

TEST(Choose, FrequencyMatchesProbability) {
  Rng rng(41);
  const Room room{2.0, 3.0, "bedroom"};
  const Participant p{0.0, 1.0, 0};
  int wins = 0;
  for (int i = 0; i < 20000; ++i) wins += choose(p, room, 1, 0, rng) == 1;
  EXPECT_NEAR(wins / 20000.0, win_probability(p, room, 1, 0), 0.015);
}

TEST(Roster, SeededAndSized) {
  const auto a = make_roster(6, OracleParams{1.0, 0.3}, 9);
  EXPECT_EQ(a.size(), 6u);
  EXPECT_EQ(a, make_roster(6, OracleParams{1.0, 0.3}, 9));
  for (const Participant& p : make_roster(4, OracleParams{1.0, 0.0}, 9)) EXPECT_EQ(p.bias, 0.0);
  EXPECT_THROW(make_roster(0, OracleParams{}, 1), ConfigError);
  EXPECT_THROW(make_roster(3, OracleParams{0.0, 0.1}, 1), ConfigError);
}

TEST(Calibration, DefaultsAreTheGridSearchResult) {
  const auto best = affecta::testing::calibration_grid_search(affecta::testing::default_grid(), affecta::testing::default_targets());
  ASSERT_TRUE(best.has_value());
  EXPECT_NEAR(best->params.temperature, OracleParams{}.temperature, 1e-9);
  EXPECT_NEAR(best->params.bias_sigma, OracleParams{}.bias_sigma, 1e-9);
}

TEST(Binomial, EdgeCases) {
  EXPECT_EQ(binomial_tail(0, 17, 0.3), 1.0);
  EXPECT_EQ(binomial_tail(0, 0, 0.5), 1.0);
  EXPECT_DOUBLE_EQ(binomial_tail(5, 5, 0.5), 0.03125);
  EXPECT_EQ(binomial_tail(3, 5, 0.0), 0.0);
  EXPECT_EQ(binomial_tail(3, 5, 1.0), 1.0);
  EXPECT_THROW(binomial_tail(6, 5, 0.5), ArgumentError);
  EXPECT_THROW(binomial_tail(-1, 5, 0.5), ArgumentError);
  EXPECT_THROW(binomial_tail(1, 5, 1.5), ArgumentError);
}

TEST(Binomial, ExactTailFor58Of90) {
  // Σ_{i≥58} C(90,i) / 2^90 by exact integer-ratio accumulation in long double
  long double c = 1.0L;  // C(90, i) / 2^90 built incrementally
  for (int i = 0; i < 90; ++i) c *= 0.5L;
  long double tail = 0.0L;
  for (int i = 0; i <= 90; ++i) {
    if (i >= 58) tail += c;
    c = c * (90 - i) / (i + 1);
  }
  EXPECT_NEAR(binomial_tail(58, 90, 0.5), static_cast<double>(tail), 1e-15);
  EXPECT_NEAR(binomial_tail(58, 90, 0.5), 0.0040230, 1e-7);
  EXPECT_NEAR(binomial_tail_normal_approx(58, 90, 0.5), 0.004204, 5e-7);
}

TEST(Binomial, ComplementAgainstDirectSummation) {
  for (int n = 0; n <= 30; ++n) {
    for (double p : {0.1, 0.25, 0.5, 0.73, 0.9}) {
      // direct pmf by Pascal's triangle
      std::vector<double> row{1.0};
      for (int m = 1; m <= n; ++m) {
        std::vector<double> next(static_cast<std::size_t>(m + 1), 0.0);
        for (int i = 0; i < m; ++i) {
          next[static_cast<std::size_t>(i)] += row[static_cast<std::size_t>(i)] * (1.0 - p);
          next[static_cast<std::size_t>(i + 1)] += row[static_cast<std::size_t>(i)] * p;
        }
        row = std::move(next);
      }
      double upper = 0.0;
      for (int k = n; k >= 0; --k) {
        upper += row[static_cast<std::size_t>(k)];
        EXPECT_NEAR(binomial_tail(k, n, p), upper, 1e-12) << "k=" << k << " n=" << n << " p=" << p;
        EXPECT_NEAR(binomial_tail(k, n, p) + binomial_tail_strictly_less(k, n, p), 1.0, 1e-12);
      }
    }
  }
}

TEST(Binomial, LargeNStaysFinite) {
  const double v = binomial_tail(5200, 10000, 0.5);
  EXPECT_GT(v, 0.0);
  EXPECT_LT(v, 1e-4);
  EXPECT_NEAR(binomial_tail(1, 100000, 1e-6), -std::expm1(100000 * std::log1p(-1e-6)), 1e-10);
}
