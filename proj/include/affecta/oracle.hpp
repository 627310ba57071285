#pragma once

#include <cstdint>
#include <vector>

#include "affecta/behavior.hpp"
#include "affecta/environment.hpp"

namespace affecta {

/// Population parameters of the simulated participants. The defaults come
/// from the grid search in tests/support/calibration_search.hpp, which picks
/// the point closest to the target vote fractions among those inside the
/// ±10-point bands.
struct OracleParams {
  double temperature = 1.35;
  double bias_sigma = 0.0;

  void validate() const;

  bool operator==(const OracleParams&) const = default;
};

/// A simulated voter. `bias` shifts the room's preferred intensity.
struct Participant {
  double bias = 0.0;
  double temperature = 1.0;
  std::uint64_t seed = 0;

  bool operator==(const Participant&) const = default;
};

/// Ideal continuous intensity for a room: clamp(0.5 + area/20, 0, 3).
double preferred_intensity(const Room& room);

/// Probability that `a` wins against `b`: a two-way softmax over the
/// negative distances |id − (preferred + bias)| scaled by the temperature.
double win_probability(const Participant& p, const Room& room, BehaviorId a, BehaviorId b);

/// Samples the participant's pick between two distinct behaviors.
BehaviorId choose(const Participant& p, const Room& room, BehaviorId a, BehaviorId b, Rng& rng);
BehaviorId choose(const Participant& p, const Room& room, const Behavior& a, const Behavior& b, Rng& rng);

/// `count` participants with biases drawn from N(0, bias_sigma) by a
/// generator seeded with `seed`.
std::vector<Participant> make_roster(int count, const OracleParams& params, std::uint64_t seed);

/// Population win fraction of behavior `k` in `room`: each draw uses a fresh
/// participant and a uniformly chosen opponent.
double simulate_win_fraction(const OracleParams& params, const Room& room, BehaviorId k, int draws, Rng& rng);

}  // namespace affecta
