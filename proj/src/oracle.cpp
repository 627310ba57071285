#include "affecta/oracle.hpp"

#include <algorithm>
#include <cmath>

#include "affecta/errors.hpp"

namespace affecta {

void OracleParams::validate() const {
  if (!(temperature > 0.0)) throw ConfigError("oracle temperature must be > 0");
  if (!(bias_sigma >= 0.0)) throw ConfigError("oracle bias_sigma must be >= 0");
}

double preferred_intensity(const Room& room) { return std::clamp(0.5 + room.area() / 20.0, 0.0, 3.0); }

double win_probability(const Participant& p, const Room& room, BehaviorId a, BehaviorId b) {
  if (a == b) throw ArgumentError("win_probability: behaviors must differ");
  if (!(p.temperature > 0.0)) throw ArgumentError("participant temperature must be > 0");
  const double ideal = preferred_intensity(room) + p.bias;
  const double gap = std::abs(a - ideal) - std::abs(b - ideal);
  // logistic form of the two-way softmax; stable for tiny temperatures
  const double z = gap / p.temperature;
  if (z >= 0.0) {
    const double e = std::exp(-z);
    return e / (1.0 + e);
  }
  return 1.0 / (1.0 + std::exp(z));
}

BehaviorId choose(const Participant& p, const Room& room, BehaviorId a, BehaviorId b, Rng& rng) {
  const double pa = win_probability(p, room, a, b);
  return std::uniform_real_distribution<double>(0.0, 1.0)(rng) < pa ? a : b;
}

BehaviorId choose(const Participant& p, const Room& room, const Behavior& a, const Behavior& b, Rng& rng) {
  return choose(p, room, a.id, b.id, rng);
}

std::vector<Participant> make_roster(int count, const OracleParams& params, std::uint64_t seed) {
  if (count < 1) throw ConfigError("participant roster must not be empty");
  params.validate();
  Rng rng(seed);
  std::normal_distribution<double> bias(0.0, params.bias_sigma);
  std::vector<Participant> roster;
  roster.reserve(count);
  for (int i = 0; i < count; ++i) {
    Participant p;
    p.bias = params.bias_sigma > 0.0 ? bias(rng) : 0.0;
    p.temperature = params.temperature;
    p.seed = seed + static_cast<std::uint64_t>(i);
    roster.push_back(p);
  }
  return roster;
}

double simulate_win_fraction(const OracleParams& params, const Room& room, BehaviorId k, int draws, Rng& rng) {
  if (!is_valid_behavior(k)) throw ArgumentError("simulate_win_fraction: behavior id out of range");
  if (draws < 1) throw ArgumentError("simulate_win_fraction: draws must be >= 1");
  params.validate();
  std::normal_distribution<double> bias(0.0, params.bias_sigma);
  std::uniform_int_distribution<int> opponent(0, kBehaviorCount - 2);
  int wins = 0;
  for (int i = 0; i < draws; ++i) {
    Participant p;
    p.temperature = params.temperature;
    p.bias = params.bias_sigma > 0.0 ? bias(rng) : 0.0;
    int other = opponent(rng);
    if (other >= k) ++other;
    if (choose(p, room, k, other, rng) == k) ++wins;
  }
  return static_cast<double>(wins) / draws;
}

}  // namespace affecta
