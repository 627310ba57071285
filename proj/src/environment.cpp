#include "affecta/environment.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "affecta/errors.hpp"

namespace affecta {

void Room::validate() const {
  if (!(width > 0.0 && length > 0.0) || !std::isfinite(width) || !std::isfinite(length)) {
    throw ConfigError("room '" + label + "' must have positive finite dimensions");
  }
}

void RobotParams::validate() const {
  if (!(speed > 0.0)) throw ConfigError("robot speed must be > 0");
  if (!(t_max > 0.0)) throw ConfigError("robot t_max must be > 0");
  if (!(min_drive >= 0.0)) throw ConfigError("robot min_drive must be >= 0");
  if (!(noise_sigma >= 0.0)) throw ConfigError("robot noise_sigma must be >= 0");
}

double distance_to_wall(const Room& room, double x, double y, double heading) {
  const double dx = std::cos(heading);
  const double dy = std::sin(heading);
  constexpr double inf = std::numeric_limits<double>::infinity();
  const double tx = dx > 0.0 ? (room.width - x) / dx : dx < 0.0 ? -x / dx : inf;
  const double ty = dy > 0.0 ? (room.length - y) / dy : dy < 0.0 ? -y / dy : inf;
  return std::min(tx, ty);
}

MeasurementOutcome drive_from(const Room& room, const RobotParams& rp, double x, double y, double heading,
                              double noise) {
  const double d = distance_to_wall(room, x, y, heading);
  if (d < rp.min_drive) return {};
  const double t = std::min(d / rp.speed + noise, rp.t_max);
  return {true, std::max(t, 0.01)};
}

MeasurementOutcome sample_measurement(const Room& room, const RobotParams& rp, Rng& rng) {
  std::uniform_real_distribution<double> along_x(0.0, room.width);
  std::uniform_real_distribution<double> along_y(0.0, room.length);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  const double x = along_x(rng);
  const double y = along_y(rng);
  const double heading = angle(rng);
  if (distance_to_wall(room, x, y, heading) < rp.min_drive) return {};
  double noise = 0.0;
  if (rp.noise_sigma > 0.0) noise = std::normal_distribution<double>(0.0, rp.noise_sigma)(rng);
  return drive_from(room, rp, x, y, heading, noise);
}

ContextVector gather_context_sample(const Room& room, const RobotParams& rp, Rng& rng, int n_success) {
  if (n_success < 1) throw ArgumentError("gather_context_sample: n_success must be >= 1");
  room.validate();
  rp.validate();
  double sum = 0.0;
  int successes = 0;
  for (int attempt = 0; attempt < kMaxMeasurementAttempts && successes < n_success; ++attempt) {
    const MeasurementOutcome m = sample_measurement(room, rp, rng);
    if (!m.success) continue;
    sum += m.drive_time;
    ++successes;
  }
  if (successes < n_success) {
    throw DegenerateRoomError("room '" + room.label + "': no " + std::to_string(n_success) +
                              " successful drives within " + std::to_string(kMaxMeasurementAttempts) + " attempts");
  }
  return {{std::clamp(sum / n_success / rp.t_max, 0.0, 1.0)}};
}

}  // namespace affecta
