#pragma once

#include <string>

#include "affecta/context_map.hpp"

namespace affecta {

/// Rectangular, obstacle-free room. Coordinates run from (0,0) to (width, length).
struct Room {
  double width = 1.0;   // meters, along x
  double length = 1.0;  // meters, along y
  std::string label;

  double area() const { return width * length; }
  void validate() const;

  bool operator==(const Room&) const = default;
};

struct RobotParams {
  double speed = 0.5;        // m/s
  double t_max = 20.0;       // s, normalization cap
  double min_drive = 0.25;   // m, shorter drives count as failed measurements
  double noise_sigma = 0.5;  // s, additive timing noise

  void validate() const;

  bool operator==(const RobotParams&) const = default;
};

struct MeasurementOutcome {
  bool success = false;
  double drive_time = 0.0;  // s, 0 when the measurement failed

  bool operator==(const MeasurementOutcome&) const = default;
};

inline constexpr int kMaxMeasurementAttempts = 1000;

/// Length of the ray from (x, y) along `heading` (radians) to the first wall.
double distance_to_wall(const Room& room, double x, double y, double heading);

/// Drive outcome from a fixed pose with a given timing noise sample.
MeasurementOutcome drive_from(const Room& room, const RobotParams& rp, double x, double y, double heading,
                              double noise);

/// One time-of-drive attempt from a uniform spawn point and heading.
MeasurementOutcome sample_measurement(const Room& room, const RobotParams& rp, Rng& rng);

/// Averages `n_success` successful drives into a one-attribute context
/// vector, normalized by t_max. Failed attempts are discarded; throws
/// DegenerateRoomError after kMaxMeasurementAttempts attempts.
ContextVector gather_context_sample(const Room& room, const RobotParams& rp, Rng& rng, int n_success = 3);

}  // namespace affecta
