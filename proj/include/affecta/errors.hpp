#pragma once

#include <stdexcept>
#include <string>

namespace affecta {

/// Invalid map / experiment configuration (dimensions, weight lengths, counts).
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A call-site contract violation: mismatched vector lengths, bad ids, ...
class ArgumentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Malformed or unsupported persisted document.
class DecodeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The simulated robot could not collect enough successful drives in a room.
class DegenerateRoomError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace affecta
