#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <shared_mutex>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "affecta/behavior.hpp"
#include "affecta/context_map.hpp"
#include "affecta/environment.hpp"

namespace affecta {

struct ServiceResponse {
  int status = 200;
  nlohmann::json body;
};

/// Defaults for sessions whose start request leaves the settings out.
struct ServiceDefaults {
  MapConfig map;
  RobotParams robot;
  EpsilonSchedule epsilon;
};

/// Live training sessions behind the HTTP API. Each session is driven
/// strictly in measure → pair → vote order; a request arriving in the wrong
/// state is rejected and leaves the session untouched.
///
/// A session started with seed s builds its map with new_map(map, s) (or
/// loads it) and draws all randomness from make_stream(s, Stream::session):
/// measure calls gather_context_sample + update_map, pair calls select_pair
/// with epsilon(t), vote calls apply_feedback and advances t.
///
/// Thread-safe: requests on one session are serialized, different sessions
/// proceed independently.
class ServiceCore {
 public:
  explicit ServiceCore(ServiceDefaults defaults = {});
  ~ServiceCore();

  ServiceResponse start_session(const nlohmann::json& body);
  ServiceResponse measure(const std::string& id);
  ServiceResponse pair(const std::string& id);
  ServiceResponse vote(const std::string& id, const nlohmann::json& body);
  ServiceResponse views(const std::string& id) const;
  ServiceResponse save(const std::string& id, const nlohmann::json& body);

  /// Dispatches a raw request:
  ///   POST /session, POST /session/{id}/{measure|pair|vote|save},
  ///   GET /session/{id}/views
  ServiceResponse handle(std::string_view method, std::string_view path, std::string_view body);

  std::optional<ContextMap> map_snapshot(const std::string& id) const;
  std::size_t session_count() const;

 private:
  struct Session;
  std::shared_ptr<Session> find(const std::string& id) const;

  ServiceDefaults defaults_;
  mutable std::shared_mutex mu_;
  std::map<std::string, std::shared_ptr<Session>> sessions_;
  std::uint64_t next_id_ = 1;
};

nlohmann::json error_body(std::string_view code, std::string_view message);

}  // namespace affecta
