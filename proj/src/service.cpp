#include "affecta/service.hpp"

#include <mutex>

#include "affecta/errors.hpp"
#include "affecta/experiment.hpp"
#include "affecta/heatmap.hpp"
#include "affecta/persistence.hpp"

namespace affecta {

using nlohmann::json;

struct ServiceCore::Session {
  Session(std::string id_, Room room_, ContextMap map_, RobotParams robot_, EpsilonSchedule eps_, Rng rng_)
      : id(std::move(id_)),
        room(std::move(room_)),
        map(std::move(map_)),
        robot(robot_),
        schedule(eps_),
        rng(std::move(rng_)) {}

  std::string id;
  Room room;
  ContextMap map;
  RobotParams robot;
  EpsilonSchedule schedule;
  Rng rng;
  int t = 0;
  std::optional<GridPos> bmu;
  std::optional<BehaviorPair> pending;
  mutable std::mutex mu;
};

json error_body(std::string_view code, std::string_view message) {
  return {{"code", code}, {"message", message}};
}

namespace {

ServiceResponse bad_request(std::string_view msg) { return {400, error_body("bad_request", msg)}; }
ServiceResponse not_found(std::string_view msg) { return {404, error_body("not_found", msg)}; }
ServiceResponse conflict(std::string_view msg) { return {409, error_body("conflict", msg)}; }

json pos_json(GridPos p) { return {{"col", p.col}, {"row", p.row}}; }

json behavior_json(const Behavior& b) {
  return {{"id", b.id},
          {"label", b.label},
          {"movement_amplitude", b.movement_amplitude},
          {"gesture_amplitude", b.gesture_amplitude},
          {"has_movement", b.has_movement}};
}

json pair_json(const BehaviorPair& p) {
  const auto behaviors = default_behaviors();
  return {{"a", behavior_json(behaviors[static_cast<std::size_t>(p.first)])},
          {"b", behavior_json(behaviors[static_cast<std::size_t>(p.second)])},
          {"mode", to_string(p.mode)}};
}

template <typename T>
void overlay(const json& obj, const char* key, T& out) {
  if (auto it = obj.find(key); it != obj.end()) out = it->get<T>();
}

}  // namespace

ServiceCore::ServiceCore(ServiceDefaults defaults) : defaults_(std::move(defaults)) {}
ServiceCore::~ServiceCore() = default;

std::shared_ptr<ServiceCore::Session> ServiceCore::find(const std::string& id) const {
  std::shared_lock lock(mu_);
  auto it = sessions_.find(id);
  return it == sessions_.end() ? nullptr : it->second;
}

std::size_t ServiceCore::session_count() const {
  std::shared_lock lock(mu_);
  return sessions_.size();
}

ServiceResponse ServiceCore::start_session(const json& body) {
  if (!body.is_object()) return bad_request("request body must be a JSON object");
  Room room;
  MapConfig map_cfg = defaults_.map;
  RobotParams robot = defaults_.robot;
  EpsilonSchedule schedule = defaults_.epsilon;
  std::uint64_t seed = 1;
  std::optional<std::string> load;
  try {
    const json& r = body.at("room");
    if (!r.is_object()) return bad_request("'room' must be an object");
    room.width = r.at("width").get<double>();
    room.length = r.at("length").get<double>();
    overlay(r, "label", room.label);
    if (auto it = body.find("seed"); it != body.end()) {
      if (!it->is_number_unsigned()) return bad_request("'seed' must be a non-negative integer");
      seed = it->get<std::uint64_t>();
    }
    if (auto it = body.find("load"); it != body.end()) load = it->get<std::string>();
    if (auto it = body.find("map"); it != body.end()) {
      overlay(*it, "width", map_cfg.width);
      overlay(*it, "height", map_cfg.height);
      overlay(*it, "attr_count", map_cfg.attr_count);
      overlay(*it, "weights", map_cfg.weights.weights);
      overlay(*it, "base_learning_rate", map_cfg.base_learning_rate);
      overlay(*it, "neighborhood_radius", map_cfg.neighborhood_radius);
    }
    if (auto it = body.find("robot"); it != body.end()) {
      overlay(*it, "speed", robot.speed);
      overlay(*it, "t_max", robot.t_max);
      overlay(*it, "min_drive", robot.min_drive);
      overlay(*it, "noise_sigma", robot.noise_sigma);
    }
    if (auto it = body.find("epsilon"); it != body.end()) {
      overlay(*it, "initial", schedule.initial);
      overlay(*it, "decay", schedule.decay);
      overlay(*it, "floor", schedule.floor);
    }
    room.validate();
    robot.validate();
    schedule.validate();
  } catch (const json::exception& e) {
    return bad_request(e.what());
  } catch (const std::invalid_argument& e) {
    return bad_request(e.what());
  }

  std::optional<ContextMap> map;
  try {
    map = load ? load_map(*load) : new_map(map_cfg, seed);
  } catch (const std::exception& e) {
    return bad_request(e.what());
  }
  if (map->attr_count() != 1) return bad_request("sessions measure a single attribute; map attr_count must be 1");

  std::unique_lock lock(mu_);
  const std::string id = "s" + std::to_string(next_id_++);
  auto session = std::make_shared<Session>(id, room, std::move(*map), robot, schedule,
                                           make_stream(seed, Stream::session));
  json echo = {{"session", id},
               {"t", 0},
               {"seed", seed},
               {"room", {{"label", room.label}, {"width", room.width}, {"length", room.length}}},
               {"map",
                {{"width", session->map.width()},
                 {"height", session->map.height()},
                 {"attr_count", session->map.attr_count()},
                 {"base_learning_rate", session->map.base_learning_rate()},
                 {"neighborhood_radius", session->map.neighborhood_radius()},
                 {"rng_seed", session->map.rng_seed()}}},
               {"epsilon", {{"initial", schedule.initial}, {"decay", schedule.decay}, {"floor", schedule.floor}}},
               {"robot",
                {{"speed", robot.speed},
                 {"t_max", robot.t_max},
                 {"min_drive", robot.min_drive},
                 {"noise_sigma", robot.noise_sigma}}},
               {"loaded", load.has_value()},
               {"pending", nullptr}};
  sessions_.emplace(id, std::move(session));
  return {201, std::move(echo)};
}

ServiceResponse ServiceCore::measure(const std::string& id) {
  auto s = find(id);
  if (!s) return not_found("unknown session '" + id + "'");
  std::lock_guard lock(s->mu);
  if (s->pending) return conflict("a behavior pair is awaiting a vote");
  // work on copies so a failure leaves the session untouched
  Rng rng = s->rng;
  ContextVector sample;
  try {
    sample = gather_context_sample(s->room, s->robot, rng);
  } catch (const DegenerateRoomError& e) {
    return conflict(e.what());
  }
  const GridPos bmu = update_map(s->map, sample);
  s->rng = rng;
  s->bmu = bmu;
  return {200, {{"sample", sample.attrs}, {"bmu", pos_json(bmu)}, {"t", s->t}}};
}

ServiceResponse ServiceCore::pair(const std::string& id) {
  auto s = find(id);
  if (!s) return not_found("unknown session '" + id + "'");
  std::lock_guard lock(s->mu);
  if (!s->bmu) return conflict("measure before requesting a pair");
  if (s->pending) return conflict("a behavior pair is already awaiting a vote");
  const double eps = epsilon(s->schedule, s->t);
  s->pending = select_pair(s->map.at(*s->bmu).behaviors, eps, s->rng);
  json out = pair_json(*s->pending);
  out["epsilon"] = eps;
  out["t"] = s->t;
  return {200, std::move(out)};
}

ServiceResponse ServiceCore::vote(const std::string& id, const json& body) {
  auto s = find(id);
  if (!s) return not_found("unknown session '" + id + "'");
  std::lock_guard lock(s->mu);
  if (!s->pending) return conflict("no behavior pair is awaiting a vote");
  if (!body.is_object() || !body.contains("winner") || !body["winner"].is_number_integer()) {
    return bad_request("body must be {\"winner\": <behavior id>}");
  }
  const int winner = body["winner"].get<int>();
  const BehaviorPair p = *s->pending;
  if (winner != p.first && winner != p.second) return bad_request("winner is not one of the presented pair");
  const BehaviorId loser = winner == p.first ? p.second : p.first;
  apply_feedback(s->map, *s->bmu, winner, loser);
  ++s->t;
  s->pending.reset();
  return {200,
          {{"bmu", pos_json(*s->bmu)}, {"fitness", fitness_table(s->map.at(*s->bmu).behaviors)}, {"t", s->t}}};
}

ServiceResponse ServiceCore::views(const std::string& id) const {
  auto s = find(id);
  if (!s) return not_found("unknown session '" + id + "'");
  std::lock_guard lock(s->mu);
  json out = {{"session", s->id},
              {"t", s->t},
              {"epsilon", epsilon(s->schedule, s->t)},
              {"attribute", heatmap_to_json(export_heatmap(s->map, HeatmapLayer::attribute(0)))},
              {"behavior", heatmap_to_json(export_heatmap(s->map, HeatmapLayer::top_behavior()))},
              {"bmu", nullptr},
              {"fitness", nullptr},
              {"pending", nullptr}};
  if (s->bmu) {
    out["bmu"] = pos_json(*s->bmu);
    out["fitness"] = fitness_table(s->map.at(*s->bmu).behaviors);
  }
  if (s->pending) out["pending"] = pair_json(*s->pending);
  return {200, std::move(out)};
}

ServiceResponse ServiceCore::save(const std::string& id, const json& body) {
  auto s = find(id);
  if (!s) return not_found("unknown session '" + id + "'");
  if (!body.is_object() || !body.contains("path") || !body["path"].is_string()) {
    return bad_request("body must be {\"path\": <file path>}");
  }
  const std::string path = body["path"].get<std::string>();
  std::lock_guard lock(s->mu);
  try {
    save_map(s->map, path);
  } catch (const std::exception& e) {
    return bad_request(e.what());
  }
  return {200, {{"saved", path}, {"t", s->t}}};
}

std::optional<ContextMap> ServiceCore::map_snapshot(const std::string& id) const {
  auto s = find(id);
  if (!s) return std::nullopt;
  std::lock_guard lock(s->mu);
  return s->map;
}

ServiceResponse ServiceCore::handle(std::string_view method, std::string_view path, std::string_view body) {
  json parsed = json::object();
  if (!body.empty()) {
    parsed = json::parse(body, nullptr, false);
    if (parsed.is_discarded()) return bad_request("request body is not valid JSON");
  }

  if (path == "/session") {
    if (method != "POST") return {405, error_body("method_not_allowed", "use POST /session")};
    return start_session(parsed);
  }
  constexpr std::string_view prefix = "/session/";
  if (!path.starts_with(prefix)) return not_found("no such endpoint");
  const std::string_view rest = path.substr(prefix.size());
  const auto slash = rest.find('/');
  if (slash == std::string_view::npos || slash == 0) return not_found("no such endpoint");
  const std::string id(rest.substr(0, slash));
  const std::string_view action = rest.substr(slash + 1);

  if (action == "views") {
    if (method != "GET") return {405, error_body("method_not_allowed", "use GET")};
    return views(id);
  }
  if (action != "measure" && action != "pair" && action != "vote" && action != "save") {
    return not_found("no such endpoint");
  }
  if (method != "POST") return {405, error_body("method_not_allowed", "use POST")};
  if (action == "measure") return measure(id);
  if (action == "pair") return pair(id);
  if (action == "vote") return vote(id, parsed);
  return save(id, parsed);
}

}  // namespace affecta
