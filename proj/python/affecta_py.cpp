// Python bindings. Structured documents (configs, reports, maps, heatmaps,
// service payloads) cross the boundary as JSON text; the affecta package
// turns them into dicts.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "affecta/binomial.hpp"
#include "affecta/errors.hpp"
#include "affecta/experiment.hpp"
#include "affecta/heatmap.hpp"
#include "affecta/persistence.hpp"
#include "affecta/service.hpp"

namespace py = pybind11;
using namespace affecta;
using nlohmann::json;

namespace {

ExperimentConfig config_from_text(const std::optional<std::string>& text) {
  return text ? config_from_json(json::parse(*text)) : ExperimentConfig{};
}

}  // namespace

PYBIND11_MODULE(_affecta, m) {
  m.doc() = "affecta core: context map, behavior prioritization, simulation and service";

  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<ArgumentError>(m, "ArgumentError", PyExc_ValueError);
  py::register_exception<DecodeError>(m, "DecodeError", PyExc_ValueError);
  py::register_exception<DegenerateRoomError>(m, "DegenerateRoomError", PyExc_RuntimeError);

  py::class_<Rng>(m, "Rng")
      .def(py::init<std::uint64_t>(), py::arg("seed"))
      .def("__call__", [](Rng& r) { return r(); });
  m.def("make_stream", [](std::uint64_t seed, std::uint32_t stream) { return make_stream(seed, static_cast<Stream>(stream)); },
        py::arg("seed"), py::arg("stream"));

  py::class_<GridPos>(m, "GridPos")
      .def(py::init<int, int>(), py::arg("col"), py::arg("row"))
      .def_readwrite("col", &GridPos::col)
      .def_readwrite("row", &GridPos::row)
      .def("__eq__", [](const GridPos& a, const GridPos& b) { return a == b; })
      .def("__iter__", [](const GridPos& p) { return py::iter(py::make_tuple(p.col, p.row)); })
      .def("__repr__", [](const GridPos& p) { return "GridPos(" + std::to_string(p.col) + ", " + std::to_string(p.row) + ")"; });

  py::class_<MapConfig>(m, "MapConfig")
      .def(py::init<>())
      .def_readwrite("width", &MapConfig::width)
      .def_readwrite("height", &MapConfig::height)
      .def_readwrite("attr_count", &MapConfig::attr_count)
      .def_property(
          "weights", [](const MapConfig& c) { return c.weights.weights; },
          [](MapConfig& c, std::vector<double> w) { c.weights.weights = std::move(w); })
      .def_readwrite("base_learning_rate", &MapConfig::base_learning_rate)
      .def_readwrite("neighborhood_radius", &MapConfig::neighborhood_radius);

  py::class_<ContextMap>(m, "ContextMap")
      .def_property_readonly("width", &ContextMap::width)
      .def_property_readonly("height", &ContextMap::height)
      .def_property_readonly("attr_count", &ContextMap::attr_count)
      .def_property_readonly("rng_seed", &ContextMap::rng_seed)
      .def("attrs", [](const ContextMap& map, GridPos p) { return map.at(p).vector.attrs; }, py::arg("pos"))
      .def("fitness", [](const ContextMap& map, GridPos p) { return fitness_table(map.at(p).behaviors); }, py::arg("pos"))
      .def("top_behavior", [](const ContextMap& map, GridPos p) { return top_behavior(map.at(p).behaviors); }, py::arg("pos"))
      .def("to_json", [](const ContextMap& map) { return encode_map(map).dump(); })
      .def("digest", &map_digest)
      .def("__eq__", [](const ContextMap& a, const ContextMap& b) { return a == b; })
      .def("__copy__", [](const ContextMap& map) { return map; });

  m.def("new_map", py::overload_cast<const MapConfig&, std::uint64_t>(&new_map), py::arg("config"), py::arg("seed"));
  m.def("map_from_json", [](const std::string& text) { return decode_map(json::parse(text)); }, py::arg("text"));
  m.def("save_map", [](const ContextMap& map, const std::string& path) { save_map(map, path); });
  m.def("load_map", [](const std::string& path) { return load_map(path); });
  m.def("weighted_distance",
        [](std::vector<double> a, std::vector<double> b, std::vector<double> w) {
          return weighted_distance({std::move(a)}, {std::move(b)}, {std::move(w)});
        });
  m.def("grid_step_distance", &grid_step_distance);
  m.def("best_matching_unit", [](const ContextMap& map, std::vector<double> x) { return best_matching_unit(map, {std::move(x)}); });
  m.def("update_map", [](ContextMap& map, std::vector<double> x) { return update_map(map, {std::move(x)}); });
  m.def("apply_feedback", &apply_feedback, py::arg("map"), py::arg("bmu"), py::arg("winner"), py::arg("loser"));
  m.def("epsilon",
        [](int t, double initial, double decay, double floor) { return epsilon(EpsilonSchedule{initial, decay, floor}, t); },
        py::arg("t"), py::arg("initial") = 0.8, py::arg("decay") = 0.97, py::arg("floor") = 0.1);
  m.def(
      "select_pair",
      [](const ContextMap& map, GridPos bmu, double eps, Rng& rng) {
        const BehaviorPair p = select_pair(map.at(bmu).behaviors, eps, rng);
        return py::make_tuple(p.first, p.second, std::string(to_string(p.mode)));
      },
      py::arg("map"), py::arg("bmu"), py::arg("eps"), py::arg("rng"));

  py::class_<Room>(m, "Room")
      .def(py::init([](double w, double l, std::string label) { return Room{w, l, std::move(label)}; }), py::arg("width"),
           py::arg("length"), py::arg("label") = "room")
      .def_readwrite("width", &Room::width)
      .def_readwrite("length", &Room::length)
      .def_readwrite("label", &Room::label)
      .def_property_readonly("area", &Room::area);
  py::class_<RobotParams>(m, "RobotParams")
      .def(py::init<>())
      .def_readwrite("speed", &RobotParams::speed)
      .def_readwrite("t_max", &RobotParams::t_max)
      .def_readwrite("min_drive", &RobotParams::min_drive)
      .def_readwrite("noise_sigma", &RobotParams::noise_sigma);
  m.def("distance_to_wall", &distance_to_wall);
  m.def(
      "gather_context_sample",
      [](const Room& room, const RobotParams& rp, Rng& rng, int n) { return gather_context_sample(room, rp, rng, n).attrs; },
      py::arg("room"), py::arg("robot"), py::arg("rng"), py::arg("n_success") = 3);
  m.def("preferred_intensity", &preferred_intensity);

  m.def("binomial_tail", &binomial_tail, py::arg("k"), py::arg("n"), py::arg("p"));
  m.def("binomial_tail_normal_approx", &binomial_tail_normal_approx, py::arg("k"), py::arg("n"), py::arg("p"));

  m.def("default_config", [] { return config_to_json(ExperimentConfig{}).dump(); });
  m.def(
      "run_command",
      [](const std::string& command, const std::optional<std::string>& config, const std::optional<std::string>& input_map) {
        const ExperimentConfig cfg = config_from_text(config);
        py::gil_scoped_release release;
        MapRun run = run_command(command, cfg, input_map);
        return std::make_pair(std::move(run.map), report_to_json(run.report).dump());
      },
      py::arg("command"), py::arg("config") = py::none(), py::arg("input_map") = py::none());
  m.def("replay", [](const std::string& report) { return replay(report_from_json(json::parse(report))).identical; });
  m.def(
      "sweep",
      [](int runs, const std::optional<std::string>& config, std::uint64_t first_seed, int threads) {
        const ExperimentConfig cfg = config_from_text(config);
        std::vector<SeedOutcome> outcomes;
        {
          py::gil_scoped_release release;
          outcomes = run_sweep(cfg, runs, first_seed, threads);
        }
        json doc = {{"summary", summarize_sweep(cfg, outcomes).to_json()}, {"outcomes", json::array()}};
        for (const SeedOutcome& o : outcomes) doc["outcomes"].push_back(seed_outcome_to_json(o));
        return doc.dump();
      },
      py::arg("runs"), py::arg("config") = py::none(), py::arg("first_seed") = 1, py::arg("threads") = 0);
  m.def(
      "heatmap",
      [](const ContextMap& map, const std::string& layer) {
        return heatmap_to_json(export_heatmap(map, HeatmapLayer::parse(layer))).dump();
      },
      py::arg("map"), py::arg("layer") = "attribute:0");
  m.def("render_ppm", [](const ContextMap& map, const std::string& layer, int scale) {
    return py::bytes(render_ppm(export_heatmap(map, HeatmapLayer::parse(layer)), scale));
  }, py::arg("map"), py::arg("layer") = "attribute:0", py::arg("scale") = 16);

  py::class_<ServiceCore>(m, "ServiceCore")
      .def(py::init<>())
      .def(
          "handle",
          [](ServiceCore& core, const std::string& method, const std::string& path, const std::string& body) {
            const ServiceResponse r = core.handle(method, path, body);
            return py::make_tuple(r.status, r.body.dump());
          },
          py::arg("method"), py::arg("path"), py::arg("body") = "")
      .def("map_snapshot", &ServiceCore::map_snapshot)
      .def_property_readonly("session_count", &ServiceCore::session_count);
}
