#include "affecta/report.hpp"

#include <fstream>

#include "affecta/errors.hpp"

namespace affecta {

using nlohmann::json;

namespace {

json pos_json(GridPos p) { return {{"col", p.col}, {"row", p.row}}; }
GridPos pos_from(const json& j) { return {j.at("col").get<int>(), j.at("row").get<int>()}; }

}  // namespace

json report_to_json(const RunReport& r) {
  json updates = json::array();
  for (const UpdateEvent& u : r.updates) {
    updates.push_back({{"step", u.step}, {"room", u.room}, {"sample", u.sample.attrs}, {"bmu", pos_json(u.bmu)}});
  }
  json votes = json::array();
  for (const VoteEvent& v : r.votes) {
    votes.push_back({{"t", v.t},
                     {"room", v.room},
                     {"participant", v.participant},
                     {"sample", v.sample.attrs},
                     {"bmu", pos_json(v.bmu)},
                     {"epsilon", v.epsilon},
                     {"mode", to_string(v.pair.mode)},
                     {"pair", {v.pair.first, v.pair.second}},
                     {"winner", v.winner}});
  }
  json validation = json::array();
  for (const ValidationAttempt& a : r.validation) {
    validation.push_back({{"sample", a.sample.attrs}, {"bmu", pos_json(a.bmu)}, {"choice", a.choice}});
  }
  json regions = json::array();
  for (const RegionSummary& g : r.regions) {
    regions.push_back({{"room", g.room},
                       {"probe", g.probe.attrs},
                       {"bmu", pos_json(g.bmu)},
                       {"attribute", g.attribute},
                       {"fitness", g.fitness},
                       {"top", g.top}});
  }
  json doc = {{"command", r.command},       {"seed", r.config.seed},   {"config", config_to_json(r.config)},
              {"updates", std::move(updates)}, {"votes", std::move(votes)}, {"validation", std::move(validation)},
              {"regions", std::move(regions)}};
  doc["validation_choice"] = r.validation_choice ? json(*r.validation_choice) : json(nullptr);
  doc["input_map"] = r.input_map ? json(*r.input_map) : json(nullptr);
  doc["map_digest"] = r.map_digest ? json(*r.map_digest) : json(nullptr);
  return doc;
}

RunReport report_from_json(const json& doc) {
  try {
    RunReport r;
    r.command = doc.at("command").get<std::string>();
    r.config = config_from_json(doc.at("config"));
    for (const json& u : doc.at("updates")) {
      r.updates.push_back({u.at("step").get<int>(), u.at("room").get<std::string>(),
                           {u.at("sample").get<std::vector<double>>()}, pos_from(u.at("bmu"))});
    }
    for (const json& v : doc.at("votes")) {
      VoteEvent e;
      e.t = v.at("t").get<int>();
      e.room = v.at("room").get<std::string>();
      e.participant = v.at("participant").get<int>();
      e.sample.attrs = v.at("sample").get<std::vector<double>>();
      e.bmu = pos_from(v.at("bmu"));
      e.epsilon = v.at("epsilon").get<double>();
      e.pair.mode = selection_mode_from_string(v.at("mode").get<std::string>());
      e.pair.first = v.at("pair").at(0).get<int>();
      e.pair.second = v.at("pair").at(1).get<int>();
      e.winner = v.at("winner").get<int>();
      r.votes.push_back(std::move(e));
    }
    for (const json& a : doc.at("validation")) {
      r.validation.push_back(
          {{a.at("sample").get<std::vector<double>>()}, pos_from(a.at("bmu")), a.at("choice").get<int>()});
    }
    for (const json& g : doc.at("regions")) {
      RegionSummary s;
      s.room = g.at("room").get<std::string>();
      s.probe.attrs = g.at("probe").get<std::vector<double>>();
      s.bmu = pos_from(g.at("bmu"));
      s.attribute = g.at("attribute").get<double>();
      s.fitness = g.at("fitness").get<std::array<double, kBehaviorCount>>();
      s.top = g.at("top").get<int>();
      r.regions.push_back(std::move(s));
    }
    if (const json& c = doc.at("validation_choice"); !c.is_null()) r.validation_choice = c.get<int>();
    if (auto it = doc.find("input_map"); it != doc.end() && !it->is_null()) r.input_map = it->get<std::string>();
    if (const json& d = doc.at("map_digest"); !d.is_null()) r.map_digest = d.get<std::uint64_t>();
    return r;
  } catch (const json::exception& e) {
    throw DecodeError(std::string("run report: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw DecodeError(std::string("run report: ") + e.what());
  }
}

void save_report(const RunReport& report, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out << report_to_json(report).dump(2) << '\n';
}

RunReport load_report(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  try {
    return report_from_json(json::parse(in));
  } catch (const json::parse_error& e) {
    throw DecodeError(std::string("run report: ") + e.what());
  }
}

}  // namespace affecta
