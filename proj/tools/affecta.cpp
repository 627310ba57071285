// affecta: command-line front end for exploration, training, validation,
// heatmap export, seed sweeps, the live training service, and replay.

#include <algorithm>
#include <csignal>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "affecta/config.hpp"
#include "affecta/experiment.hpp"
#include "affecta/heatmap.hpp"
#include "affecta/persistence.hpp"
#include "affecta/service.hpp"
#include "affecta/service_http.hpp"

namespace fs = std::filesystem;
using namespace affecta;

namespace {

struct CommonFlags {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::string out_dir;
};

ExperimentConfig resolve_config(const CommonFlags& f) {
  ExperimentConfig cfg = f.config_path.empty() ? ExperimentConfig{} : load_config(f.config_path);
  if (f.seed) cfg.seed = *f.seed;
  if (!f.out_dir.empty()) cfg.output.dir = f.out_dir;
  cfg.validate();
  return cfg;
}

void write_outputs(const MapRun& run, const fs::path& dir) {
  fs::create_directories(dir);
  save_report(run.report, dir / "report.json");
  save_map(run.map, dir / "map.json");
  write_heatmap(export_heatmap(run.map, HeatmapLayer::attribute(0)), dir, "heatmap_attribute");
  if (run.report.command != "explore") {
    write_heatmap(export_heatmap(run.map, HeatmapLayer::top_behavior()), dir, "heatmap_behavior");
  }
}

void print_regions(const RunReport& report) {
  for (const RegionSummary& r : report.regions) {
    std::cout << "  " << r.room << ": bmu (" << r.bmu.col << "," << r.bmu.row << ") attribute " << r.attribute
              << " top " << r.top << " fitness [" << r.fitness[0] << ", " << r.fitness[1] << ", " << r.fitness[2]
              << ", " << r.fitness[3] << "]\n";
  }
}

HttpService* g_http = nullptr;

void on_signal(int) {
  if (g_http) g_http->stop();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"affecta: context map + pairwise behavior prioritization"};
  app.require_subcommand(1);

  CommonFlags flags;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", flags.config_path, "JSON config file")->check(CLI::ExistingFile);
    sub->add_option("--seed", flags.seed, "Master seed (overrides map.seed)");
    sub->add_option("--out", flags.out_dir, "Output directory");
  };

  auto* explore = app.add_subcommand("explore", "Phase 1: build the context map");
  auto* train = app.add_subcommand("train", "Phases 1 and 2: context map and behavior priorities");
  auto* validate = app.add_subcommand("validate", "Pick a behavior for the validation room");
  std::string validate_map;
  validate->add_option("--map", validate_map, "Use a persisted map instead of training one")
      ->check(CLI::ExistingFile);

  auto* heatmap = app.add_subcommand("heatmap", "Export a heatmap layer of a persisted map");
  std::string heatmap_map;
  std::string layer_text = "attribute:0";
  int scale = 16;
  bool ascii = false;
  heatmap->add_option("--map", heatmap_map, "Persisted map")->required()->check(CLI::ExistingFile);
  heatmap->add_option("--layer", layer_text, "attribute:<i> or behavior");
  heatmap->add_option("--scale", scale, "Pixels per cell in the PPM")->check(CLI::PositiveNumber);
  heatmap->add_flag("--ascii", ascii, "Also print the grid to the terminal");

  auto* sweep = app.add_subcommand("sweep", "Run many seeds and report outcome rates");
  int runs = 100;
  int threads = 0;
  sweep->add_option("--runs", runs, "Number of seeds")->check(CLI::NonNegativeNumber);
  sweep->add_option("--threads", threads, "Worker threads (0 = hardware)");

  auto* serve = app.add_subcommand("serve", "Run the HTTP training service");
  HttpOptions http;
  serve->add_option("--host", http.host, "Bind address");
  serve->add_option("--port", http.port, "Port (0 = any free port)");
  serve->add_option("--ui-dir", http.ui_dir, "Static trainer UI bundle")->check(CLI::ExistingDirectory);

  auto* replay_cmd = app.add_subcommand("replay", "Re-execute a run report and verify it reproduces");
  std::string report_path;
  replay_cmd->add_option("--report", report_path, "Run report")->required()->check(CLI::ExistingFile);

  for (CLI::App* sub : {explore, train, validate, heatmap, sweep, serve, replay_cmd}) add_common(sub);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (*explore || *train || *validate) {
      const ExperimentConfig cfg = resolve_config(flags);
      const std::string command = *explore ? "explore" : *train ? "train" : "validate";
      std::optional<std::string> input_map;
      if (*validate && !validate_map.empty()) input_map = validate_map;
      const MapRun run = run_command(command, cfg, input_map);
      write_outputs(run, cfg.output.dir);
      std::cout << command << " (seed " << cfg.seed << ") -> " << cfg.output.dir << "\n";
      print_regions(run.report);
      if (run.report.validation_choice) std::cout << "  chosen behavior: " << *run.report.validation_choice << "\n";
      return 0;
    }

    if (*heatmap) {
      const ContextMap map = load_map(heatmap_map);
      const Heatmap h = export_heatmap(map, HeatmapLayer::parse(layer_text));
      const fs::path dir = flags.out_dir.empty() ? fs::path(".") : fs::path(flags.out_dir);
      std::string stem = "heatmap_" + h.layer;
      std::replace(stem.begin(), stem.end(), ':', '_');
      write_heatmap(h, dir, stem, scale);
      if (ascii) std::cout << render_ascii(h);
      std::cout << "wrote " << (dir / (stem + ".json")).string() << " and .ppm\n";
      return 0;
    }

    if (*sweep) {
      const ExperimentConfig cfg = resolve_config(flags);
      const auto outcomes = run_sweep(cfg, runs, cfg.seed, threads);
      const SweepSummary summary = summarize_sweep(cfg, outcomes);
      nlohmann::json doc = {{"summary", summary.to_json()}, {"outcomes", nlohmann::json::array()}};
      for (const auto& o : outcomes) doc["outcomes"].push_back(seed_outcome_to_json(o));
      if (!flags.out_dir.empty()) {
        fs::create_directories(flags.out_dir);
        std::ofstream(fs::path(flags.out_dir) / "sweep.json") << doc.dump(2) << '\n';
      }
      std::cout << summary.to_json().dump(2) << '\n';
      return 0;
    }

    if (*serve) {
      ServiceDefaults defaults;
      if (!flags.config_path.empty() || flags.seed) {
        const ExperimentConfig cfg = resolve_config(flags);
        defaults.map = cfg.map;
        defaults.robot = cfg.robot;
        defaults.epsilon = cfg.phase2.epsilon;
      }
      ServiceCore core(defaults);
      HttpService server(core, http);
      const int port = server.bind();
      g_http = &server;
      std::signal(SIGINT, on_signal);
      std::signal(SIGTERM, on_signal);
      std::cout << "serving on http://" << http.host << ":" << port << std::endl;
      server.serve();
      g_http = nullptr;
      return 0;
    }

    if (*replay_cmd) {
      const RunReport report = load_report(report_path);
      const ReplayResult r = replay(report);
      if (!r.identical) {
        std::cerr << "replay mismatch: regenerated run differs from " << report_path << "\n";
        return 1;
      }
      std::cout << "replay ok: " << report.command << " (seed " << report.config.seed << ") reproduced exactly\n";
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
