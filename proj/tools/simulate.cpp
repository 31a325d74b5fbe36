#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "spindiff/config.hpp"
#include "spindiff/errors.hpp"
#include "spindiff/scenario.hpp"

namespace {

int exit_code_for(const std::string& kind) {
  if (kind == "config" || kind == "geometry" || kind == "dimension") return 2;
  if (kind == "numeric" || kind == "staleness") return 3;
  if (kind == "io") return 4;
  return 1;
}

void print_error(const std::string& kind, const std::string& message) {
  nlohmann::json err = {{"error", {{"type", kind}, {"message", message}}}};
  std::cerr << err.dump() << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spin-resolved electron diffraction simulator"};

  std::string config_path;
  std::string preset;
  std::string out_dir;
  std::vector<std::string> overrides;
  int threads = 1;
  bool list_presets = false;

  app.add_option("config", config_path, "Scenario configuration file (JSON)");
  app.add_option("--preset", preset, "Start from a named preset scenario");
  app.add_option("--out", out_dir, "Output directory (default: $SPINDIFF_OUT or ./out)");
  app.add_option("--override", overrides, "Override a configuration value, key.path=value");
  app.add_option("--threads", threads, "Worker thread count")->check(CLI::PositiveNumber);
  app.add_flag("--list-presets", list_presets, "List preset names and exit");

  CLI11_PARSE(app, argc, argv);

  if (list_presets) {
    for (const auto& name : spindiff::preset_names()) std::cout << name << "\n";
    return 0;
  }

#ifdef _OPENMP
  omp_set_num_threads(threads);
#endif

  if (out_dir.empty()) {
    const char* env = std::getenv("SPINDIFF_OUT");
    out_dir = env ? env : "out";
  }

  try {
    spindiff::ScenarioConfig cfg;
    if (!config_path.empty()) {
      std::ifstream in(config_path);
      if (!in) throw spindiff::IoError("cannot open config: " + config_path);
      std::stringstream buffer;
      buffer << in.rdbuf();
      cfg = spindiff::parse_config(buffer.str(), preset, overrides);
    } else if (!preset.empty()) {
      cfg = spindiff::make_preset(preset, overrides);
    } else {
      throw spindiff::ConfigError("provide a config file or --preset (see --list-presets)");
    }

    const std::string manifest = spindiff::run_scenario(cfg, out_dir);
    std::cout << manifest;
    return 0;
  } catch (const spindiff::Error& e) {
    print_error(e.kind(), e.what());
    return exit_code_for(e.kind());
  } catch (const std::exception& e) {
    print_error("internal", e.what());
    return 1;
  }
}
