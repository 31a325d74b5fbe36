#pragma once

#include <string>

#include "spindiff/config.hpp"
#include "spindiff/scene.hpp"

namespace spindiff {

/// Concrete realization of a config: grid, scene, packet placement and
/// the stop threshold for the grating transit. Extents not pinned by the
/// config follow the layout rules: the packet starts 4 sigma_x past the
/// absorber, the grating face sits 6 sigma_x further downstream, and the
/// snapshot plane 2 sigma_x past the back face; the y span keeps the
/// packet 4 sigma_y inside the unmasked interior and covers every slit.
struct ScenarioSetup {
  ScenarioConfig cfg;  // packet/grating positions filled in
  Grid2D grid;
  ScatteringScene scene;
  double x_stop = 0.0;   // snapshot threshold for the transit
  long steps = 0;        // resolved step budget
};

ScenarioSetup make_setup(const ScenarioConfig& cfg);

/// Executes the configured scenario pipeline (B1 rotation, gridded
/// grating transit with self-consistent fields, B2 phase imprint,
/// far-field and Husimi analysis), writes every declared output under
/// out_dir and returns the manifest JSON text (also written as
/// manifest.json).
std::string run_scenario(const ScenarioConfig& cfg, const std::string& out_dir);

}  // namespace spindiff
