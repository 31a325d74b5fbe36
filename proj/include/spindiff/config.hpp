#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "spindiff/packet.hpp"
#include "spindiff/potentials.hpp"
#include "spindiff/propagator.hpp"

namespace spindiff {

/// Fully resolved scenario description, SI throughout. Grid layout and
/// stage placement are derived later (scenario layer); the config stays
/// declarative. `canonical` is the deterministic serialization of the
/// resolved values and `hash` its FNV-1a digest.
struct ScenarioConfig {
  std::string scenario;
  double scale = 1.0;

  double spacing = 0.0;  // m; 0 = lambda_dB / 10
  double extent_x = 0.0, extent_y = 0.0;  // m; 0 = derive from layout rules

  PacketSpec packet;  // x0c/y0c filled during layout
  bool grating_enabled = true;
  GratingSpec grating;  // x_front filled during layout
  AbsorberSpec absorber;

  // stages (analytic by default; "grid" modes are cross-validation aids)
  double b1 = 0.0;          // T, resolved (chi * B_pi when given as chi)
  double chi_value = 0.0;
  double l_b1 = 0.1;        // m
  bool b1_grid_mode = false;
  double g2 = 0.0;          // T/m
  double l_b2 = 0.0;        // m
  bool b2_enabled = false;
  bool b2_grid_mode = false;
  double l_gs = 0.5;        // m

  StepPlan plan;            // max_steps < 0 = derive from geometry
  int pad_factor = 8;

  bool husimi_enabled = false;
  double husimi_probe = 0.0;  // m; 0 = sigma_y
  int husimi_y0_points = 192;
  int husimi_ky0_points = 768;
  int husimi_pad = 4;

  std::vector<double> chi_values;
  std::vector<double> l_b2_values;
  bool b1_transit_shared = true;

  bool dump_fields = false;
  long record_every = 10;

  std::string canonical;
  std::uint64_t hash = 0;
};

std::vector<std::string> preset_names();

/// Builds a config from a preset name plus optional "path.key=value"
/// overrides (values parsed as JSON, falling back to plain strings).
ScenarioConfig make_preset(const std::string& name,
                           const std::vector<std::string>& overrides = {});

/// Parses a user configuration document (JSON text). Defaults come from
/// the preset selected by the document's "scenario" key
/// (or preset_name when non-empty); unknown keys are rejected with their
/// path. Overrides apply last.
ScenarioConfig parse_config(const std::string& json_text,
                            const std::string& preset_name = "",
                            const std::vector<std::string>& overrides = {});

}  // namespace spindiff
