#pragma once

#include <optional>

#include "spindiff/potentials.hpp"

namespace spindiff {

/// Grid-resolved stage windows. The analytic stage operators
/// (apply_b1_rotation / apply_b2_phase) are the default route; these
/// windows exist for cross-validation over lengths that fit the grid.
struct GridB1Window {
  bool enabled = false;
  double b1 = 0.0;  // T, uniform Bx inside the window
  double x_start = 0.0, x_end = 0.0;
};

struct GridB2Window {
  bool enabled = false;
  double g2 = 0.0;  // T/m, Bz = g2 * y inside the window
  double x_start = 0.0, x_end = 0.0;
};

/// Everything static the propagator needs: scalar potential (geometric +
/// image, in J), boundary mask, grating geometry, and stage windows.
struct ScatteringScene {
  Grid2D grid;
  std::optional<GratingSpec> grating;
  AbsorberSpec absorber;
  RealField v_scalar;  // J
  RealField mask;
  GridB1Window grid_b1;
  GridB2Window grid_b2;
};

ScatteringScene make_scene(const Grid2D& grid, const std::optional<GratingSpec>& grating,
                           const AbsorberSpec& absorber);

}  // namespace spindiff
