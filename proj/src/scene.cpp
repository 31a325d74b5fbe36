#include "spindiff/scene.hpp"

#include "spindiff/parallel.hpp"

namespace spindiff {

ScatteringScene make_scene(const Grid2D& grid, const std::optional<GratingSpec>& grating,
                           const AbsorberSpec& absorber) {
  ScatteringScene scene;
  scene.grid = grid;
  scene.grating = grating;
  scene.absorber = absorber;

  if (grating) {
    scene.v_scalar = geometric_potential(grid, *grating);
    const RealField v_img = image_potential(grid, *grating);
    parallel_rows(grid.nx, [&](int ix) {
      for (int iy = 0; iy < grid.ny; ++iy)
        scene.v_scalar.at(ix, iy) += v_img.at(ix, iy);
    });
  } else {
    scene.v_scalar = RealField(grid, 0.0);
  }

  scene.mask = absorber.enabled ? absorbing_mask(grid, absorber) : RealField(grid, 1.0);
  return scene;
}

}  // namespace spindiff
