#include "spindiff/grid.hpp"

#include <string>

#include "spindiff/errors.hpp"

namespace spindiff {

namespace {

int cells_for(double extent, double spacing) {
  // Tolerant ceiling: an extent that is an exact multiple of the spacing
  // up to roundoff must not gain an extra cell.
  const double r = extent / spacing;
  return static_cast<int>(std::ceil(r * (1.0 - 1e-12)));
}

}  // namespace

Grid2D make_grid(double extent_x, double extent_y, double spacing, double x0, double y0) {
  if (!(extent_x > 0.0) || !(extent_y > 0.0))
    throw ConfigError("grid extents must be positive");
  if (!(spacing > 0.0)) throw ConfigError("grid spacing must be positive");

  Grid2D g;
  g.nx = cells_for(extent_x, spacing);
  g.ny = cells_for(extent_y, spacing);
  g.dx = spacing;
  g.dy = spacing;
  g.x0 = x0;
  g.y0 = y0;
  if (g.nx < 16 || g.ny < 16)
    throw ConfigError("grid too small: " + std::to_string(g.nx) + "x" + std::to_string(g.ny) +
                      " (need >= 16 cells per axis)");
  return g;
}

int next_fft_size(int n) {
  for (int m = n;; ++m) {
    int r = m;
    while (r % 2 == 0) r /= 2;
    while (r % 3 == 0) r /= 3;
    while (r % 5 == 0) r /= 5;
    if (r == 1) return m;
  }
}

}  // namespace spindiff
