#include "spindiff/potentials.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "spindiff/constants.hpp"
#include "spindiff/parallel.hpp"

namespace spindiff {

std::vector<double> GratingSpec::slit_centers() const {
  std::vector<double> centers(n_slits);
  for (int i = 0; i < n_slits; ++i)
    centers[i] = y_center + (i - 0.5 * (n_slits - 1)) * period;
  return centers;
}

void GratingSpec::validate() const {
  if (!(period > 0.0)) throw ConfigError("grating period must be positive");
  if (!(open_fraction > 0.0 && open_fraction < 1.0))
    throw ConfigError("grating open_fraction must lie in (0,1)");
  if (!(thickness > 0.0)) throw ConfigError("grating thickness must be positive");
  if (!(v0 > 0.0)) throw ConfigError("grating barrier v0 must be positive");
  if (!(eta > 0.0 && eta < 1.0)) throw ConfigError("grating eta must lie in (0,1)");
  if (n_slits < 1) throw ConfigError("grating needs at least one slit");
}

namespace {

void require_slits_inside(const Grid2D& grid, const GratingSpec& g) {
  const double w = g.slit_width();
  const double y_min = grid.y0;
  const double y_max = grid.y0 + grid.extent_y();
  for (double yc : g.slit_centers()) {
    if (yc - w / 2 < y_min || yc + w / 2 > y_max)
      throw GeometryError("slit opening extends past the grid in y");
  }
}

}  // namespace

RealField geometric_potential(const Grid2D& grid, const GratingSpec& g) {
  g.validate();
  require_slits_inside(grid, g);

  const auto centers = g.slit_centers();
  const double w = g.slit_width();
  RealField v(grid, 0.0);
  parallel_rows(grid.nx, [&](int ix) {
    if (!g.in_slab(grid.x(ix))) return;
    for (int iy = 0; iy < grid.ny; ++iy) {
      const double y = grid.y(iy);
      bool open = false;
      for (double yc : centers) {
        if (std::abs(y - yc) <= w / 2) {
          open = true;
          break;
        }
      }
      v.at(ix, iy) = open ? 0.0 : g.v0;
    }
  });
  return v;
}

RealField image_potential(const Grid2D& grid, const GratingSpec& g) {
  g.validate();
  require_slits_inside(grid, g);

  const auto& c = constants();
  const double coeff = g.eta * c.e * c.e / (8.0 * std::numbers::pi * c.eps0);  // J m
  const double w = g.slit_width();
  const double d_min = grid.dy / 2;
  const auto centers = g.slit_centers();

  RealField v(grid, 0.0);
  parallel_rows(grid.nx, [&](int ix) {
    if (!g.in_slab(grid.x(ix))) return;
    for (int iy = 0; iy < grid.ny; ++iy) {
      const double y = grid.y(iy);
      for (double yc : centers) {
        if (std::abs(y - yc) > w / 2) continue;
        const double d1 = std::max(y - (yc - w / 2), d_min);
        const double d2 = std::max((yc + w / 2) - y, d_min);
        v.at(ix, iy) = -coeff * (1.0 / d1 + 1.0 / d2);
        break;
      }
    }
  });
  return v;
}

RealField absorbing_mask(const Grid2D& grid, const AbsorberSpec& a) {
  if (!(a.width_frac > 0.0 && a.width_frac <= 0.25))
    throw ConfigError("absorber width_frac must lie in (0, 0.25]");
  if (!(a.min_value >= 0.0 && a.min_value <= 1.0))
    throw ConfigError("absorber min_value must lie in [0, 1]");

  auto ramp = [&](double dist_to_edge, double width) {
    if (dist_to_edge >= width) return 1.0;
    const double s = dist_to_edge / width;  // 0 at boundary, 1 at interior edge
    const double t = std::sin(0.5 * std::numbers::pi * s);
    return t * t;
  };

  const double lx = grid.extent_x(), ly = grid.extent_y();
  const double wx = a.width_frac * lx, wy = a.width_frac * ly;
  RealField mask(grid, 1.0);
  parallel_rows(grid.nx, [&](int ix) {
    const double x = grid.x(ix);
    const double gx = ramp(std::min(x - grid.x0, grid.x0 + lx - x), wx);
    for (int iy = 0; iy < grid.ny; ++iy) {
      const double y = grid.y(iy);
      const double gy = ramp(std::min(y - grid.y0, grid.y0 + ly - y), wy);
      mask.at(ix, iy) = std::max(a.min_value, gx * gy);
    }
  });
  return mask;
}

}  // namespace spindiff
