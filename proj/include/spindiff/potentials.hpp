#pragma once

#include <vector>

#include "spindiff/fields.hpp"

namespace spindiff {

/// Transmission grating: a slab [x_front, x_front+h] in x, periodic slit
/// openings in y. Inside the slab the material is at barrier height v0
/// except within the n_slits openings of width f*d centered around
/// y_center. All energies in joules.
struct GratingSpec {
  double period = 0.0;         // d, m
  double open_fraction = 0.0;  // f in (0,1); slit width w = f*d
  double thickness = 0.0;      // h, m
  double v0 = 0.0;             // barrier height, J
  double eta = 0.0;            // image-charge scaling, (0,1)
  double x_front = 0.0;        // upstream face, m
  int n_slits = 0;
  double y_center = 0.0;       // center of the middle slit, m

  double slit_width() const { return open_fraction * period; }
  double x_back() const { return x_front + thickness; }
  std::vector<double> slit_centers() const;
  bool in_slab(double x) const { return x >= x_front && x <= x_back(); }

  void validate() const;
};

/// Boundary absorber: a cos^2 ramp over width_frac of each domain edge,
/// from 1 at the interior edge down to min_value at the boundary.
struct AbsorberSpec {
  double width_frac = 0.05;  // fraction of each edge, (0, 0.25]
  double min_value = 0.0;    // mask value at the boundary
  bool enabled = true;
};

/// Step potential of the slab: 0 inside slit openings and outside the
/// slab, v0 in bar material. Throws GeometryError if a slit opening
/// extends past the grid in y.
RealField geometric_potential(const Grid2D& grid, const GratingSpec& g);

/// Image-charge attraction inside slit openings:
///   -(eta e^2 / 8 pi eps0) (1/d1 + 1/d2),
/// d1, d2 the distances to the bounding bar walls, clamped below at dy/2.
/// Zero outside openings and outside the slab.
RealField image_potential(const Grid2D& grid, const GratingSpec& g);

/// Multiplicative boundary mask, 1 strictly inside the interior region.
RealField absorbing_mask(const Grid2D& grid, const AbsorberSpec& a);

}  // namespace spindiff
