#pragma once

#include <cmath>
#include <cstddef>
#include <numbers>

namespace spindiff {

/// Uniform Cartesian lattice in (x, y) with the spectral axes implied by
/// periodic FFTs. Sample i of the x axis sits at x0 + i*dx; storage over
/// the lattice is row-major with x as the slow index: idx = ix*ny + iy.
/// Wavenumber axes follow standard FFT ordering: k[0] = 0, spacing
/// 2*pi/(n*d), negative frequencies in the upper half.
struct Grid2D {
  int nx = 0, ny = 0;
  double dx = 0.0, dy = 0.0;
  double x0 = 0.0, y0 = 0.0;  // lower-left corner (first sample point)

  std::size_t size() const { return static_cast<std::size_t>(nx) * ny; }
  std::size_t idx(int ix, int iy) const { return static_cast<std::size_t>(ix) * ny + iy; }

  double x(int i) const { return x0 + i * dx; }
  double y(int j) const { return y0 + j * dy; }
  double extent_x() const { return nx * dx; }
  double extent_y() const { return ny * dy; }

  double kx(int i) const {
    const int m = (i <= nx / 2) ? i : i - nx;
    return 2.0 * std::numbers::pi * m / (nx * dx);
  }
  double ky(int j) const {
    const int m = (j <= ny / 2) ? j : j - ny;
    return 2.0 * std::numbers::pi * m / (ny * dy);
  }

  bool operator==(const Grid2D&) const = default;
};

/// Builds the smallest grid covering the requested extents at the given
/// spacing. Throws ConfigError on non-positive inputs or if the result
/// would be smaller than 16 cells per axis.
Grid2D make_grid(double extent_x, double extent_y, double spacing,
                 double x0 = 0.0, double y0 = 0.0);

/// Smallest 5-smooth integer >= n (FFT-friendly sizes for padded transforms).
int next_fft_size(int n);

}  // namespace spindiff
