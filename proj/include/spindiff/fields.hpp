#pragma once

#include <complex>
#include <vector>

#include "spindiff/errors.hpp"
#include "spindiff/grid.hpp"

namespace spindiff {

using cplx = std::complex<double>;

struct RealField {
  Grid2D grid;
  std::vector<double> v;

  RealField() = default;
  explicit RealField(const Grid2D& g, double fill = 0.0) : grid(g), v(g.size(), fill) {}
  double& at(int ix, int iy) { return v[grid.idx(ix, iy)]; }
  double at(int ix, int iy) const { return v[grid.idx(ix, iy)]; }
};

struct ComplexField {
  Grid2D grid;
  std::vector<cplx> v;

  ComplexField() = default;
  explicit ComplexField(const Grid2D& g, cplx fill = {}) : grid(g), v(g.size(), fill) {}
  cplx& at(int ix, int iy) { return v[grid.idx(ix, iy)]; }
  cplx at(int ix, int iy) const { return v[grid.idx(ix, iy)]; }
};

/// Two-component electron state on a grid: spatial amplitudes for the
/// sigma_z eigenstates. 2D normalization, |psi|^2 in 1/m^2.
struct SpinorField {
  Grid2D grid;
  std::vector<cplx> up, dn;

  SpinorField() = default;
  explicit SpinorField(const Grid2D& g) : grid(g), up(g.size()), dn(g.size()) {}
};

inline void require_same_grid(const Grid2D& a, const Grid2D& b, const char* what) {
  if (!(a == b)) throw DimensionError(std::string("grid mismatch in ") + what);
}

}  // namespace spindiff
