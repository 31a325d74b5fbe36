#include "spindiff/packet.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "spindiff/parallel.hpp"

namespace spindiff {

double PacketSpec::k0() const { return 2.0 * std::numbers::pi / lambda_dB; }

double PacketSpec::velocity(const PhysicalConstants& c) const {
  return v_x > 0.0 ? v_x : c.hbar * k0() / c.m_e;
}

void PacketSpec::validate(const PhysicalConstants& c) const {
  if (!(sigma_x > 0.0) || !(sigma_y > 0.0)) throw ConfigError("packet widths must be positive");
  if (!(lambda_dB > 0.0)) throw ConfigError("packet lambda_dB must be positive");
  const double nrm = std::norm(alpha0) + std::norm(beta0);
  if (std::abs(nrm - 1.0) > 1e-12)
    throw ConfigError("spinor coefficients not normalized: |a|^2+|b|^2 = " + std::to_string(nrm));
  const double vk = c.hbar * k0() / c.m_e;
  if (v_x > 0.0 && std::abs(v_x - vk) / vk > 1e-2)
    throw ConfigError("configured v_x inconsistent with lambda_dB by more than 1%");
  if (energy > 0.0) {
    const double ek = c.hbar * c.hbar * k0() * k0() / (2.0 * c.m_e);
    if (std::abs(ek - energy) / energy > 5e-3)
      throw ConfigError("configured energy inconsistent with lambda_dB by more than 0.5%");
  }
}

SpinorField init_gaussian_spinor(const Grid2D& grid, const PacketSpec& spec) {
  spec.validate();

  const double sx = spec.sigma_x, sy = spec.sigma_y;
  const double x_lo = spec.x0c - grid.x0;
  const double x_hi = grid.x0 + grid.extent_x() - spec.x0c;
  const double y_lo = spec.y0c - grid.y0;
  const double y_hi = grid.y0 + grid.extent_y() - spec.y0c;
  if (x_lo < 4.0 * sx || x_hi < 4.0 * sx || y_lo < 4.0 * sy || y_hi < 4.0 * sy)
    throw GeometryError("packet center closer than 4 sigma to a grid boundary");

  SpinorField state(grid);
  const double k0 = spec.k0();
  parallel_rows(grid.nx, [&](int ix) {
    const double xr = grid.x(ix) - spec.x0c;
    const double gx = std::exp(-xr * xr / (2.0 * sx * sx));
    const cplx carrier = std::polar(1.0, k0 * xr);
    for (int iy = 0; iy < grid.ny; ++iy) {
      const double yr = grid.y(iy) - spec.y0c;
      const cplx env = gx * std::exp(-yr * yr / (2.0 * sy * sy)) * carrier;
      const std::size_t n = grid.idx(ix, iy);
      state.up[n] = spec.alpha0 * env;
      state.dn[n] = spec.beta0 * env;
    }
  });

  // Compare the discrete norm against the closed-form Gaussian integral to
  // detect boundary clipping before normalizing.
  const double raw = total_norm(state);
  const double analytic = std::numbers::pi * sx * sy;  // spinor coefficients are unit-norm
  if (std::abs(raw - analytic) / analytic > 1e-6)
    throw GeometryError("packet clipped by grid boundary (norm deficit " +
                        std::to_string(std::abs(raw - analytic) / analytic) + ")");

  const double scale = 1.0 / std::sqrt(raw);
  parallel_rows(grid.nx, [&](int ix) {
    for (int iy = 0; iy < grid.ny; ++iy) {
      const std::size_t n = grid.idx(ix, iy);
      state.up[n] *= scale;
      state.dn[n] *= scale;
    }
  });
  return state;
}

std::pair<double, double> populations(const SpinorField& state) {
  const Grid2D& g = state.grid;
  const double w = g.dx * g.dy;
  const double pu = w * reduce_rows(g.nx, [&](int ix) {
    double s = 0.0;
    for (int iy = 0; iy < g.ny; ++iy) s += std::norm(state.up[g.idx(ix, iy)]);
    return s;
  });
  const double pd = w * reduce_rows(g.nx, [&](int ix) {
    double s = 0.0;
    for (int iy = 0; iy < g.ny; ++iy) s += std::norm(state.dn[g.idx(ix, iy)]);
    return s;
  });
  return {pu, pd};
}

double total_norm(const SpinorField& state) {
  auto [pu, pd] = populations(state);
  return pu + pd;
}

}  // namespace spindiff
