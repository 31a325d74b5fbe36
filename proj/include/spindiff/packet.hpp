#pragma once

#include <complex>
#include <utility>

#include "spindiff/constants.hpp"
#include "spindiff/fields.hpp"

namespace spindiff {

/// Incident Gaussian wave packet: center, widths, de Broglie wavelength
/// (k0 = 2 pi / lambda along +x) and the spinor composition.
/// v_x is the longitudinal velocity used for stage timing; if zero it is
/// derived as hbar*k0/m_e. A configured v_x must agree with hbar*k0/m_e
/// to 1%; a configured kinetic energy must agree with hbar^2 k0^2/(2 m)
/// to 0.5%.
struct PacketSpec {
  double x0c = 0.0, y0c = 0.0;  // m
  double sigma_x = 0.0, sigma_y = 0.0;  // m
  double lambda_dB = 0.0;  // m
  cplx alpha0{1.0, 0.0}, beta0{0.0, 0.0};
  double v_x = 0.0;     // m/s, optional
  double energy = 0.0;  // J, optional cross-check

  double k0() const;
  double velocity(const PhysicalConstants& c = constants()) const;
  void validate(const PhysicalConstants& c = constants()) const;
};

/// Builds the normalized Gaussian spinor
///   N exp[-(x-x0)^2/2sx^2 - (y-y0)^2/2sy^2] e^{i k0 (x-x0)} (alpha0, beta0)^T.
/// Requires the center at least 4 sigma from every grid boundary and the
/// discrete norm within 1e-6 of the analytic one (no boundary clipping);
/// violations raise GeometryError. The returned state has total norm 1.
SpinorField init_gaussian_spinor(const Grid2D& grid, const PacketSpec& spec);

/// (P_up, P_dn) by midpoint quadrature of |psi_s|^2 over the domain.
std::pair<double, double> populations(const SpinorField& state);

/// Equals populations().first + populations().second by construction.
double total_norm(const SpinorField& state);

}  // namespace spindiff
