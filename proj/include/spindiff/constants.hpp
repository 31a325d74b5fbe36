#pragma once

namespace spindiff {

/// SI physical constants (CODATA 2018). The magneton is derived from
/// e, hbar and m_e so that mu_B == e*hbar/(2 m_e) holds identically.
/// g_factor is stored signed (negative for the electron); formulas that
/// need a magnitude take std::abs at the use site.
struct PhysicalConstants {
  double hbar = 1.054571817e-34;        // J s
  double m_e = 9.1093837015e-31;        // kg
  double e = 1.602176634e-19;           // C, elementary charge (positive)
  double g_factor = -2.00231930436256;  // dimensionless, signed
  double eps0 = 8.8541878128e-12;       // F/m
  double mu0 = 1.25663706212e-6;        // H/m

  double mu_B() const { return e * hbar / (2.0 * m_e); }  // J/T
};

inline const PhysicalConstants& constants() {
  static const PhysicalConstants c{};
  return c;
}

}  // namespace spindiff
