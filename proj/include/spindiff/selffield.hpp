#pragma once

#include <memory>

#include "spindiff/fft.hpp"
#include "spindiff/fields.hpp"

namespace spindiff {

/// Local spin density S = Psi^dag sigma Psi.
struct SpinDensityField {
  Grid2D grid;
  std::vector<double> sx, sy, sz;
};

SpinDensityField spin_density(const SpinorField& state);

/// Which contributions enter the charge-current density.
struct CurrentTerms {
  bool paramagnetic = true;
  bool diamagnetic = true;
  bool magnetization = true;
};

/// 2D charge-current density (A/m in the planar reduction).
struct CurrentField {
  Grid2D grid;
  std::vector<double> jx, jy;
};

/// J = -e[ (hbar/m) sum_s Im(psi_s* grad psi_s) - (e/m) A rho
///        + (hbar/2m) curl S ], with the planar curl
/// (curl S)_x = d_y S_z, (curl S)_y = -d_x S_z. Derivatives are centered
/// finite differences with periodic wrap. ax/ay may be null (A = 0).
CurrentField current_density(const SpinorField& state, const RealField* ax,
                             const RealField* ay, const CurrentTerms& terms = {});

/// Coulomb-gauge vector potential of the current and its out-of-plane curl.
struct SelfFieldSolution {
  RealField ax, ay;  // T m
  RealField bz;      // T
  double peak_bz = 0.0;

  SelfFieldSolution() = default;
  explicit SelfFieldSolution(const Grid2D& g) : ax(g), ay(g), bz(g) {}
};

enum class BzDerivative { spectral, centered };

/// Fourier-space magnetostatic solve A~ = mu0 P_T(k) J~ / k^2 with the
/// k = 0 mode zeroed and the transverse projector P_T = I - k^ k^T.
/// Reusable across steps: owns the plans and workspaces for one grid shape.
class SelfFieldSolver {
 public:
  explicit SelfFieldSolver(const Grid2D& grid, BzDerivative mode = BzDerivative::spectral);

  SelfFieldSolution solve(const CurrentField& j);

 private:
  Grid2D grid_;
  BzDerivative mode_;
  Fft2D fft_;
  std::vector<cplx> packed_;  // jx + i jy on entry, ax + i ay on exit
  std::vector<cplx> spec_;    // bz spectrum
};

}  // namespace spindiff
