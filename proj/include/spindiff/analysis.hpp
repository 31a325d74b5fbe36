#pragma once

#include <utility>
#include <vector>

#include "spindiff/constants.hpp"
#include "spindiff/fields.hpp"
#include "spindiff/potentials.hpp"

namespace spindiff {

/// Spin-resolved screen intensities after paraxial ballistic drift:
/// y_scr = hbar k_y T_scr / m_e, I in 1/m, axis monotonic.
struct FarFieldProfile {
  std::vector<double> y_scr;
  std::vector<double> i_up, i_dn;  // sigma_z channels
  std::vector<double> i_py, i_ny;  // sigma_y channels
  double t_scr = 0.0;              // s
  double l_gs = 0.0;               // m
};

/// Maps the transmitted part of the state (x > x_cut) to the screen.
/// Each x row is Fourier transformed in y on a zero-padded axis
/// (pad_factor times the grid, for sub-fringe resolution) and the row
/// intensities are accumulated, which equals the k_x-marginal of the 2D
/// momentum distribution. Screen-integrated intensity equals the
/// transmitted norm (Parseval).
FarFieldProfile far_field(const SpinorField& state, double x_cut, double l_gs,
                          double v_x, int pad_factor = 8);

/// sigma_y readout of momentum-space amplitudes. The +-y eigenstates are
/// (|up> +- i |dn>)/sqrt(2), so the channel amplitudes are
/// <+-y|psi> = (u -+ i d)/sqrt(2); the state (phi, i phi)/sqrt(2) lands
/// entirely in the +y channel.
std::pair<std::vector<double>, std::vector<double>> sigma_y_projection(
    const std::vector<cplx>& up_k, const std::vector<cplx>& dn_k);

/// Summed target-channel fraction: sum(I_b) / sum(I_a + I_b).
double flip_probability(const std::vector<double>& i_a, const std::vector<double>& i_b);

/// Field for a pi rotation over l_b1: B_pi = 4 pi^2 hbar / (|g| e l_b1 lambda).
double b_pi(double l_b1, double lambda_dB, const PhysicalConstants& c = constants());
double chi(double b1, double b_pi_value);

/// Signed momentum-kick coefficient of the gradient stage:
/// alpha = (g mu_B / 2 hbar) G2 (l_b2 / v_x). The up/down spectral
/// centroids shift to -alpha / +alpha.
double zeeman_alpha(double g2, double l_b2, double v_x,
                    const PhysicalConstants& c = constants());

/// Magnitude of the per-spin screen displacement (hbar T_scr / m) |alpha|.
double analytic_deflection(double g2, double l_b2, double v_x, double l_gs,
                           const PhysicalConstants& c = constants());

/// Total density integrated over the half-plane x > x_back.
double transmission_past(const SpinorField& state, double x_back);

/// Transmission coefficient, valid only once the packet has cleared the
/// slab. A small residue stays bound in the image-potential wells, so the
/// guard bounds the resident slab norm at 5e-3 (per-step flux well under
/// 1e-4); earlier calls raise StalenessError.
double transmission(const SpinorField& state, const GratingSpec& grating);

/// One transverse complex slice per spin channel (the Husimi input).
struct TransverseSlice {
  std::vector<cplx> up, dn;
  double dy = 0.0;
  double y_start = 0.0;
  double y(int j) const { return y_start + j * dy; }
};

/// Column of the state at the given x index, normalized to unit 1D norm.
TransverseSlice extract_slice(const SpinorField& state, int ix);

struct HusimiSpec {
  double probe_sigma = 0.0;        // m; Gaussian probe width
  double y0_min = 0.0, y0_max = 0.0;
  int y0_points = 256;
  double ky0_min = 0.0, ky0_max = 0.0;
  int ky0_points = 512;
  int pad_factor = 4;
};

/// Q_s(y0, ky0) = (1/pi) |integral dy probe*(y) psi_s(y)|^2 with a
/// minimum-uncertainty Gaussian probe, evaluated on FFT bins.
struct HusimiMap {
  std::vector<double> y0, ky0;
  std::vector<double> q_up, q_dn;  // row-major [iy0 * ky0.size() + ik]
  double probe_sigma = 0.0;
};

HusimiMap make_husimi(const TransverseSlice& slice, const HusimiSpec& spec);

enum class SpinChannel { up, dn };

/// Mass-weighted ky0 centroid of one channel; zero mass is an error.
double mean_ky(const HusimiMap& map, SpinChannel channel);

/// Spectral transverse-momentum centroid per channel over x > x_cut
/// (whole domain if x_cut < grid start).
std::pair<double, double> transverse_momentum_mean(const SpinorField& state, double x_cut);

/// Median spacing of adjacent principal maxima of the total intensity,
/// peaks detected above 10% of the global maximum with parabolic
/// sub-cell refinement. Fewer than 3 peaks is an error.
double fringe_width(const FarFieldProfile& profile);

/// Intensity-weighted screen centroid of one channel.
double profile_centroid(const std::vector<double>& axis, const std::vector<double>& intensity);

}  // namespace spindiff
