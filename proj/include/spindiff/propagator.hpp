#pragma once

#include <optional>
#include <vector>

#include "spindiff/fft.hpp"
#include "spindiff/scene.hpp"
#include "spindiff/selffield.hpp"

namespace spindiff {

/// Orbital/coupling terms of the grid-resolved gradient-field window.
/// The Zeeman term is the physically dominant one and the default; the
/// others exist for sensitivity studies.
struct H2Terms {
  bool cross = false;    // -(e G2 / 2m) y^2 p_x
  bool a2_sq = false;    // +(e^2 G2^2 / 8m) y^4
  bool a2_self = false;  // -(e^2 G2 / 2m) y^2 Ax_self
  bool zeeman = true;    // -(g mu_B / 2) y G2 sigma_z
};

struct StepPlan {
  double dt = 0.0;  // s
  long max_steps = 0;
  bool self_field = true;
  CurrentTerms j_terms;
  H2Terms h2_terms;
  BzDerivative bz_mode = BzDerivative::spectral;
  long record_every = 1;
};

struct StepRecord {
  long step = 0;      // completed steps so far
  double t = 0.0;     // s
  double norm = 0.0;
  double p_up = 0.0, p_dn = 0.0;
  double com_x = 0.0;      // density-weighted x centroid
  double com_x_down = 0.0;  // centroid over x > slab back face (= com_x without a grating)
  double norm_down = 0.0;   // norm past the slab back face (= norm without a grating)
  double slab_norm = 0.0;  // norm inside the grating slab interval
  double peak_bz = 0.0;    // max |Bz_self| of the field used this step
};

/// Early-exit conditions for evolve(); all present conditions must hold.
/// By default the centroid condition reads the downstream centroid
/// (gated on at least 1% downstream mass), so a reflected wave cannot
/// stall it; com_downstream = false reads the whole-domain centroid,
/// for thresholds upstream of the slab.
struct StopRule {
  std::optional<double> com_x_at_least;
  bool com_downstream = true;
  std::optional<double> slab_norm_below;
};

struct EvolveResult {
  std::vector<StepRecord> series;
  long steps_run = 0;
  bool stopped_early = false;
};

/// Second-order Strang stepper for the two-component state:
/// half-step of the local generator (scalar potentials, Zeeman rotation,
/// minimal-coupling terms), full spectral kinetic step, second half-step,
/// then the boundary mask once per step. When self_field is enabled the
/// current and vector potential are rebuilt from the present state at the
/// start of every step and used for that step.
class Propagator {
 public:
  Propagator(const ScatteringScene& scene, const StepPlan& plan);

  /// Exact spectral kinetic propagator exp[-i hbar dt (kx^2+ky^2)/(2m)].
  void apply_kinetic(SpinorField& state, double dt);

  /// Half-step of all local terms for plan.dt.
  void apply_potential_half(SpinorField& state);

  void strang_step(SpinorField& state);

  EvolveResult evolve(SpinorField& state, const StopRule& stop = {});

  /// Self-field used by the most recent step (zero before the first).
  const SelfFieldSolution& self_field() const { return self_; }
  const StepPlan& plan() const { return plan_; }
  /// Largest local energy scale outside the barrier plateau, used by the
  /// dt guard (dt <= 0.5 hbar / v_guard).
  double v_guard() const { return v_guard_; }

 private:
  void rebuild_self_field(const SpinorField& state);
  StepRecord apply_mask_and_measure(SpinorField& state) const;
  StepRecord step_core(SpinorField& state);

  const ScatteringScene& scene_;
  StepPlan plan_;
  Fft2D fft_;
  SelfFieldSolver solver_;
  SelfFieldSolution self_;
  std::vector<cplx> phase_static_;       // exp(-i V dt / 2 hbar)
  std::vector<cplx> kin_phase_x_, kin_phase_y_;  // separable kinetic phases
  double kin_dt_ = -1.0;
  std::vector<cplx> fd_scratch_;
  double v_guard_ = 0.0;
};

/// Exact global spinor rotation of the upstream uniform-field stage:
/// U = exp(i (g mu_B B1 T / 2 hbar) sigma_x), T = l_b1 / v_x. The spatial
/// wavefunction is untouched (the stage vector potential points along z
/// and drops out of the planar kinetic terms).
void apply_b1_rotation(SpinorField& state, double b1, double l_b1, double v_x);

/// Position-dependent phase of the downstream gradient stage:
/// psi_up *= e^{+i phi(y)}, psi_dn *= e^{-i phi(y)} with phi = -alpha y,
/// alpha = (g mu_B / 2 hbar) G2 T, T = l_b2 / v_x. Densities unchanged.
void apply_b2_phase(SpinorField& state, double g2, double l_b2, double v_x);

}  // namespace spindiff
