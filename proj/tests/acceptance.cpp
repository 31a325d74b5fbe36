// Acceptance suite: one line per criterion, nonzero exit on any failure.
// The heavy scenario runs use the fast presets (wavelength scaled 10x,
// apparatus geometry unchanged); the self-field magnitude check runs a
// static solve at full paper resolution.

#include <json.hpp>

#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "spindiff/analysis.hpp"
#include "spindiff/config.hpp"
#include "spindiff/io.hpp"
#include "spindiff/packet.hpp"
#include "spindiff/propagator.hpp"
#include "spindiff/scenario.hpp"
#include "spindiff/units.hpp"

using namespace spindiff;
using json = nlohmann::json;

namespace {

constexpr double kPi = std::numbers::pi;

int g_failures = 0;

void report(int id, const char* label, bool pass, const std::string& detail) {
  std::printf("[%s] criterion %2d %-28s %s\n", pass ? "PASS" : "FAIL", id, label,
              detail.c_str());
  std::fflush(stdout);
  if (!pass) ++g_failures;
}

std::string fmt(const char* f, ...) {
  char buf[512];
  va_list args;
  va_start(args, f);
  std::vsnprintf(buf, sizeof(buf), f, args);
  va_end(args);
  return buf;
}

std::string out_dir(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / "spindiff_acceptance" / name;
  std::filesystem::remove_all(dir);
  return dir.string();
}

double wall_since(const std::chrono::steady_clock::time_point& t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// ---------------------------------------------------------------- 1
void criterion_1_flip_law() {
  const std::vector<double> chis = {0.0, 0.25, 0.5, 0.75, 1.0, 1.25, 1.5, 2.0};

  // closed-form stage: exact rotation on a small state
  const Grid2D g = make_grid(24e-9, 24e-9, 0.5e-9, 0.0, -12e-9);
  PacketSpec ps;
  ps.x0c = 12e-9;
  ps.sigma_x = 3e-9;
  ps.sigma_y = 3e-9;
  ps.lambda_dB = 2.73e-10;
  const double l_b1 = 0.1;
  const double bpi = b_pi(l_b1, ps.lambda_dB);
  const double v = ps.velocity();
  double dev_exact = 0.0;
  for (double chi_v : chis) {
    SpinorField psi = init_gaussian_spinor(g, ps);
    apply_b1_rotation(psi, chi_v * bpi, l_b1, v);
    const auto [pu, pd] = populations(psi);
    dev_exact = std::max(dev_exact,
                         std::abs(pd / (pu + pd) - std::pow(std::sin(0.5 * kPi * chi_v), 2)));
  }

  // simulated sweep: shared grating transit, rotations applied per chi
  const std::vector<std::string> reduced = {"packet.sigma_y=15 nm", "grating.n_slits=3"};
  const ScenarioConfig cfg = make_preset("b1_sweep_fast", reduced);
  const ScenarioSetup setup = make_setup(cfg);
  const double v_fast = setup.cfg.packet.velocity();
  const double bpi_fast = b_pi(setup.cfg.l_b1, setup.cfg.packet.lambda_dB);

  SpinorField state = init_gaussian_spinor(setup.grid, setup.cfg.packet);
  Propagator prop(setup.scene, setup.cfg.plan);
  StopRule stop;
  stop.com_x_at_least = setup.x_stop;
  stop.slab_norm_below = 4e-3;
  prop.evolve(state, stop);
  const double x_cut = setup.cfg.grating.x_back();

  double dev_sim = 0.0;
  double p_shared_half = 0.0;
  std::vector<std::vector<double>> totals;
  for (double chi_v : chis) {
    SpinorField rotated = state;
    apply_b1_rotation(rotated, chi_v * bpi_fast, setup.cfg.l_b1, v_fast);
    const FarFieldProfile prof =
        far_field(rotated, x_cut, setup.cfg.l_gs, v_fast, setup.cfg.pad_factor);
    const double p_flip = flip_probability(prof.i_up, prof.i_dn);
    dev_sim = std::max(dev_sim, std::abs(p_flip - std::pow(std::sin(0.5 * kPi * chi_v), 2)));
    if (chi_v == 0.5) p_shared_half = p_flip;
    if (chi_v == 0.0 || chi_v == 0.5 || chi_v == 1.0) {
      std::vector<double> tot(prof.i_up.size());
      for (std::size_t j = 0; j < tot.size(); ++j) tot[j] = prof.i_up[j] + prof.i_dn[j];
      totals.push_back(std::move(tot));
    }
  }

  // stage-ordered pipeline at chi = 0.5 validates the shared transit
  SpinorField ordered = init_gaussian_spinor(setup.grid, setup.cfg.packet);
  apply_b1_rotation(ordered, 0.5 * bpi_fast, setup.cfg.l_b1, v_fast);
  Propagator prop2(setup.scene, setup.cfg.plan);
  prop2.evolve(ordered, stop);
  const FarFieldProfile prof_ord =
      far_field(ordered, x_cut, setup.cfg.l_gs, v_fast, setup.cfg.pad_factor);
  const double p_ordered = flip_probability(prof_ord.i_up, prof_ord.i_dn);
  const double order_dev = std::abs(p_ordered - p_shared_half);

  // fringe geometry must not move with chi (one screen cell)
  auto peak_positions = [&](const std::vector<double>& tot) {
    std::vector<std::size_t> peaks;
    double gmax = 0.0;
    for (double t : tot) gmax = std::max(gmax, t);
    for (std::size_t j = 1; j + 1 < tot.size(); ++j)
      if (tot[j] >= 0.1 * gmax && tot[j] > tot[j - 1] && tot[j] >= tot[j + 1]) peaks.push_back(j);
    return peaks;
  };
  const auto ref_peaks = peak_positions(totals[0]);
  std::size_t peak_shift = 0;
  for (const auto& tot : totals) {
    const auto peaks = peak_positions(tot);
    if (peaks.size() != ref_peaks.size())
      peak_shift = 1000;
    else
      for (std::size_t i = 0; i < peaks.size(); ++i)
        peak_shift = std::max<std::size_t>(peak_shift,
                                           std::abs((long)peaks[i] - (long)ref_peaks[i]));
  }

  const bool pass = dev_exact < 1e-12 && dev_sim < 1e-3 && order_dev < 1e-9 && peak_shift <= 1;
  report(1, "flip law", pass,
         fmt("analytic max|dP| = %.2e (< 1e-12), simulated sweep max|dP| = %.2e (< 1e-3), "
             "shared-vs-ordered |dP| = %.2e, fringe peak shift = %zu cell(s)",
             dev_exact, dev_sim, order_dev, peak_shift));
}

// ------------------------------------------------------------ 2, 3, 4, 5b
struct FieldFreeOutcome {
  double gamma_check = 0.0;
  double t_c = 0.0;
  double frac_up = 0.0, frac_dn = 0.0;
  double peak_pre = 0.0, peak_post = 0.0;
  double wall = 0.0;
};

FieldFreeOutcome run_field_free() {
  const auto t0 = std::chrono::steady_clock::now();
  const ScenarioConfig cfg = make_preset("field_free_fast");
  const json m = json::parse(run_scenario(cfg, out_dir("field_free")));
  FieldFreeOutcome o;
  o.gamma_check = m["measured"]["gamma_m"].get<double>() * cfg.grating.period /
                  (cfg.packet.lambda_dB * cfg.l_gs);
  o.t_c = m["measured"]["t_c"].get<double>();
  o.frac_up = m["measured"]["channel_fraction_up"].get<double>();
  o.frac_dn = m["measured"]["channel_fraction_dn"].get<double>();
  o.peak_pre = m["measured"]["peak_bz_pre_T"].get<double>();
  o.peak_post = m["measured"]["peak_bz_post_T"].get<double>();
  o.wall = wall_since(t0);
  return o;
}

// ---------------------------------------------------------------- 5a
double static_self_field_peak(double* mean_kx_out) {
  // Unperturbed incident packet at full paper resolution along x
  // (dx = lambda/10 resolves the carrier the convection current
  // differentiates), one magnetostatic solve. The domain must cover the
  // *field* structure, which extends over sigma_y in every direction: a
  // packet-sized x-span stacks the periodic images toward the
  // infinite-sheet limit and overstates the peak by ~2x. y is smooth at
  // the packet scale, so a 1 nm spacing suffices there.
  const double lambda = 2.73e-10;
  const double h = lambda / 10.0;
  const int nx = 15000, ny = 1024;
  const Grid2D g{nx, ny, h, 1e-9, 0.0, -0.5 * ny * 1e-9};

  PacketSpec ps;
  ps.x0c = 0.5 * nx * h;
  ps.sigma_x = 5e-9;
  ps.sigma_y = 40e-9;
  ps.lambda_dB = lambda;
  SpinorField psi = init_gaussian_spinor(g, ps);

  if (mean_kx_out) {
    std::vector<cplx> buf = psi.up;
    Fft2D fft(nx, ny);
    fft.forward(buf.data());
    double mass = 0.0, mom = 0.0;
    for (int i = 0; i < nx; ++i)
      for (int j = 0; j < ny; ++j) {
        const double w = std::norm(buf[g.idx(i, j)]);
        mass += w;
        mom += w * g.kx(i);
      }
    *mean_kx_out = mom / mass;
  }

  const CurrentField j = current_density(psi, nullptr, nullptr);
  SelfFieldSolver solver(g);
  return solver.solve(j).peak_bz;
}

// ---------------------------------------------------------------- 6
double run_y_polarized_flip() {
  const ScenarioConfig cfg = make_preset(
      "field_free_fast", {"packet.alpha0=[0.7071067811865476, 0]",
                          "packet.beta0=[0, 0.7071067811865476]"});
  const json m = json::parse(run_scenario(cfg, out_dir("ypol")));
  return m["measured"]["p_flip_py_to_ny"].get<double>();
}

// ---------------------------------------------------------------- 7
void criterion_7_deflection() {
  // closed-form working values quoted at v_x = 2.652e6 m/s
  const double defl_paper = analytic_deflection(560.0, 50.0, 2.652e6, 0.5);
  const bool defl_ok = std::abs(defl_paper - 2.03e-2) < 0.02 * 2.03e-2;

  const ScenarioConfig cfg = make_preset("husimi_sweep_fast");
  const ScenarioSetup setup = make_setup(cfg);
  const double v = setup.cfg.packet.velocity();
  SpinorField state = init_gaussian_spinor(setup.grid, setup.cfg.packet);
  Propagator prop(setup.scene, setup.cfg.plan);
  StopRule stop;
  stop.com_x_at_least = setup.x_stop;
  stop.slab_norm_below = 4e-3;
  prop.evolve(state, stop);
  const double x_cut = setup.cfg.grating.x_back();

  const std::vector<double>& lengths = setup.cfg.l_b2_values;  // 10..50 m
  const double alpha_max = zeeman_alpha(setup.cfg.g2, lengths.back(), v);

  HusimiSpec hspec;
  hspec.probe_sigma = setup.cfg.packet.sigma_y;
  const double interior = (0.5 - setup.cfg.absorber.width_frac) * setup.grid.extent_y();
  hspec.y0_min = -interior;
  hspec.y0_max = interior;
  hspec.y0_points = setup.cfg.husimi_y0_points;
  const double orders = 4.5 * 2.0 * kPi / setup.cfg.grating.period;
  hspec.ky0_min = -(orders + std::abs(alpha_max));
  hspec.ky0_max = orders + std::abs(alpha_max);
  hspec.ky0_points = setup.cfg.husimi_ky0_points;
  hspec.pad_factor = setup.cfg.husimi_pad;

  double worst_rel = 0.0, wrong_sign = 0.0;
  std::vector<double> ls, ups;
  double defl_sim_rel = -1.0;
  for (double l : lengths) {
    SpinorField imprinted = state;
    apply_b2_phase(imprinted, setup.cfg.g2, l, v);
    const double alpha = zeeman_alpha(setup.cfg.g2, l, v);

    int ix = 0;
    {
      double mass = 0.0, mom = 0.0;
      const Grid2D& gg = setup.grid;
      for (int i = 0; i < gg.nx; ++i) {
        if (gg.x(i) <= x_cut) continue;
        double r = 0.0;
        for (int jj = 0; jj < gg.ny; ++jj)
          r += std::norm(imprinted.up[gg.idx(i, jj)]) + std::norm(imprinted.dn[gg.idx(i, jj)]);
        mass += r;
        mom += r * i;
      }
      ix = static_cast<int>(std::lround(mom / mass));
    }
    const HusimiMap map = make_husimi(extract_slice(imprinted, ix), hspec);
    const double up = mean_ky(map, SpinChannel::up);
    const double dn = mean_ky(map, SpinChannel::dn);
    worst_rel = std::max({worst_rel, std::abs(up - (-alpha)) / std::abs(alpha),
                          std::abs(dn - (+alpha)) / std::abs(alpha)});
    if (up * dn >= 0.0) wrong_sign = 1.0;
    ls.push_back(l);
    ups.push_back(up);

    if (l == lengths.back()) {
      const FarFieldProfile prof =
          far_field(imprinted, x_cut, setup.cfg.l_gs, v, setup.cfg.pad_factor);
      const double centroid = profile_centroid(prof.y_scr, prof.i_up);
      const double expected =
          constants().hbar * (setup.cfg.l_gs / v) / constants().m_e * (-alpha);
      defl_sim_rel = std::abs(centroid - expected) / std::abs(expected);
    }
  }

  // linear fit through the origin
  double sxx = 0.0, sxy = 0.0, mean_up = 0.0;
  for (std::size_t i = 0; i < ls.size(); ++i) {
    sxx += ls[i] * ls[i];
    sxy += ls[i] * ups[i];
    mean_up += ups[i] / ls.size();
  }
  const double slope = sxy / sxx;
  double ss_res = 0.0, ss_tot = 0.0;
  for (std::size_t i = 0; i < ls.size(); ++i) {
    ss_res += std::pow(ups[i] - slope * ls[i], 2);
    ss_tot += std::pow(ups[i] - mean_up, 2);
  }
  const double r2 = 1.0 - ss_res / ss_tot;

  const bool pass = defl_ok && worst_rel < 0.02 && wrong_sign == 0.0 && r2 > 0.9999 &&
                    defl_sim_rel >= 0.0 && defl_sim_rel < 0.02;
  report(7, "gradient-stage deflection", pass,
         fmt("closed-form defl = %.4e m (2.03e-2 +- 2%%), husimi <ky> vs -/+alpha worst rel = "
             "%.2e (< 0.02), fit R^2 = %.6f (> 0.9999), screen centroid rel = %.2e (< 0.02)",
             defl_paper, worst_rel, r2, defl_sim_rel));
}

// ---------------------------------------------------------------- 8
void criterion_8_imprint_equivalence() {
  const double lambda = 2.73e-9;
  const double dx = lambda / 10.0;
  const int nx = 1536, ny = 384;
  const Grid2D g{nx, ny, dx, dx, 0.0, -0.5 * ny * dx};

  PacketSpec ps;
  ps.sigma_x = 20e-9;
  ps.sigma_y = 10e-9;
  ps.lambda_dB = lambda;
  ps.alpha0 = {1.0 / std::sqrt(2.0), 0.0};
  ps.beta0 = {1.0 / std::sqrt(2.0), 0.0};
  ps.x0c = 4.5 * ps.sigma_x;
  const double v = ps.velocity();

  const double g2 = 2e8;  // T/m
  const double x1 = ps.x0c + 6.0 * ps.sigma_x;
  const double l_b2 = 60e-9;

  ScatteringScene scene = make_scene(g, std::nullopt, AbsorberSpec{0.05, 0.0, false});
  scene.grid_b2 = {true, g2, x1, x1 + l_b2};

  StepPlan plan;
  plan.dt = 9.01e-16;
  plan.self_field = false;
  plan.max_steps = 1400;
  plan.record_every = 500;

  SpinorField evolved = init_gaussian_spinor(g, ps);
  Propagator prop(scene, plan);
  StopRule stop;
  stop.com_x_at_least = x1 + l_b2 + 4.0 * ps.sigma_x;
  prop.evolve(evolved, stop);
  const auto [ku_grid, kd_grid] = transverse_momentum_mean(evolved, -1.0);

  SpinorField imprinted = init_gaussian_spinor(g, ps);
  apply_b2_phase(imprinted, g2, l_b2, v);
  const auto [ku_imp, kd_imp] = transverse_momentum_mean(imprinted, -1.0);

  const double rel_u = std::abs(ku_grid - ku_imp) / std::abs(ku_imp);
  const double rel_d = std::abs(kd_grid - kd_imp) / std::abs(kd_imp);
  const bool pass = rel_u < 0.01 && rel_d < 0.01;
  report(8, "imprint/evolution agreement", pass,
         fmt("grid-resolved zeeman window vs phase imprint: <ky>_up %.6e vs %.6e (rel %.2e), "
             "<ky>_dn rel %.2e (< 0.01)",
             ku_grid, ku_imp, rel_u, rel_d));
}

// ---------------------------------------------------------------- 9
void criterion_9_properties() {
  std::string notes;
  bool pass = true;

  // (i) unitarity over 1000 steps, mask off, static fields
  {
    const Grid2D g = make_grid(70e-9, 70e-9, 2.73e-10, 0.0, -35e-9);
    ScatteringScene scene = make_scene(g, std::nullopt, AbsorberSpec{0.05, 0.0, false});
    for (int i = 0; i < g.nx; ++i)
      for (int j = 0; j < g.ny; ++j) {
        const double x = g.x(i) - 35e-9, y = g.y(j);
        scene.v_scalar.at(i, j) =
            0.02 * kElectronVolt * std::exp(-(x * x + y * y) / (2.0 * 64e-18));
      }
    scene.grid_b2 = {true, 1e7, 0.0, 1.0};  // linear zeeman over the whole grid

    PacketSpec ps;
    ps.x0c = 35e-9;
    ps.sigma_x = 6e-9;
    ps.sigma_y = 6e-9;
    ps.lambda_dB = 1e-6;  // quasi-stationary; the packet must stay off the edges
    StepPlan plan;
    plan.dt = 9.01e-16;
    plan.max_steps = 1000;
    plan.self_field = false;
    plan.record_every = 1000;
    SpinorField psi = init_gaussian_spinor(g, ps);
    Propagator prop(scene, plan);
    const EvolveResult ev = prop.evolve(psi);
    const double drift = std::abs(ev.series.back().norm - 1.0);
    pass = pass && drift < 1e-10;
    notes += fmt("norm drift/1000 steps = %.1e; ", drift);
  }

  // (ii) coulomb gauge of the solve
  {
    const Grid2D g = make_grid(64e-9, 48e-9, 1e-9);
    std::mt19937 rng(71);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    CurrentField j{g, std::vector<double>(g.size(), 0.0), std::vector<double>(g.size(), 0.0)};
    for (int blob = 0; blob < 5; ++blob) {
      const double cx = g.x0 + g.extent_x() * (0.3 + 0.2 * (u(rng) + 1.0));
      const double cy = g.y0 + g.extent_y() * (0.3 + 0.2 * (u(rng) + 1.0));
      const double s = 4e-9 * (1.0 + 0.4 * u(rng));
      const double ax = u(rng), ay = u(rng);
      for (int ix = 0; ix < g.nx; ++ix)
        for (int iy = 0; iy < g.ny; ++iy) {
          const double ddx = g.x(ix) - cx, ddy = g.y(iy) - cy;
          const double w = std::exp(-(ddx * ddx + ddy * ddy) / (2.0 * s * s));
          j.jx[g.idx(ix, iy)] += ax * w;
          j.jy[g.idx(ix, iy)] += ay * w;
        }
    }
    SelfFieldSolver solver(g);
    const SelfFieldSolution sol = solver.solve(j);
    std::vector<cplx> axs(g.size()), ays(g.size()), div(g.size()), grad(g.size());
    for (std::size_t n = 0; n < g.size(); ++n) {
      axs[n] = sol.ax.v[n];
      ays[n] = sol.ay.v[n];
    }
    Fft2D fft(g.nx, g.ny);
    fft.forward(axs.data());
    fft.forward(ays.data());
    for (int i = 0; i < g.nx; ++i)
      for (int jj = 0; jj < g.ny; ++jj) {
        const bool nyq = (i == g.nx / 2) || (jj == g.ny / 2);
        const double kx = nyq ? 0.0 : g.kx(i), ky = nyq ? 0.0 : g.ky(jj);
        const std::size_t n = g.idx(i, jj);
        div[n] = cplx(0.0, 1.0) * (kx * axs[n] + ky * ays[n]);
        grad[n] = cplx(0.0, 1.0) * kx * axs[n];
      }
    fft.backward(div.data());
    fft.backward(grad.data());
    double dmax = 0.0, gmax = 0.0;
    for (std::size_t n = 0; n < g.size(); ++n) {
      dmax = std::max(dmax, std::abs(div[n]));
      gmax = std::max(gmax, std::abs(grad[n]));
    }
    pass = pass && dmax < 1e-10 * gmax;
    notes += fmt("gauge div rel = %.1e; ", dmax / gmax);
  }

  // (iii) sheet-current oracle
  {
    const int nx = 16, ny = 4096;
    const double dy = 1e-9;
    const Grid2D g{nx, ny, dy, dy, 0.0, -0.5 * ny * dy};
    const double s = 30e-9, j0 = 1.0, length = ny * dy;
    const double q = s * std::sqrt(2.0 * kPi);
    CurrentField j{g, std::vector<double>(g.size(), 0.0), std::vector<double>(g.size(), 0.0)};
    for (int ix = 0; ix < nx; ++ix)
      for (int iy = 0; iy < ny; ++iy)
        j.jx[g.idx(ix, iy)] = j0 * std::exp(-g.y(iy) * g.y(iy) / (2.0 * s * s));
    SelfFieldSolver solver(g);
    const SelfFieldSolution sol = solver.solve(j);
    const double mu0 = constants().mu0;
    double worst = 0.0;
    for (int t = 0; t < 64; ++t) {
      const int iy = static_cast<int>(ny * (0.15 + 0.7 * t / 63.0));
      const double y = g.y(iy);
      const double f = s * std::sqrt(kPi / 2.0) * std::erf(y / (s * std::sqrt(2.0)));
      const double ref = mu0 * j0 * (f - q / length * y);
      worst = std::max(worst, std::abs(sol.bz.v[g.idx(3, iy)] - ref));
    }
    const double rel = worst / (mu0 * j0 * s);
    pass = pass && rel < 1e-6;
    notes += fmt("sheet oracle rel = %.1e; ", rel);
  }

  // (iv) Richardson order check on a smooth-potential run
  {
    const Grid2D g = make_grid(70e-9, 70e-9, 2.73e-10, 0.0, -35e-9);
    PacketSpec ps;
    ps.x0c = 30e-9;
    ps.sigma_x = 5e-9;
    ps.sigma_y = 5e-9;
    ps.lambda_dB = 27.3e-9;  // slow carrier keeps the packet inside
    auto run = [&](double dt, int steps) {
      ScatteringScene scene = make_scene(g, std::nullopt, AbsorberSpec{0.05, 0.0, false});
      for (int i = 0; i < g.nx; ++i)
        for (int jj = 0; jj < g.ny; ++jj) {
          const double x = g.x(i) - 35e-9, y = g.y(jj);
          scene.v_scalar.at(i, jj) =
              0.02 * kElectronVolt * std::exp(-(x * x + y * y) / (2.0 * 100e-18));
        }
      StepPlan plan;
      plan.dt = dt;
      plan.max_steps = steps;
      plan.self_field = false;
      plan.record_every = steps;
      SpinorField psi = init_gaussian_spinor(g, ps);
      Propagator prop(scene, plan);
      prop.evolve(psi);
      return psi;
    };
    const double dt0 = 2.4e-15;
    const int n0 = 64;
    const SpinorField a = run(dt0, n0);
    const SpinorField b = run(dt0 / 2, 2 * n0);
    const SpinorField ref = run(dt0 / 8, 8 * n0);
    double ea = 0.0, eb = 0.0;
    for (std::size_t n = 0; n < g.size(); ++n) {
      ea += std::norm(a.up[n] - ref.up[n]);
      eb += std::norm(b.up[n] - ref.up[n]);
    }
    const double ratio = std::sqrt(ea / eb);
    pass = pass && ratio > 3.5 && ratio < 4.5;
    notes += fmt("richardson ratio = %.2f; ", ratio);
  }

  // (v) sigma_y completeness on random amplitudes
  {
    std::mt19937 rng(5);
    std::normal_distribution<double> n01;
    std::vector<cplx> up(512), dn(512);
    for (int i = 0; i < 512; ++i) {
      up[i] = {n01(rng), n01(rng)};
      dn[i] = {n01(rng), n01(rng)};
    }
    const auto [py, ny_] = sigma_y_projection(up, dn);
    double worst = 0.0, scale = 0.0;
    for (int i = 0; i < 512; ++i) {
      const double tot = std::norm(up[i]) + std::norm(dn[i]);
      worst = std::max(worst, std::abs(py[i] + ny_[i] - tot));
      scale = std::max(scale, tot);
    }
    pass = pass && worst < 1e-12 * scale;
    notes += fmt("sigma_y completeness rel = %.1e; ", worst / scale);
  }

  // (vi) husimi positivity and shift covariance, 20 random states
  {
    std::mt19937 rng(2026);
    std::normal_distribution<double> n01;
    const int n = 768;
    const double dy = 0.5e-9;
    bool ok = true;
    for (int trial = 0; trial < 20; ++trial) {
      TransverseSlice slice;
      slice.dy = dy;
      slice.y_start = -0.5 * n * dy;
      slice.up.resize(n);
      slice.dn.assign(n, 0.0);
      for (int jj = 0; jj < n; ++jj) {
        const double y = slice.y(jj);
        const double env = std::exp(-y * y / (2.0 * 60e-9 * 60e-9));
        slice.up[jj] = env * cplx(n01(rng), n01(rng));
      }
      HusimiSpec spec;
      spec.probe_sigma = 15e-9;
      spec.y0_min = -150e-9;
      spec.y0_max = 150e-9;
      spec.y0_points = 64;
      spec.ky0_min = -4e8;
      spec.ky0_max = 4e8;
      spec.ky0_points = 128;
      const HusimiMap map = make_husimi(slice, spec);
      for (double q : map.q_up)
        if (!(q >= 0.0) || !std::isfinite(q)) ok = false;

      const double dk = map.ky0[1] - map.ky0[0];
      const int hop = 5;
      TransverseSlice shifted = slice;
      for (int jj = 0; jj < n; ++jj)
        shifted.up[jj] *= std::polar(1.0, hop * dk * slice.y(jj));
      const HusimiMap map2 = make_husimi(shifted, spec);
      const std::size_t nk = map.ky0.size();
      for (std::size_t iy = 0; iy < map.y0.size() && ok; ++iy)
        for (std::size_t ik = hop; ik < nk; ++ik)
          if (std::abs(map2.q_up[iy * nk + ik] - map.q_up[iy * nk + ik - hop]) > 1e-12)
            ok = false;
    }
    pass = pass && ok;
    notes += fmt("husimi positivity/covariance on 20 states: %s", ok ? "ok" : "violated");
  }

  report(9, "property suite", pass, notes);
}

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  for (int i = 1; i < argc; ++i)
    if (std::strcmp(argv[i], "--only") == 0 && i + 1 < argc) only = std::atoi(argv[i + 1]);

#ifdef _OPENMP
  omp_set_num_threads(2);
#endif

  auto want = [&](int id) { return only == 0 || only == id; };
  const auto t0 = std::chrono::steady_clock::now();

  try {
    if (want(1)) criterion_1_flip_law();

    if (want(2) || want(3) || want(4) || want(5)) {
      const FieldFreeOutcome ff = run_field_free();
      if (want(2))
        report(2, "fringe width", std::abs(ff.gamma_check - 1.0) < 0.05,
               fmt("gamma * d / (lambda L_GS) = %.4f (1 +- 0.05), fast preset %.0f s",
                   ff.gamma_check, ff.wall));
      if (want(3))
        report(3, "transmission", ff.t_c > 0.489 && ff.t_c < 0.509,
               fmt("T_c = %.4f (in [0.489, 0.509])", ff.t_c));
      if (want(4)) {
        const bool ok =
            std::abs(ff.frac_up - 0.750) < 1e-3 && std::abs(ff.frac_dn - 0.250) < 1e-3;
        report(4, "spin-population preservation", ok,
               fmt("far-field fractions %.6f / %.6f (0.750/0.250 +- 1e-3)", ff.frac_up,
                   ff.frac_dn));
      }
      if (want(5)) {
        double mean_kx = 0.0;
        const double peak = static_self_field_peak(&mean_kx);
        const double k0 = 2.0 * kPi / 2.73e-10;
        const bool ok = peak > 0.75e-12 && peak < 3.0e-12 && ff.peak_post > ff.peak_pre &&
                        std::abs(mean_kx - k0) < 1e-3 * k0;
        report(5, "self-field magnitude", ok,
               fmt("pre-grating peak |Bz| = %.3e T (paper-scale static, within 2x of 1.5e-12), "
                   "transit peaks post/pre = %.3e/%.3e (ratio %.2f > 1), <kx>/k0 - 1 = %.1e",
                   peak, ff.peak_post, ff.peak_pre, ff.peak_post / ff.peak_pre,
                   mean_kx / k0 - 1.0));
      }
    }

    if (want(6)) {
      const double p = run_y_polarized_flip();
      report(6, "self-field spin mixing", p < 1e-10, fmt("P(+y -> -y) = %.2e (< 1e-10)", p));
    }

    if (want(7)) criterion_7_deflection();
    if (want(8)) criterion_8_imprint_equivalence();
    if (want(9)) criterion_9_properties();

    if (want(10)) {
      const double bpi = b_pi(0.1, 2.73e-10);
      report(10, "pi-rotation field", bpi > 4.71e-4 && bpi < 4.81e-4,
             fmt("B_pi(0.1 m, 2.73 A) = %.4e T (in [4.71, 4.81]e-4)", bpi));
    }
  } catch (const std::exception& e) {
    std::printf("[FAIL] acceptance suite aborted: %s\n", e.what());
    return 99;
  }

  std::printf("acceptance: %d criterion(s) failed, total %.0f s\n", g_failures, wall_since(t0));
  return g_failures;
}
