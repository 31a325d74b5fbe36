#include "spindiff/scenario.hpp"

#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <map>
#include <numbers>

#include "spindiff/analysis.hpp"
#include "spindiff/io.hpp"
#include "spindiff/parallel.hpp"

namespace spindiff {

using json = nlohmann::json;

namespace {

struct OutputSet {
  std::string dir;
  std::map<std::string, std::uint64_t> checksums;

  std::string path(const std::string& name) const { return dir + "/" + name; }
  void note(const std::string& name) { checksums[name] = checksum_file(path(name)); }
};

std::string hex64(std::uint64_t v) {
  char buf[20];
  std::snprintf(buf, sizeof(buf), "0x%016llx", static_cast<unsigned long long>(v));
  return buf;
}

void write_timeseries(OutputSet& out, const EvolveResult& ev) {
  std::string text = "step,t_s,norm,p_up,p_dn,com_x_m,com_x_down_m,norm_down,slab_norm,peak_bz_T\n";
  char line[384];
  for (const auto& r : ev.series) {
    std::snprintf(line, sizeof(line), "%ld,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n",
                  r.step, r.t, r.norm, r.p_up, r.p_dn, r.com_x, r.com_x_down, r.norm_down,
                  r.slab_norm, r.peak_bz);
    text += line;
  }
  write_text_file(out.path("timeseries.csv"), text);
  out.note("timeseries.csv");
}

RealField density_field(const SpinorField& state) {
  RealField rho(state.grid);
  parallel_rows(state.grid.nx, [&](int ix) {
    for (int iy = 0; iy < state.grid.ny; ++iy) {
      const std::size_t n = state.grid.idx(ix, iy);
      rho.v[n] = std::norm(state.up[n]) + std::norm(state.dn[n]);
    }
  });
  return rho;
}

int downstream_com_index(const SpinorField& state, double x_cut) {
  const Grid2D& g = state.grid;
  double mass = 0.0, moment = 0.0;
  for (int ix = 0; ix < g.nx; ++ix) {
    if (g.x(ix) <= x_cut) continue;
    double r = 0.0;
    for (int iy = 0; iy < g.ny; ++iy) {
      const std::size_t n = g.idx(ix, iy);
      r += std::norm(state.up[n]) + std::norm(state.dn[n]);
    }
    mass += r;
    moment += r * ix;
  }
  if (!(mass > 0.0)) throw NumericError("no density downstream of the slab");
  return static_cast<int>(std::lround(moment / mass));
}

double sum(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s;
}

HusimiSpec husimi_spec_for(const ScenarioSetup& setup, double alpha_max) {
  const ScenarioConfig& cfg = setup.cfg;
  HusimiSpec spec;
  spec.probe_sigma = cfg.husimi_probe > 0.0 ? cfg.husimi_probe : cfg.packet.sigma_y;
  const double interior = (0.5 - (cfg.absorber.enabled ? cfg.absorber.width_frac : 0.0)) *
                          setup.grid.extent_y();
  spec.y0_min = -interior;
  spec.y0_max = interior;
  spec.y0_points = cfg.husimi_y0_points;
  double orders = cfg.grating_enabled
                      ? 4.5 * 2.0 * std::numbers::pi / cfg.grating.period
                      : 4.0 / cfg.packet.sigma_y;
  spec.ky0_min = -(orders + std::abs(alpha_max));
  spec.ky0_max = orders + std::abs(alpha_max);
  spec.ky0_points = cfg.husimi_ky0_points;
  spec.pad_factor = cfg.husimi_pad;
  return spec;
}

}  // namespace

ScenarioSetup make_setup(const ScenarioConfig& cfg_in) {
  ScenarioSetup setup;
  setup.cfg = cfg_in;
  ScenarioConfig& cfg = setup.cfg;

  const double h = cfg.spacing > 0.0 ? cfg.spacing : cfg.packet.lambda_dB / 10.0;
  const double sx = cfg.packet.sigma_x, sy = cfg.packet.sigma_y;
  const double a = cfg.absorber.enabled ? cfg.absorber.width_frac : 0.0;
  const double h_g = cfg.grating_enabled ? cfg.grating.thickness : 0.0;

  // Post-slab margin: 8 sigma_x of free flight, plus room for the slow
  // near-grazing slit modes to drain out of the slab before the
  // transmitted packet nears the absorber.
  double span_x = cfg.extent_x;
  const double post = cfg.grating_enabled ? 18.0 * sx : 8.0 * sx;
  if (span_x <= 0.0) span_x = (12.0 * sx + h_g + post) / (1.0 - 2.0 * a);
  double span_y = cfg.extent_y;
  if (span_y <= 0.0) {
    span_y = 8.0 * sy / (1.0 - 2.0 * a);
    if (cfg.grating_enabled)
      span_y = std::max(span_y, cfg.grating.n_slits * cfg.grating.period + 2.0 * h);
  }

  Grid2D probe = make_grid(span_x, span_y, h);
  const int nx = next_fft_size(probe.nx);
  const int ny = next_fft_size(probe.ny);
  setup.grid = Grid2D{nx, ny, h, h, 0.0, -0.5 * ny * h};

  const double interior_x0 = a * setup.grid.extent_x();
  cfg.packet.x0c = interior_x0 + 4.0 * sx;
  cfg.packet.y0c = cfg.grating_enabled ? cfg.grating.y_center : 0.0;
  cfg.grating.x_front = cfg.packet.x0c + 6.0 * sx;
  setup.x_stop = cfg.grating_enabled ? cfg.grating.x_back() + 2.0 * sx
                                     : cfg.packet.x0c + 8.0 * sx;

  if (cfg.plan.max_steps >= 0) {
    setup.steps = cfg.plan.max_steps;
  } else {
    const double v = cfg.packet.velocity();
    const double distance = setup.x_stop - cfg.packet.x0c;
    setup.steps = static_cast<long>(std::ceil(2.2 * distance / (v * cfg.plan.dt))) + 50;
  }
  setup.cfg.plan.max_steps = setup.steps;

  setup.scene = make_scene(setup.grid,
                           cfg.grating_enabled ? std::optional<GratingSpec>(cfg.grating)
                                               : std::nullopt,
                           cfg.absorber);

  if (cfg.b1_grid_mode) {
    if (cfg.l_b1 > cfg.grating.x_front - interior_x0 - 4.0 * sx)
      throw ConfigError("grid-resolved B1 stage does not fit before the grating");
    setup.scene.grid_b1 = {true, cfg.b1, cfg.grating.x_front - cfg.l_b1, cfg.grating.x_front};
  }
  if (cfg.b2_enabled && cfg.b2_grid_mode) {
    const double start = setup.x_stop;
    const double interior_x1 = (1.0 - a) * setup.grid.extent_x();
    if (start + cfg.l_b2 > interior_x1)
      throw ConfigError("grid-resolved B2 stage does not fit after the grating");
    setup.scene.grid_b2 = {true, cfg.g2, start, start + cfg.l_b2};
  }
  return setup;
}

std::string run_scenario(const ScenarioConfig& cfg_in, const std::string& out_dir) {
  const auto t_start = std::chrono::steady_clock::now();
  std::filesystem::create_directories(out_dir);

  ScenarioSetup setup = make_setup(cfg_in);
  const ScenarioConfig& cfg = setup.cfg;
  const double v_x = cfg.packet.velocity();
  const double lambda = cfg.packet.lambda_dB;

  OutputSet out{out_dir, {}};
  json manifest;
  manifest["scenario"] = cfg.scenario;
  manifest["config_hash"] = hex64(cfg.hash);
  manifest["config"] = json::parse(cfg.canonical);

  const double bpi = b_pi(cfg.l_b1, lambda);
  const double alpha = cfg.b2_enabled ? zeeman_alpha(cfg.g2, cfg.l_b2, v_x) : 0.0;
  manifest["derived"] = {
      {"lambda_dB_m", lambda},
      {"v_x_mps", v_x},
      {"b_pi_T", bpi},
      {"alpha_rad_per_m", alpha},
      {"deflection_m", cfg.b2_enabled ? analytic_deflection(cfg.g2, cfg.l_b2, v_x, cfg.l_gs) : 0.0},
      {"gamma_m", cfg.grating_enabled ? lambda * cfg.l_gs / cfg.grating.period : 0.0},
      {"grid", {{"nx", setup.grid.nx}, {"ny", setup.grid.ny}, {"dx_m", setup.grid.dx}}},
      {"x_packet_m", cfg.packet.x0c},
      {"x_front_m", cfg.grating.x_front},
      {"x_snapshot_m", setup.x_stop},
      {"steps_budget", setup.steps}};

  SpinorField state = init_gaussian_spinor(setup.grid, cfg.packet);
  json measured;

  if (setup.steps == 0) {
    // Degenerate run: echo the input state and stop.
    write_field_dump(out.path("density.f64"), density_field(state), "density");
    out.note("density.f64");
  } else {
    Propagator prop(setup.scene, setup.cfg.plan);
    StopRule stop;
    stop.com_x_at_least = setup.x_stop;
    if (cfg.grating_enabled) stop.slab_norm_below = 4e-3;

    const bool sweep_b1 = (cfg.scenario == "b1_sweep");
    const bool per_chi = sweep_b1 && !cfg.b1_transit_shared;

    // Upstream rotation ahead of the transit (single-chi scenarios).
    if (!sweep_b1 && cfg.b1 != 0.0 && !cfg.b1_grid_mode)
      apply_b1_rotation(state, cfg.b1, cfg.l_b1, v_x);

    EvolveResult ev;
    double peak_pre = 0.0;
    if (cfg.scenario == "selffield") {
      // Pause at the pre-grating plane to dump the unperturbed fields.
      StopRule pre_stop;
      pre_stop.com_x_at_least = cfg.grating.x_front - 2.0 * cfg.packet.sigma_x;
      pre_stop.com_downstream = false;  // the packet is still upstream of the slab
      EvolveResult ev_pre = prop.evolve(state, pre_stop);
      peak_pre = prop.self_field().peak_bz;
      write_field_dump(out.path("density_pre.f64"), density_field(state), "density");
      write_field_dump(out.path("ax_pre.f64"), prop.self_field().ax, "ax_self");
      write_field_dump(out.path("ay_pre.f64"), prop.self_field().ay, "ay_self");
      write_field_dump(out.path("bz_pre.f64"), prop.self_field().bz, "bz_self");
      for (const char* f : {"density_pre.f64", "ax_pre.f64", "ay_pre.f64", "bz_pre.f64"})
        out.note(f);
      ev = prop.evolve(state, stop);
      for (auto& r : ev.series) {
        r.step += ev_pre.steps_run;
        r.t += ev_pre.steps_run * cfg.plan.dt;
      }
      ev.steps_run += ev_pre.steps_run;
      ev.series.insert(ev.series.begin(), ev_pre.series.begin(), ev_pre.series.end());
      measured["peak_bz_pre_T"] = peak_pre;
      measured["peak_bz_post_T"] = prop.self_field().peak_bz;
      write_field_dump(out.path("density_post.f64"), density_field(state), "density");
      write_field_dump(out.path("bz_post.f64"), prop.self_field().bz, "bz_self");
      out.note("density_post.f64");
      out.note("bz_post.f64");
    } else {
      ev = prop.evolve(state, stop);
      if (cfg.plan.self_field) {
        const double pre_plane = cfg.grating.x_front - 2.0 * cfg.packet.sigma_x;
        for (const auto& r : ev.series)
          if (r.com_x <= pre_plane) peak_pre = r.peak_bz;
        measured["peak_bz_pre_T"] = peak_pre;
        measured["peak_bz_post_T"] = prop.self_field().peak_bz;
      }
    }
    write_timeseries(out, ev);
    measured["steps_run"] = ev.steps_run;
    measured["stopped_early"] = ev.stopped_early;
    if (!ev.series.empty()) {
      measured["final_norm"] = ev.series.back().norm;
      measured["snapshot_time_s"] = ev.series.back().t;
    }

    if (cfg.grating_enabled) measured["t_c"] = transmission(state, cfg.grating);
    const double x_cut = cfg.grating_enabled ? cfg.grating.x_back() : cfg.packet.x0c;

    if (sweep_b1) {
      std::string csv = "chi,p_flip,p_flip_analytic\n";
      char line[160];
      double max_dev = 0.0;
      for (double chi_v : cfg.chi_values) {
        SpinorField run_state(setup.grid);
        if (per_chi) {
          run_state = init_gaussian_spinor(setup.grid, cfg.packet);
          apply_b1_rotation(run_state, chi_v * bpi, cfg.l_b1, v_x);
          Propagator p2(setup.scene, setup.cfg.plan);
          p2.evolve(run_state, stop);
        } else {
          run_state = state;
          apply_b1_rotation(run_state, chi_v * bpi, cfg.l_b1, v_x);
        }
        FarFieldProfile prof = far_field(run_state, x_cut, cfg.l_gs, v_x, cfg.pad_factor);
        const double p_flip = flip_probability(prof.i_up, prof.i_dn);
        const double p_ana = std::pow(std::sin(0.5 * std::numbers::pi * chi_v), 2);
        max_dev = std::max(max_dev, std::abs(p_flip - p_ana));
        std::snprintf(line, sizeof(line), "%.17g,%.17g,%.17g\n", chi_v, p_flip, p_ana);
        csv += line;
      }
      write_text_file(out.path("b1_sweep.csv"), csv);
      out.note("b1_sweep.csv");
      measured["max_flip_deviation"] = max_dev;
    } else if (cfg.scenario == "husimi_sweep") {
      const double alpha_max =
          cfg.l_b2_values.empty() ? alpha
                                  : zeeman_alpha(cfg.g2, *std::max_element(cfg.l_b2_values.begin(),
                                                                           cfg.l_b2_values.end()),
                                                 v_x);
      const HusimiSpec hspec = husimi_spec_for(setup, alpha_max);
      std::string csv = "l_b2_m,alpha_rad_per_m,mean_ky_up,mean_ky_dn\n";
      char line[200];
      for (double l : cfg.l_b2_values) {
        SpinorField imprinted = state;
        apply_b2_phase(imprinted, cfg.g2, l, v_x);
        const int ix = downstream_com_index(imprinted, x_cut);
        const TransverseSlice slice = extract_slice(imprinted, ix);
        const HusimiMap map = make_husimi(slice, hspec);
        const double a_l = zeeman_alpha(cfg.g2, l, v_x);
        std::snprintf(line, sizeof(line), "%.17g,%.17g,%.17g,%.17g\n", l, a_l,
                      mean_ky(map, SpinChannel::up), mean_ky(map, SpinChannel::dn));
        csv += line;
        if (l == cfg.l_b2_values.back()) {
          write_husimi(out.path("husimi_up.f64"), out.path("husimi_dn.f64"), map);
          out.note("husimi_up.f64");
          out.note("husimi_dn.f64");
          manifest["husimi_axes"] = {{"y0_start_m", map.y0.front()},
                                     {"ky0_start_radpm", map.ky0.front()},
                                     {"probe_sigma_m", map.probe_sigma}};
        }
      }
      write_text_file(out.path("husimi_sweep.csv"), csv);
      out.note("husimi_sweep.csv");
    } else {
      if (cfg.b2_enabled && cfg.b2_grid_mode) {
        // carry the packet through the gridded gradient window
        StopRule through;
        through.com_x_at_least = setup.scene.grid_b2.x_end + 2.0 * cfg.packet.sigma_x;
        EvolveResult ev2 = prop.evolve(state, through);
        for (auto& r : ev2.series) {
          r.step += ev.steps_run;
          r.t += ev.steps_run * cfg.plan.dt;
        }
        ev.series.insert(ev.series.end(), ev2.series.begin(), ev2.series.end());
        ev.steps_run += ev2.steps_run;
      } else if (cfg.b2_enabled && cfg.l_b2 > 0.0) {
        apply_b2_phase(state, cfg.g2, cfg.l_b2, v_x);
      }

      FarFieldProfile prof = far_field(state, x_cut, cfg.l_gs, v_x, cfg.pad_factor);
      write_profile(out.path("farfield.csv"), prof);
      out.note("farfield.csv");

      const double up_total = sum(prof.i_up), dn_total = sum(prof.i_dn);
      measured["channel_fraction_up"] = up_total / (up_total + dn_total);
      measured["channel_fraction_dn"] = dn_total / (up_total + dn_total);
      measured["p_flip_py_to_ny"] = flip_probability(prof.i_py, prof.i_ny);
      try {
        measured["gamma_m"] = fringe_width(prof);
      } catch (const NumericError&) {
        // fewer than 3 fringes (e.g. free propagation); nothing to report
      }
      if (cfg.b2_enabled) {
        measured["centroid_up_m"] = profile_centroid(prof.y_scr, prof.i_up);
        measured["centroid_dn_m"] = profile_centroid(prof.y_scr, prof.i_dn);
      }

      if (cfg.husimi_enabled) {
        const HusimiSpec hspec = husimi_spec_for(setup, alpha);
        const int ix = downstream_com_index(state, x_cut);
        const HusimiMap map = make_husimi(extract_slice(state, ix), hspec);
        measured["mean_ky_up"] = mean_ky(map, SpinChannel::up);
        measured["mean_ky_dn"] = mean_ky(map, SpinChannel::dn);
        write_husimi(out.path("husimi_up.f64"), out.path("husimi_dn.f64"), map);
        out.note("husimi_up.f64");
        out.note("husimi_dn.f64");
        manifest["husimi_axes"] = {{"y0_start_m", map.y0.front()},
                                   {"ky0_start_radpm", map.ky0.front()},
                                   {"probe_sigma_m", map.probe_sigma}};
      }
    }

    if (cfg.dump_fields && cfg.scenario != "selffield") {
      write_field_dump(out.path("density.f64"), density_field(state), "density");
      out.note("density.f64");
    }
  }

  manifest["measured"] = measured;
  const auto t_end = std::chrono::steady_clock::now();
  manifest["wall_clock_s"] = std::chrono::duration<double>(t_end - t_start).count();
  json sums;
  for (const auto& [name, sum_v] : out.checksums) sums[name] = hex64(sum_v);
  manifest["outputs"] = sums;

  const std::string text = manifest.dump(2) + "\n";
  write_text_file(out.path("manifest.json"), text);
  return text;
}

}  // namespace spindiff
