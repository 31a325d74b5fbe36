#include "spindiff/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "spindiff/fft.hpp"
#include "spindiff/grid.hpp"

namespace spindiff {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

}  // namespace

FarFieldProfile far_field(const SpinorField& state, double x_cut, double l_gs,
                          double v_x, int pad_factor) {
  if (!(v_x > 0.0)) throw ConfigError("far_field requires v_x > 0");
  if (pad_factor < 1) throw ConfigError("far_field pad_factor must be >= 1");
  const Grid2D& g = state.grid;
  const auto& c = constants();

  const int m = next_fft_size(pad_factor * g.ny);
  Fft1D fft(m);
  std::vector<cplx> bu(m), bd(m);
  std::vector<double> au(m, 0.0), ad(m, 0.0), ap(m, 0.0), an(m, 0.0);

  const double amp = g.dy / std::sqrt(kTwoPi);
  for (int ix = 0; ix < g.nx; ++ix) {
    if (g.x(ix) <= x_cut) continue;
    std::fill(bu.begin(), bu.end(), cplx{});
    std::fill(bd.begin(), bd.end(), cplx{});
    for (int iy = 0; iy < g.ny; ++iy) {
      bu[iy] = amp * state.up[g.idx(ix, iy)];
      bd[iy] = amp * state.dn[g.idx(ix, iy)];
    }
    fft.forward(bu.data());
    fft.forward(bd.data());
    for (int k = 0; k < m; ++k) {
      au[k] += g.dx * std::norm(bu[k]);
      ad[k] += g.dx * std::norm(bd[k]);
      const cplx py = (bu[k] - cplx(0.0, 1.0) * bd[k]) / std::sqrt(2.0);
      const cplx ny = (bu[k] + cplx(0.0, 1.0) * bd[k]) / std::sqrt(2.0);
      ap[k] += g.dx * std::norm(py);
      an[k] += g.dx * std::norm(ny);
    }
  }

  FarFieldProfile p;
  p.l_gs = l_gs;
  p.t_scr = l_gs / v_x;
  const double drift = c.hbar * p.t_scr / c.m_e;  // k_y -> y_scr
  const double scale = 1.0 / drift;               // intensity per unit screen length
  p.y_scr.resize(m);
  p.i_up.resize(m);
  p.i_dn.resize(m);
  p.i_py.resize(m);
  p.i_ny.resize(m);
  for (int j = 0; j < m; ++j) {
    const int freq = j - m / 2;  // monotonic axis, negative frequencies first
    const int bin = (freq + m) % m;
    const double ky = kTwoPi * freq / (m * g.dy);
    p.y_scr[j] = drift * ky;
    p.i_up[j] = scale * au[bin];
    p.i_dn[j] = scale * ad[bin];
    p.i_py[j] = scale * ap[bin];
    p.i_ny[j] = scale * an[bin];
  }
  return p;
}

std::pair<std::vector<double>, std::vector<double>> sigma_y_projection(
    const std::vector<cplx>& up_k, const std::vector<cplx>& dn_k) {
  if (up_k.size() != dn_k.size())
    throw DimensionError("sigma_y_projection amplitude length mismatch");
  std::vector<double> py(up_k.size()), ny(up_k.size());
  for (std::size_t i = 0; i < up_k.size(); ++i) {
    py[i] = 0.5 * std::norm(up_k[i] - cplx(0.0, 1.0) * dn_k[i]);
    ny[i] = 0.5 * std::norm(up_k[i] + cplx(0.0, 1.0) * dn_k[i]);
  }
  return {py, ny};
}

double flip_probability(const std::vector<double>& i_a, const std::vector<double>& i_b) {
  double sa = 0.0, sb = 0.0;
  for (double v : i_a) sa += v;
  for (double v : i_b) sb += v;
  const double total = sa + sb;
  if (!(total > 0.0)) throw NumericError("flip_probability undefined for zero total intensity");
  return sb / total;
}

double b_pi(double l_b1, double lambda_dB, const PhysicalConstants& c) {
  if (!(l_b1 > 0.0) || !(lambda_dB > 0.0)) throw ConfigError("b_pi requires positive lengths");
  return 4.0 * std::numbers::pi * std::numbers::pi * c.hbar /
         (std::abs(c.g_factor) * c.e * l_b1 * lambda_dB);
}

double chi(double b1, double b_pi_value) { return b1 / b_pi_value; }

double zeeman_alpha(double g2, double l_b2, double v_x, const PhysicalConstants& c) {
  if (!(v_x > 0.0)) throw ConfigError("zeeman_alpha requires v_x > 0");
  return c.g_factor * c.mu_B() / (2.0 * c.hbar) * g2 * (l_b2 / v_x);
}

double analytic_deflection(double g2, double l_b2, double v_x, double l_gs,
                           const PhysicalConstants& c) {
  return c.hbar * (l_gs / v_x) / c.m_e * std::abs(zeeman_alpha(g2, l_b2, v_x, c));
}

double transmission_past(const SpinorField& state, double x_back) {
  const Grid2D& g = state.grid;
  double sum = 0.0;
  for (int ix = 0; ix < g.nx; ++ix) {
    if (g.x(ix) <= x_back) continue;
    for (int iy = 0; iy < g.ny; ++iy) {
      const std::size_t n = g.idx(ix, iy);
      sum += std::norm(state.up[n]) + std::norm(state.dn[n]);
    }
  }
  return sum * g.dx * g.dy;
}

double transmission(const SpinorField& state, const GratingSpec& grating) {
  const Grid2D& g = state.grid;
  double slab = 0.0;
  for (int ix = 0; ix < g.nx; ++ix) {
    const double x = g.x(ix);
    if (x < grating.x_front || x > grating.x_back()) continue;
    for (int iy = 0; iy < g.ny; ++iy) {
      const std::size_t n = g.idx(ix, iy);
      slab += std::norm(state.up[n]) + std::norm(state.dn[n]);
    }
  }
  slab *= g.dx * g.dy;
  if (slab >= 5e-3)
    throw StalenessError("transmission requested before the packet cleared the slab (slab norm " +
                         std::to_string(slab) + ")");
  return transmission_past(state, grating.x_back());
}

TransverseSlice extract_slice(const SpinorField& state, int ix) {
  const Grid2D& g = state.grid;
  if (ix < 0 || ix >= g.nx) throw DimensionError("slice index outside grid");
  TransverseSlice s;
  s.dy = g.dy;
  s.y_start = g.y0;
  s.up.resize(g.ny);
  s.dn.resize(g.ny);
  double nrm = 0.0;
  for (int iy = 0; iy < g.ny; ++iy) {
    s.up[iy] = state.up[g.idx(ix, iy)];
    s.dn[iy] = state.dn[g.idx(ix, iy)];
    nrm += std::norm(s.up[iy]) + std::norm(s.dn[iy]);
  }
  nrm = std::sqrt(nrm * g.dy);
  if (nrm > 0.0) {
    for (int iy = 0; iy < g.ny; ++iy) {
      s.up[iy] /= nrm;
      s.dn[iy] /= nrm;
    }
  }
  return s;
}

HusimiMap make_husimi(const TransverseSlice& slice, const HusimiSpec& spec) {
  if (!(spec.probe_sigma > 0.0)) throw ConfigError("husimi probe_sigma must be positive");
  const int n = static_cast<int>(slice.up.size());
  const double dy = slice.dy;
  const int m = next_fft_size(std::max(spec.pad_factor, 1) * n);
  const double dk = kTwoPi / (m * dy);

  // ky0 axis: FFT bins inside the requested range, strided to ~ky0_points.
  const double k_nyq = std::numbers::pi / dy;
  const double k_lo = std::max(spec.ky0_min, -k_nyq);
  const double k_hi = std::min(spec.ky0_max, k_nyq - dk);
  if (!(k_hi > k_lo)) throw ConfigError("husimi ky0 range empty");
  const int f_lo = static_cast<int>(std::ceil(k_lo / dk));
  const int f_hi = static_cast<int>(std::floor(k_hi / dk));
  const int stride_k = std::max(1, (f_hi - f_lo + 1) / std::max(spec.ky0_points, 1));

  HusimiMap map;
  map.probe_sigma = spec.probe_sigma;
  std::vector<int> bins;
  for (int f = f_lo; f <= f_hi; f += stride_k) {
    bins.push_back((f + m) % m);
    map.ky0.push_back(f * dk);
  }

  // y0 axis: slice grid points inside the window, strided to ~y0_points.
  const double y_end = slice.y_start + (n - 1) * dy;
  const double y_lo = std::max(spec.y0_min, slice.y_start);
  const double y_hi = std::min(spec.y0_max, y_end);
  if (!(y_hi > y_lo)) throw ConfigError("husimi y0 range empty");
  const int j_lo = static_cast<int>(std::ceil((y_lo - slice.y_start) / dy));
  const int j_hi = static_cast<int>(std::floor((y_hi - slice.y_start) / dy));
  const int stride_y = std::max(1, (j_hi - j_lo + 1) / std::max(spec.y0_points, 1));
  std::vector<int> centers;
  for (int j = j_lo; j <= j_hi; j += stride_y) {
    centers.push_back(j);
    map.y0.push_back(slice.y(j));
  }

  const std::size_t nk = map.ky0.size();
  map.q_up.assign(map.y0.size() * nk, 0.0);
  map.q_dn.assign(map.y0.size() * nk, 0.0);

  Fft1D fft(m);
  const double norm_probe = std::pow(1.0 / (std::numbers::pi * spec.probe_sigma * spec.probe_sigma), 0.25);
  std::vector<double> probe(n);
  std::vector<cplx> buf(m);
  for (std::size_t iy0 = 0; iy0 < centers.size(); ++iy0) {
    const double y0 = map.y0[iy0];
    for (int j = 0; j < n; ++j) {
      const double r = slice.y(j) - y0;
      probe[j] = norm_probe * std::exp(-r * r / (2.0 * spec.probe_sigma * spec.probe_sigma));
    }
    for (int channel = 0; channel < 2; ++channel) {
      const auto& psi = channel == 0 ? slice.up : slice.dn;
      auto& q = channel == 0 ? map.q_up : map.q_dn;
      std::fill(buf.begin(), buf.end(), cplx{});
      for (int j = 0; j < n; ++j) buf[j] = probe[j] * psi[j];
      fft.forward(buf.data());
      for (std::size_t ik = 0; ik < nk; ++ik) {
        const cplx overlap = buf[bins[ik]] * dy;
        q[iy0 * nk + ik] = std::norm(overlap) / std::numbers::pi;
      }
    }
  }
  return map;
}

double mean_ky(const HusimiMap& map, SpinChannel channel) {
  const auto& q = channel == SpinChannel::up ? map.q_up : map.q_dn;
  const std::size_t nk = map.ky0.size();
  double mass = 0.0, moment = 0.0;
  for (std::size_t iy0 = 0; iy0 < map.y0.size(); ++iy0) {
    for (std::size_t ik = 0; ik < nk; ++ik) {
      const double v = q[iy0 * nk + ik];
      mass += v;
      moment += v * map.ky0[ik];
    }
  }
  if (!(mass > 0.0)) throw NumericError("mean_ky: zero mass in requested channel");
  return moment / mass;
}

std::pair<double, double> transverse_momentum_mean(const SpinorField& state, double x_cut) {
  const Grid2D& g = state.grid;
  Fft1D fft(g.ny);
  std::vector<cplx> row(g.ny);
  double mass_u = 0.0, mom_u = 0.0, mass_d = 0.0, mom_d = 0.0;
  for (int ix = 0; ix < g.nx; ++ix) {
    if (g.x(ix) <= x_cut) continue;
    for (int channel = 0; channel < 2; ++channel) {
      const auto& psi = channel == 0 ? state.up : state.dn;
      for (int iy = 0; iy < g.ny; ++iy) row[iy] = psi[g.idx(ix, iy)];
      fft.forward(row.data());
      double mass = 0.0, mom = 0.0;
      for (int k = 0; k < g.ny; ++k) {
        const double w = std::norm(row[k]);
        mass += w;
        mom += w * g.ky(k);
      }
      if (channel == 0) {
        mass_u += mass;
        mom_u += mom;
      } else {
        mass_d += mass;
        mom_d += mom;
      }
    }
  }
  if (!(mass_u > 0.0) || !(mass_d > 0.0))
    throw NumericError("transverse_momentum_mean: zero mass in a channel");
  return {mom_u / mass_u, mom_d / mass_d};
}

double fringe_width(const FarFieldProfile& profile) {
  const std::size_t n = profile.y_scr.size();
  std::vector<double> total(n);
  double gmax = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    total[j] = profile.i_up[j] + profile.i_dn[j];
    gmax = std::max(gmax, total[j]);
  }
  if (!(gmax > 0.0)) throw NumericError("fringe_width: empty profile");

  const double threshold = 0.1 * gmax;
  std::vector<double> peaks;
  for (std::size_t j = 1; j + 1 < n; ++j) {
    if (total[j] < threshold) continue;
    if (!(total[j] > total[j - 1] && total[j] >= total[j + 1])) continue;
    const double denom = total[j - 1] - 2.0 * total[j] + total[j + 1];
    double delta = 0.0;
    if (denom < 0.0) delta = 0.5 * (total[j - 1] - total[j + 1]) / denom;
    const double dy = profile.y_scr[1] - profile.y_scr[0];
    peaks.push_back(profile.y_scr[j] + delta * dy);
  }
  if (peaks.size() < 3)
    throw NumericError("fringe_width: fewer than 3 principal maxima (" +
                       std::to_string(peaks.size()) + ")");
  std::vector<double> gaps(peaks.size() - 1);
  for (std::size_t i = 0; i + 1 < peaks.size(); ++i) gaps[i] = peaks[i + 1] - peaks[i];
  std::sort(gaps.begin(), gaps.end());
  const std::size_t mid = gaps.size() / 2;
  return gaps.size() % 2 == 1 ? gaps[mid] : 0.5 * (gaps[mid - 1] + gaps[mid]);
}

double profile_centroid(const std::vector<double>& axis, const std::vector<double>& intensity) {
  if (axis.size() != intensity.size()) throw DimensionError("profile_centroid length mismatch");
  double mass = 0.0, moment = 0.0;
  for (std::size_t i = 0; i < axis.size(); ++i) {
    mass += intensity[i];
    moment += intensity[i] * axis[i];
  }
  if (!(mass > 0.0)) throw NumericError("profile_centroid: zero mass");
  return moment / mass;
}

}  // namespace spindiff
