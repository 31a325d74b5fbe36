#include "spindiff/selffield.hpp"

#include <algorithm>
#include <cmath>

#include "spindiff/constants.hpp"
#include "spindiff/parallel.hpp"

namespace spindiff {

SpinDensityField spin_density(const SpinorField& state) {
  const Grid2D& g = state.grid;
  SpinDensityField s{g, std::vector<double>(g.size()), std::vector<double>(g.size()),
                     std::vector<double>(g.size())};
  parallel_rows(g.nx, [&](int ix) {
    for (int iy = 0; iy < g.ny; ++iy) {
      const std::size_t n = g.idx(ix, iy);
      const cplx cross = std::conj(state.up[n]) * state.dn[n];
      s.sx[n] = 2.0 * cross.real();
      s.sy[n] = 2.0 * cross.imag();
      s.sz[n] = std::norm(state.up[n]) - std::norm(state.dn[n]);
    }
  });
  return s;
}

CurrentField current_density(const SpinorField& state, const RealField* ax,
                             const RealField* ay, const CurrentTerms& terms) {
  const Grid2D& g = state.grid;
  if (ax) require_same_grid(g, ax->grid, "current_density");
  if (ay) require_same_grid(g, ay->grid, "current_density");

  const auto& c = constants();
  const double c_para = c.hbar / c.m_e;
  const double c_dia = c.e / c.m_e;
  const double c_mag = c.hbar / (2.0 * c.m_e);

  std::vector<double> sz;
  if (terms.magnetization) sz = spin_density(state).sz;

  CurrentField j{g, std::vector<double>(g.size(), 0.0), std::vector<double>(g.size(), 0.0)};
  parallel_rows(g.nx, [&](int ix) {
    const int ixp = (ix + 1) % g.nx, ixm = (ix + g.nx - 1) % g.nx;
    for (int iy = 0; iy < g.ny; ++iy) {
      const int iyp = (iy + 1) % g.ny, iym = (iy + g.ny - 1) % g.ny;
      const std::size_t n = g.idx(ix, iy);
      double jx = 0.0, jy = 0.0;

      if (terms.paramagnetic) {
        const cplx dux = (state.up[g.idx(ixp, iy)] - state.up[g.idx(ixm, iy)]) / (2.0 * g.dx);
        const cplx ddx = (state.dn[g.idx(ixp, iy)] - state.dn[g.idx(ixm, iy)]) / (2.0 * g.dx);
        const cplx duy = (state.up[g.idx(ix, iyp)] - state.up[g.idx(ix, iym)]) / (2.0 * g.dy);
        const cplx ddy = (state.dn[g.idx(ix, iyp)] - state.dn[g.idx(ix, iym)]) / (2.0 * g.dy);
        jx += c_para * ((std::conj(state.up[n]) * dux).imag() +
                        (std::conj(state.dn[n]) * ddx).imag());
        jy += c_para * ((std::conj(state.up[n]) * duy).imag() +
                        (std::conj(state.dn[n]) * ddy).imag());
      }

      if (terms.diamagnetic && (ax || ay)) {
        const double rho = std::norm(state.up[n]) + std::norm(state.dn[n]);
        if (ax) jx -= c_dia * ax->v[n] * rho;
        if (ay) jy -= c_dia * ay->v[n] * rho;
      }

      if (terms.magnetization) {
        const double dsz_dy = (sz[g.idx(ix, iyp)] - sz[g.idx(ix, iym)]) / (2.0 * g.dy);
        const double dsz_dx = (sz[g.idx(ixp, iy)] - sz[g.idx(ixm, iy)]) / (2.0 * g.dx);
        jx += c_mag * dsz_dy;   // (curl S)_x in the planar reduction
        jy += c_mag * -dsz_dx;  // (curl S)_y
      }

      j.jx[n] = -c.e * jx;
      j.jy[n] = -c.e * jy;
    }
  });
  return j;
}

SelfFieldSolver::SelfFieldSolver(const Grid2D& grid, BzDerivative mode)
    : grid_(grid), mode_(mode), fft_(grid.nx, grid.ny), packed_(grid.size()), spec_(grid.size()) {}

SelfFieldSolution SelfFieldSolver::solve(const CurrentField& j) {
  require_same_grid(grid_, j.grid, "SelfFieldSolver::solve");
  const Grid2D& g = grid_;
  const int nx = g.nx, ny = g.ny;
  const double mu0 = constants().mu0;
  const bool spectral_bz = (mode_ == BzDerivative::spectral);

  parallel_rows(nx, [&](int ix) {
    for (int iy = 0; iy < ny; ++iy) {
      const std::size_t n = g.idx(ix, iy);
      packed_[n] = {j.jx[n], j.jy[n]};
    }
  });
  fft_.forward(packed_.data());

  // The packed spectrum holds F~ = Jx~ + i Jy~; the components at k and -k
  // unpack jointly, so each conjugate pair is processed once, in place.
  auto nyquist = [&](int i, int jj) {
    return (nx % 2 == 0 && i == nx / 2) || (ny % 2 == 0 && jj == ny / 2);
  };
  parallel_rows(nx, [&](int i) {
    const int mi = (nx - i) % nx;
    for (int jj = 0; jj < ny; ++jj) {
      const int mj = (ny - jj) % ny;
      const std::size_t cidx = g.idx(i, jj), midx = g.idx(mi, mj);
      if (cidx > midx) continue;  // the mirror owner handles this pair

      const cplx f = packed_[cidx], fm = packed_[midx];
      const cplx jx_c = 0.5 * (f + std::conj(fm));
      const cplx jy_c = cplx(0.0, -0.5) * (f - std::conj(fm));
      const cplx jx_m = 0.5 * (fm + std::conj(f));
      const cplx jy_m = cplx(0.0, -0.5) * (fm - std::conj(f));

      auto project = [&](int ii, int ij, cplx jx_k, cplx jy_k, std::size_t out) {
        const double kx = g.kx(ii), ky = g.ky(ij);
        const double k2 = kx * kx + ky * ky;
        if (k2 == 0.0) {
          packed_[out] = 0.0;
          spec_[out] = 0.0;
          return;
        }
        const cplx dot = (kx * jx_k + ky * jy_k) / k2;
        const cplx ax_k = mu0 * (jx_k - kx * dot) / k2;
        const cplx ay_k = mu0 * (jy_k - ky * dot) / k2;
        packed_[out] = ax_k + cplx(0.0, 1.0) * ay_k;
        if (spectral_bz)
          spec_[out] = nyquist(ii, ij) ? cplx{} : cplx(0.0, 1.0) * (kx * ay_k - ky * ax_k);
      };
      project(i, jj, jx_c, jy_c, cidx);
      if (midx != cidx) project(mi, mj, jx_m, jy_m, midx);
    }
  });

  SelfFieldSolution sol(g);
  fft_.backward(packed_.data());
  parallel_rows(nx, [&](int ix) {
    for (int iy = 0; iy < ny; ++iy) {
      const std::size_t n = g.idx(ix, iy);
      sol.ax.v[n] = packed_[n].real();
      sol.ay.v[n] = packed_[n].imag();
    }
  });

  if (spectral_bz) {
    fft_.backward(spec_.data());
    parallel_rows(nx, [&](int ix) {
      for (int iy = 0; iy < ny; ++iy) sol.bz.v[g.idx(ix, iy)] = spec_[g.idx(ix, iy)].real();
    });
  } else {
    parallel_rows(nx, [&](int ix) {
      const int ixp = (ix + 1) % nx, ixm = (ix + nx - 1) % nx;
      for (int iy = 0; iy < ny; ++iy) {
        const int iyp = (iy + 1) % ny, iym = (iy + ny - 1) % ny;
        sol.bz.v[g.idx(ix, iy)] =
            (sol.ay.v[g.idx(ixp, iy)] - sol.ay.v[g.idx(ixm, iy)]) / (2.0 * g.dx) -
            (sol.ax.v[g.idx(ix, iyp)] - sol.ax.v[g.idx(ix, iym)]) / (2.0 * g.dy);
      }
    });
  }

  std::vector<double> partial(nx);
  parallel_rows(nx, [&](int ix) {
    double m = 0.0;
    for (int iy = 0; iy < ny; ++iy) m = std::max(m, std::abs(sol.bz.v[g.idx(ix, iy)]));
    partial[ix] = m;
  });
  sol.peak_bz = *std::max_element(partial.begin(), partial.end());
  return sol;
}

}  // namespace spindiff
