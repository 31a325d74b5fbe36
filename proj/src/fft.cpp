#include "spindiff/fft.hpp"

#include <fftw3.h>

#include <utility>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace spindiff {

namespace {

fftw_complex* as_fftw(std::complex<double>* p) { return reinterpret_cast<fftw_complex*>(p); }

// Plans pick up the worker count once per process; results are bitwise
// reproducible for a fixed thread count.
void configure_threads() {
#ifdef _OPENMP
  static const bool done = [] {
    fftw_init_threads();
    return true;
  }();
  (void)done;
  fftw_plan_with_nthreads(omp_get_max_threads());
#endif
}

}  // namespace

Fft2D::Fft2D(int nx, int ny) : nx_(nx), ny_(ny) {
  configure_threads();
  std::vector<std::complex<double>> scratch(static_cast<std::size_t>(nx) * ny);
  const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
  fwd_ = fftw_plan_dft_2d(nx, ny, as_fftw(scratch.data()), as_fftw(scratch.data()),
                          FFTW_FORWARD, flags);
  bwd_ = fftw_plan_dft_2d(nx, ny, as_fftw(scratch.data()), as_fftw(scratch.data()),
                          FFTW_BACKWARD, flags);
}

Fft2D::~Fft2D() {
  if (fwd_) fftw_destroy_plan(static_cast<fftw_plan>(fwd_));
  if (bwd_) fftw_destroy_plan(static_cast<fftw_plan>(bwd_));
}

Fft2D::Fft2D(Fft2D&& o) noexcept
    : nx_(o.nx_), ny_(o.ny_), fwd_(std::exchange(o.fwd_, nullptr)), bwd_(std::exchange(o.bwd_, nullptr)) {}

Fft2D& Fft2D::operator=(Fft2D&& o) noexcept {
  if (this != &o) {
    this->~Fft2D();
    nx_ = o.nx_;
    ny_ = o.ny_;
    fwd_ = std::exchange(o.fwd_, nullptr);
    bwd_ = std::exchange(o.bwd_, nullptr);
  }
  return *this;
}

void Fft2D::forward(std::complex<double>* data) const {
  fftw_execute_dft(static_cast<fftw_plan>(fwd_), as_fftw(data), as_fftw(data));
}

void Fft2D::backward_raw(std::complex<double>* data) const {
  fftw_execute_dft(static_cast<fftw_plan>(bwd_), as_fftw(data), as_fftw(data));
}

void Fft2D::backward(std::complex<double>* data) const {
  backward_raw(data);
  const double s = 1.0 / (static_cast<double>(nx_) * ny_);
  const std::size_t n = static_cast<std::size_t>(nx_) * ny_;
  for (std::size_t i = 0; i < n; ++i) data[i] *= s;
}

Fft1D::Fft1D(int n) : n_(n) {
  configure_threads();
  std::vector<std::complex<double>> scratch(n);
  const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
  fwd_ = fftw_plan_dft_1d(n, as_fftw(scratch.data()), as_fftw(scratch.data()), FFTW_FORWARD, flags);
  bwd_ = fftw_plan_dft_1d(n, as_fftw(scratch.data()), as_fftw(scratch.data()), FFTW_BACKWARD, flags);
}

Fft1D::~Fft1D() {
  if (fwd_) fftw_destroy_plan(static_cast<fftw_plan>(fwd_));
  if (bwd_) fftw_destroy_plan(static_cast<fftw_plan>(bwd_));
}

Fft1D::Fft1D(Fft1D&& o) noexcept
    : n_(o.n_), fwd_(std::exchange(o.fwd_, nullptr)), bwd_(std::exchange(o.bwd_, nullptr)) {}

Fft1D& Fft1D::operator=(Fft1D&& o) noexcept {
  if (this != &o) {
    this->~Fft1D();
    n_ = o.n_;
    fwd_ = std::exchange(o.fwd_, nullptr);
    bwd_ = std::exchange(o.bwd_, nullptr);
  }
  return *this;
}

void Fft1D::forward(std::complex<double>* data) const {
  fftw_execute_dft(static_cast<fftw_plan>(fwd_), as_fftw(data), as_fftw(data));
}

void Fft1D::backward(std::complex<double>* data) const {
  fftw_execute_dft(static_cast<fftw_plan>(bwd_), as_fftw(data), as_fftw(data));
  const double s = 1.0 / n_;
  for (int i = 0; i < n_; ++i) data[i] *= s;
}

}  // namespace spindiff
