#pragma once

#include <complex>
#include <vector>

namespace spindiff {

// Thin RAII wrappers over FFTW c2c plans. Plans are created with
// FFTW_ESTIMATE so plan selection (and therefore the bitwise result)
// is reproducible run to run, and FFTW_UNALIGNED so a plan can execute
// on any buffer of the planned shape. forward() is unnormalized;
// backward() divides by N.

class Fft2D {
 public:
  Fft2D(int nx, int ny);
  ~Fft2D();
  Fft2D(Fft2D&&) noexcept;
  Fft2D& operator=(Fft2D&&) noexcept;
  Fft2D(const Fft2D&) = delete;
  Fft2D& operator=(const Fft2D&) = delete;

  void forward(std::complex<double>* data) const;
  void backward(std::complex<double>* data) const;
  /// backward without the 1/N factor (caller folds it elsewhere)
  void backward_raw(std::complex<double>* data) const;

  int nx() const { return nx_; }
  int ny() const { return ny_; }

 private:
  int nx_ = 0, ny_ = 0;
  void* fwd_ = nullptr;
  void* bwd_ = nullptr;
};

class Fft1D {
 public:
  explicit Fft1D(int n);
  ~Fft1D();
  Fft1D(Fft1D&&) noexcept;
  Fft1D& operator=(Fft1D&&) noexcept;
  Fft1D(const Fft1D&) = delete;
  Fft1D& operator=(const Fft1D&) = delete;

  void forward(std::complex<double>* data) const;
  void backward(std::complex<double>* data) const;

  int n() const { return n_; }

 private:
  int n_ = 0;
  void* fwd_ = nullptr;
  void* bwd_ = nullptr;
};

}  // namespace spindiff
