#ifndef HARMEX_FFT_HPP
#define HARMEX_FFT_HPP

#include <fftw3.h>

#include <algorithm>
#include <complex>
#include <cstddef>
#include <mutex>
#include <span>

#include "harmex/error.hpp"

namespace harmex {

namespace detail {
// The FFTW planner is not reentrant; execution on distinct arrays is.
inline std::mutex& fftw_planner_mutex() {
  static std::mutex m;
  return m;
}
}  // namespace detail

/// Real-input DFT of fixed size n, backed by FFTW.
///
/// forward() produces n/2 + 1 bins of X[k] = sum_t x[t] exp(-2 pi i k t / n).
/// inverse() is the exact inverse, including the 1/n factor.
/// Plans are built with FFTW_ESTIMATE, so results are reproducible bit for bit
/// across runs. One instance must not be used from two threads at once.
class RealFft {
 public:
  explicit RealFft(std::size_t n) : n_(n) {
    if (n == 0) detail::fail(ErrorCategory::Config, "fft size must be positive");
    real_ = fftw_alloc_real(n_);
    spec_ = fftw_alloc_complex(bins());
    std::lock_guard<std::mutex> lock(detail::fftw_planner_mutex());
    const int len = static_cast<int>(n_);
    fwd_ = fftw_plan_dft_r2c_1d(len, real_, spec_, FFTW_ESTIMATE);
    inv_ = fftw_plan_dft_c2r_1d(len, spec_, real_, FFTW_ESTIMATE);
  }

  RealFft(const RealFft&) = delete;
  RealFft& operator=(const RealFft&) = delete;

  ~RealFft() {
    {
      std::lock_guard<std::mutex> lock(detail::fftw_planner_mutex());
      fftw_destroy_plan(fwd_);
      fftw_destroy_plan(inv_);
    }
    fftw_free(real_);
    fftw_free(spec_);
  }

  std::size_t size() const noexcept { return n_; }
  std::size_t bins() const noexcept { return n_ / 2 + 1; }

  /// Input shorter than size() is zero-padded.
  void forward(std::span<const double> in, std::span<std::complex<double>> out) {
    if (in.size() > n_ || out.size() < bins())
      detail::fail(ErrorCategory::Config, "fft buffer size mismatch");
    std::copy(in.begin(), in.end(), real_);
    std::fill(real_ + in.size(), real_ + n_, 0.0);
    fftw_execute(fwd_);
    for (std::size_t k = 0; k < bins(); ++k) out[k] = {spec_[k][0], spec_[k][1]};
  }

  void inverse(std::span<const std::complex<double>> in, std::span<double> out) {
    if (in.size() < bins() || out.size() < n_)
      detail::fail(ErrorCategory::Config, "fft buffer size mismatch");
    for (std::size_t k = 0; k < bins(); ++k) {
      spec_[k][0] = in[k].real();
      spec_[k][1] = in[k].imag();
    }
    fftw_execute(inv_);
    const double scale = 1.0 / static_cast<double>(n_);
    for (std::size_t t = 0; t < n_; ++t) out[t] = real_[t] * scale;
  }

 private:
  std::size_t n_;
  double* real_ = nullptr;
  fftw_complex* spec_ = nullptr;
  fftw_plan fwd_ = nullptr;
  fftw_plan inv_ = nullptr;
};

}  // namespace harmex

#endif  // HARMEX_FFT_HPP
