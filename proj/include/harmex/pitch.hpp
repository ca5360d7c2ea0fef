#ifndef HARMEX_PITCH_HPP
#define HARMEX_PITCH_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <optional>
#include <span>
#include <vector>

#include "harmex/fft.hpp"
#include "harmex/spectral.hpp"

namespace harmex {

/// Autocorrelation pitch refinement around a known reference.
///
/// The analysis segment is mean-removed and Hann-windowed; its autocorrelation
/// is divided by the window's own autocorrelation, both evaluated as cosine
/// sums over the power spectrum so the lag can be searched continuously.
class PitchRefiner {
 public:
  struct Result {
    double hz = 0.0;
    double strength = 0.0;  // normalised autocorrelation at the chosen lag
  };

  PitchRefiner(double sample_rate, double min_strength = 0.5)
      : sample_rate_(sample_rate), min_strength_(min_strength) {}

  /// Returns nothing when the peak is weak or pinned to the search boundary.
  std::optional<Result> refine(std::span<const double> segment, double ref_hz, double search_cents) const {
    const std::size_t w = segment.size();
    if (w < 4 || !(ref_hz > 0.0)) return std::nullopt;
    const double span = std::exp2(search_cents / 1200.0);
    const double lag_min = sample_rate_ / (ref_hz * span);
    const double lag_max = sample_rate_ / (ref_hz / span);
    if (lag_max >= static_cast<double>(w) / 2.0 || lag_min < 1.0) return std::nullopt;

    const std::size_t n_fft = next_pow2(2 * w);
    const auto window = hann_window(w);
    double mean = 0.0;
    for (double s : segment) mean += s;
    mean /= static_cast<double>(w);
    std::vector<double> frame(w);
    for (std::size_t i = 0; i < w; ++i) frame[i] = (segment[i] - mean) * window[i];

    RealFft fft(n_fft);
    std::vector<std::complex<double>> spec(fft.bins());
    Spectrum sig = power_spectrum(fft, frame, spec);
    Spectrum win = power_spectrum(fft, window, spec);
    if (sig.lag0 <= 0.0) return std::nullopt;

    const auto rho = [&](double lag) {
      return (sig.at(lag, n_fft) / sig.lag0) / (win.at(lag, n_fft) / win.lag0);
    };

    // Integer-lag scan, then golden-section search on the continuous curve.
    const auto first = static_cast<std::size_t>(std::ceil(lag_min));
    const auto last = static_cast<std::size_t>(std::floor(lag_max));
    double best_lag = lag_min;
    double best = rho(lag_min);
    for (std::size_t lag = first; lag <= last; ++lag) {
      const double v = rho(static_cast<double>(lag));
      if (v > best) best = v, best_lag = static_cast<double>(lag);
    }
    if (rho(lag_max) > best) best = rho(lag_max), best_lag = lag_max;

    double a = std::max(lag_min, best_lag - 1.0);
    double b = std::min(lag_max, best_lag + 1.0);
    const double g = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - g * (b - a), d = a + g * (b - a);
    double fc = rho(c), fd = rho(d);
    for (int it = 0; it < 80 && b - a > 1e-10; ++it) {
      if (fc > fd) {
        b = d, d = c, fd = fc;
        c = b - g * (b - a), fc = rho(c);
      } else {
        a = c, c = d, fc = fd;
        d = a + g * (b - a), fd = rho(d);
      }
    }
    const double lag = 0.5 * (a + b);
    const double strength = rho(lag);
    const double edge_tol = 1e-6;
    if (strength < min_strength_ || lag - lag_min < edge_tol || lag_max - lag < edge_tol) return std::nullopt;
    return Result{sample_rate_ / lag, strength};
  }

 private:
  struct Spectrum {
    std::vector<double> power;
    double lag0 = 0.0;

    // Autocorrelation at a fractional lag from the one-sided power spectrum.
    double at(double lag, std::size_t n_fft) const {
      const double step = 2.0 * std::numbers::pi * lag / static_cast<double>(n_fft);
      const std::size_t nyq = power.size() - 1;
      double acc = power[0] + power[nyq] * std::cos(step * static_cast<double>(nyq));
      for (std::size_t k = 1; k < nyq; ++k) acc += 2.0 * power[k] * std::cos(step * static_cast<double>(k));
      return acc;
    }
  };

  static Spectrum power_spectrum(RealFft& fft, std::span<const double> frame,
                                 std::vector<std::complex<double>>& spec) {
    fft.forward(frame, spec);
    Spectrum s;
    s.power.resize(spec.size());
    for (std::size_t k = 0; k < spec.size(); ++k) s.power[k] = std::norm(spec[k]);
    s.lag0 = s.at(0.0, fft.size());
    return s;
  }

  static std::size_t next_pow2(std::size_t n) noexcept {
    std::size_t p = 1;
    while (p < n) p <<= 1;
    return p;
  }

  double sample_rate_;
  double min_strength_;
};

}  // namespace harmex

#endif  // HARMEX_PITCH_HPP
