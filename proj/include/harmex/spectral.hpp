#ifndef HARMEX_SPECTRAL_HPP
#define HARMEX_SPECTRAL_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <string>
#include <vector>

#include "harmex/error.hpp"
#include "harmex/fft.hpp"
#include "harmex/types.hpp"

namespace harmex {

enum class WindowKind { Hann };

struct StftConfig {
  std::size_t fft_size = 1024;
  std::size_t win_size = 640;
  std::size_t hop_size = 160;
  WindowKind window = WindowKind::Hann;

  std::size_t n_bins() const noexcept { return fft_size / 2 + 1; }
  bool operator==(const StftConfig&) const = default;
};

inline void validate(const StftConfig& cfg) {
  if (cfg.hop_size == 0 || cfg.win_size == 0 || cfg.fft_size == 0)
    detail::fail(ErrorCategory::Config, "stft sizes must be positive");
  if (cfg.hop_size > cfg.win_size || cfg.win_size > cfg.fft_size)
    detail::fail(ErrorCategory::Config, "stft sizes must satisfy hop <= win <= fft");
}

/// Periodic Hann window of the given length.
inline std::vector<double> hann_window(std::size_t n) {
  std::vector<double> w(n);
  for (std::size_t i = 0; i < n; ++i)
    w[i] = 0.5 - 0.5 * std::cos(2.0 * std::numbers::pi * static_cast<double>(i) /
                                static_cast<double>(n));
  return w;
}

namespace detail {

// Index into a signal of length n extended by mirror reflection (no edge repeat).
inline std::size_t reflect_index(long long i, std::size_t n) noexcept {
  if (n == 1) return 0;
  const long long period = 2 * (static_cast<long long>(n) - 1);
  long long j = i % period;
  if (j < 0) j += period;
  if (j >= static_cast<long long>(n)) j = period - j;
  return static_cast<std::size_t>(j);
}

}  // namespace detail

/// Magnitude STFT with centred frames.
///
/// Frame f covers fft_size samples centred on f * hop, reflect-padded at both
/// ends; the window sits in the middle of the frame. Frame count is
/// ceil(len / hop), which keeps every frame-level feature on the same grid.
inline Matrix stft_magnitude(const AudioSignal& x, const StftConfig& cfg) {
  validate(cfg);
  detail::validate_signal(x, "stft");
  if (x.empty()) detail::fail(ErrorCategory::Domain, "stft of an empty signal");

  const std::size_t n = x.size();
  const std::size_t n_frames = detail::ceil_div(n, cfg.hop_size);
  const auto window = hann_window(cfg.win_size);
  const std::size_t win_offset = (cfg.fft_size - cfg.win_size) / 2;
  const long long half = static_cast<long long>(cfg.fft_size / 2);

  RealFft fft(cfg.fft_size);
  std::vector<double> frame(cfg.fft_size);
  std::vector<std::complex<double>> spec(cfg.n_bins());
  Matrix mag(n_frames, cfg.n_bins());
  for (std::size_t f = 0; f < n_frames; ++f) {
    std::fill(frame.begin(), frame.end(), 0.0);
    const long long start = static_cast<long long>(f * cfg.hop_size) - half;
    for (std::size_t i = 0; i < cfg.win_size; ++i) {
      const long long t = start + static_cast<long long>(win_offset + i);
      frame[win_offset + i] = window[i] * x.samples[detail::reflect_index(t, n)];
    }
    fft.forward(frame, spec);
    auto row = mag.row(f);
    for (std::size_t k = 0; k < spec.size(); ++k) row[k] = std::abs(spec[k]);
  }
  return mag;
}

inline double hz_to_mel(double hz) noexcept { return 2595.0 * std::log10(1.0 + hz / 700.0); }
inline double mel_to_hz(double mel) noexcept { return 700.0 * (std::pow(10.0, mel / 2595.0) - 1.0); }

/// Triangular filterbank on the HTK mel scale with unit-peak triangles.
class MelFilterbank {
 public:
  MelFilterbank(std::size_t n_mels, double f_min, double f_max, double sample_rate)
      : n_mels_(n_mels), f_min_(f_min), f_max_(f_max), sample_rate_(sample_rate) {
    detail::validate_sample_rate(sample_rate);
    if (n_mels == 0) detail::fail(ErrorCategory::Config, "n_mels must be positive");
    if (!(f_min >= 0.0) || !(f_max > f_min) || f_max > 0.5 * sample_rate)
      detail::fail(ErrorCategory::Config, "mel band edges must satisfy 0 <= f_min < f_max <= fs/2");
    const double lo = hz_to_mel(f_min);
    const double hi = hz_to_mel(f_max);
    edges_.resize(n_mels + 2);
    for (std::size_t i = 0; i < edges_.size(); ++i)
      edges_[i] = mel_to_hz(lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n_mels + 1));
    edges_.front() = f_min;
    edges_.back() = f_max;
  }

  std::size_t n_mels() const noexcept { return n_mels_; }
  double f_min() const noexcept { return f_min_; }
  double f_max() const noexcept { return f_max_; }
  double sample_rate() const noexcept { return sample_rate_; }
  double center_hz(std::size_t band) const noexcept { return edges_[band + 1]; }
  double lower_hz(std::size_t band) const noexcept { return edges_[band]; }
  double upper_hz(std::size_t band) const noexcept { return edges_[band + 2]; }

  /// Weight of `band` at an arbitrary frequency.
  double weight(std::size_t band, double hz) const noexcept {
    const double lo = edges_[band], mid = edges_[band + 1], hi = edges_[band + 2];
    if (hz <= lo || hz >= hi) return 0.0;
    if (hz <= mid) return (hz - lo) / (mid - lo);
    return (hi - hz) / (hi - mid);
  }

  /// n_mels x (fft_size/2 + 1) weight matrix. Throws if any band catches no bin.
  Matrix matrix(std::size_t fft_size) const {
    const std::size_t bins = fft_size / 2 + 1;
    Matrix w(n_mels_, bins);
    for (std::size_t m = 0; m < n_mels_; ++m) {
      double total = 0.0;
      for (std::size_t k = 0; k < bins; ++k) {
        w(m, k) = weight(m, bin_hz(k, fft_size));
        total += w(m, k);
      }
      if (total == 0.0)
        detail::fail(ErrorCategory::Config, "degenerate mel filterbank: band " + std::to_string(m) +
                                                " covers no FFT bin");
    }
    return w;
  }

  double bin_hz(std::size_t k, std::size_t fft_size) const noexcept {
    return static_cast<double>(k) * sample_rate_ / static_cast<double>(fft_size);
  }

 private:
  std::size_t n_mels_;
  double f_min_, f_max_, sample_rate_;
  std::vector<double> edges_;
};

struct MelConfig {
  std::size_t n_mels = 80;
  double f_min = 0.0;
  double f_max = 8000.0;
  double floor = 1e-5;
};

/// Log-mel energies, frames x bands, natural log of floored mel power.
struct MelSpectrogram {
  Matrix frames;
  StftConfig stft;
  MelConfig mel;
  double sample_rate = kDefaultSampleRate;

  std::size_t n_frames() const noexcept { return frames.rows; }
  std::size_t n_mels() const noexcept { return frames.cols; }
  double hop_seconds() const noexcept { return static_cast<double>(stft.hop_size) / sample_rate; }
  MelFilterbank filterbank() const { return {mel.n_mels, mel.f_min, mel.f_max, sample_rate}; }
};

inline MelSpectrogram mel_spectrogram(const AudioSignal& x, const StftConfig& cfg = {},
                                      const MelConfig& mel = {}) {
  if (!(mel.floor > 0.0)) detail::fail(ErrorCategory::Config, "mel floor must be positive");
  const MelFilterbank bank(mel.n_mels, mel.f_min, mel.f_max, x.sample_rate);
  const Matrix weights = bank.matrix(cfg.fft_size);
  const Matrix mag = stft_magnitude(x, cfg);

  MelSpectrogram out{Matrix(mag.rows, mel.n_mels), cfg, mel, x.sample_rate};
  std::vector<double> power(mag.cols);
  for (std::size_t f = 0; f < mag.rows; ++f) {
    const auto mrow = mag.row(f);
    for (std::size_t k = 0; k < power.size(); ++k) power[k] = mrow[k] * mrow[k];
    for (std::size_t m = 0; m < mel.n_mels; ++m) {
      const auto wrow = weights.row(m);
      double e = 0.0;
      for (std::size_t k = 0; k < power.size(); ++k) e += wrow[k] * power[k];
      out.frames(f, m) = std::log(std::max(e, mel.floor));
    }
  }
  return out;
}

struct LoudnessTrack {
  std::vector<double> values;
  double hop_seconds = kDefaultHopSeconds;
};

/// Per-frame RMS over hop-long windows centred on f * hop, clipped to the
/// signal. ceil(len / hop) frames.
inline std::vector<double> frame_rms(const AudioSignal& x, std::size_t hop) {
  if (hop == 0) detail::fail(ErrorCategory::Config, "hop must be positive");
  const std::size_t n = x.size();
  const std::size_t n_frames = detail::ceil_div(n, hop);
  std::vector<double> rms(n_frames, 0.0);
  for (std::size_t f = 0; f < n_frames; ++f) {
    const long long lo = static_cast<long long>(f * hop) - static_cast<long long>(hop / 2);
    const std::size_t begin = static_cast<std::size_t>(std::max(0LL, lo));
    const std::size_t end = std::min(n, static_cast<std::size_t>(lo + static_cast<long long>(hop)));
    double acc = 0.0;
    for (std::size_t i = begin; i < end; ++i) acc += x.samples[i] * x.samples[i];
    if (end > begin) rms[f] = std::sqrt(acc / static_cast<double>(end - begin));
  }
  return rms;
}

inline LoudnessTrack loudness(const AudioSignal& x, std::size_t hop, double floor = 1e-5) {
  detail::validate_signal(x, "loudness");
  if (!(floor > 0.0)) detail::fail(ErrorCategory::Config, "loudness floor must be positive");
  auto rms = frame_rms(x, hop);
  for (auto& v : rms) v = std::log(std::max(v, floor));
  return {std::move(rms), static_cast<double>(hop) / x.sample_rate};
}

}  // namespace harmex

#endif  // HARMEX_SPECTRAL_HPP
