#ifndef HARMEX_TYPES_HPP
#define HARMEX_TYPES_HPP

#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "harmex/error.hpp"

namespace harmex {

inline constexpr double kDefaultSampleRate = 16000.0;
inline constexpr double kDefaultHopSeconds = 0.010;

/// Mono waveform. Samples are nominally in [-1, 1] and always finite.
struct AudioSignal {
  std::vector<double> samples;
  double sample_rate = kDefaultSampleRate;

  std::size_t size() const noexcept { return samples.size(); }
  bool empty() const noexcept { return samples.empty(); }
  std::span<const double> view() const noexcept { return samples; }
};

/// Frame-level pitch in Hz. Zero marks an unvoiced frame.
struct F0Track {
  std::vector<double> values;
  double hop_seconds = kDefaultHopSeconds;

  std::size_t size() const noexcept { return values.size(); }
};

/// Pitch resampled to one value per audio sample.
struct SampleF0 {
  std::vector<double> values;
  double sample_rate = kDefaultSampleRate;

  std::size_t size() const noexcept { return values.size(); }
};

/// Dense row-major matrix; rows are frames throughout the library.
struct Matrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> data;

  Matrix() = default;
  Matrix(std::size_t r, std::size_t c, double fill = 0.0) : rows(r), cols(c), data(r * c, fill) {}

  double& operator()(std::size_t r, std::size_t c) noexcept { return data[r * cols + c]; }
  double operator()(std::size_t r, std::size_t c) const noexcept { return data[r * cols + c]; }
  std::span<double> row(std::size_t r) noexcept { return {data.data() + r * cols, cols}; }
  std::span<const double> row(std::size_t r) const noexcept { return {data.data() + r * cols, cols}; }
};

namespace detail {

inline bool all_finite(std::span<const double> xs) noexcept {
  for (double x : xs)
    if (!std::isfinite(x)) return false;
  return true;
}

inline void validate_sample_rate(double fs) {
  if (!(fs > 0.0) || !std::isfinite(fs))
    fail(ErrorCategory::Config, "sample rate must be positive and finite");
}

inline void validate_signal(const AudioSignal& x, const char* what) {
  validate_sample_rate(x.sample_rate);
  if (!all_finite(x.samples))
    fail(ErrorCategory::Domain, std::string(what) + ": non-finite sample");
}

inline void validate_pitch_values(std::span<const double> values, const char* what) {
  for (double v : values)
    if (!std::isfinite(v) || v < 0.0)
      fail(ErrorCategory::Domain, std::string(what) + ": pitch values must be finite and >= 0");
}

inline void validate_track(const F0Track& track) {
  if (!(track.hop_seconds > 0.0) || !std::isfinite(track.hop_seconds))
    fail(ErrorCategory::Config, "f0 track: hop must be positive");
  validate_pitch_values(track.values, "f0 track");
}

/// Hop length in samples, rounded to the nearest integer.
inline std::size_t hop_samples(double hop_seconds, double sample_rate) {
  const double h = std::round(hop_seconds * sample_rate);
  if (!(h >= 1.0)) fail(ErrorCategory::Config, "hop is shorter than one sample");
  return static_cast<std::size_t>(h);
}

inline std::size_t ceil_div(std::size_t a, std::size_t b) noexcept { return (a + b - 1) / b; }

}  // namespace detail
}  // namespace harmex

#endif  // HARMEX_TYPES_HPP
