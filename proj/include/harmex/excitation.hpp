#ifndef HARMEX_EXCITATION_HPP
#define HARMEX_EXCITATION_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <optional>
#include <random>
#include <string>
#include <variant>
#include <vector>

#include "harmex/error.hpp"
#include "harmex/types.hpp"

namespace harmex {

// Onset phase policies for the harmonic phase accumulator.
struct ZeroPhase {};
struct SeededRandomPhase {
  std::uint64_t seed = 0;
};
using PhaseInit = std::variant<ZeroPhase, SeededRandomPhase>;

struct ExcitationConfig {
  /// Global scale applied to the harmonic sum. 1.0 gives unit-amplitude harmonics.
  double amplitude = 0.1;
  PhaseInit phase_init = ZeroPhase{};
  /// Upper bound on the number of harmonics, applied after the Nyquist limit.
  std::optional<std::size_t> k_max_cap;
};

inline void validate(const ExcitationConfig& cfg) {
  if (!(cfg.amplitude > 0.0) || !std::isfinite(cfg.amplitude))
    detail::fail(ErrorCategory::Config, "excitation amplitude must be positive");
  if (cfg.k_max_cap && *cfg.k_max_cap < 1)
    detail::fail(ErrorCategory::Config, "k_max_cap must be >= 1");
}

/// Resamples a frame-level pitch track to one value per sample.
///
/// Frame m is centred on sample m * hop. Sample n belongs to the frame whose
/// centre is nearest (ties go to the later frame). Unvoiced owners give 0.
/// Between two voiced centres the pitch is linear; next to an unvoiced frame
/// the owner's value is held, so no glide ever runs into or out of silence.
inline SampleF0 interpolate_f0(const F0Track& track, double sample_rate, std::size_t n_samples) {
  detail::validate_track(track);
  detail::validate_sample_rate(sample_rate);
  const std::size_t hop = detail::hop_samples(track.hop_seconds, sample_rate);
  const std::size_t m = track.size();
  const std::size_t natural = m * hop;
  const std::size_t gap = n_samples > natural ? n_samples - natural : natural - n_samples;
  if (gap > hop)
    detail::fail(ErrorCategory::LengthMismatch,
                 "f0 track of " + std::to_string(m) + " frames cannot cover " +
                     std::to_string(n_samples) + " samples");

  SampleF0 out;
  out.sample_rate = sample_rate;
  out.values.assign(n_samples, 0.0);
  if (m == 0) return out;

  const auto& f0 = track.values;
  for (std::size_t n = 0; n < n_samples; ++n) {
    const std::size_t owner = std::min(m - 1, (n + hop / 2) / hop);
    if (f0[owner] == 0.0) continue;
    const std::size_t left = n / hop;
    if (left + 1 >= m) {
      out.values[n] = f0[owner];
      continue;
    }
    const double a = f0[left];
    const double b = f0[left + 1];
    if (a > 0.0 && b > 0.0) {
      const double frac = static_cast<double>(n - left * hop) / static_cast<double>(hop);
      out.values[n] = a + frac * (b - a);
    } else {
      out.values[n] = f0[owner];
    }
  }
  return out;
}

/// Number of harmonics of f0 at or below Nyquist: floor(fs / (2 f0)).
inline std::size_t harmonic_count(double f0, double sample_rate) {
  if (!(f0 > 0.0) || !std::isfinite(f0))
    detail::fail(ErrorCategory::Domain, "harmonic_count: f0 must be positive");
  detail::validate_sample_rate(sample_rate);
  return static_cast<std::size_t>(std::floor(sample_rate / (2.0 * f0)));
}

namespace detail {

inline void validate_sample_f0(const SampleF0& f0) {
  validate_sample_rate(f0.sample_rate);
  validate_pitch_values(f0.values, "sample f0");
  const double nyquist = 0.5 * f0.sample_rate;
  for (double v : f0.values)
    if (v >= nyquist)
      fail(ErrorCategory::AliasingDomain,
           "f0 of " + std::to_string(v) + " Hz is at or above Nyquist");
}

inline std::size_t capped_count(double f0, double fs, const ExcitationConfig& cfg) {
  std::size_t k = harmonic_count(f0, fs);
  if (cfg.k_max_cap) k = std::min(k, *cfg.k_max_cap);
  return k;
}

}  // namespace detail

/// Harmonic count actually summed at every sample (0 where unvoiced).
inline std::vector<std::size_t> harmonic_counts(const SampleF0& f0, const ExcitationConfig& cfg) {
  validate(cfg);
  detail::validate_sample_f0(f0);
  std::vector<std::size_t> ks(f0.size(), 0);
  for (std::size_t n = 0; n < f0.size(); ++n)
    if (f0.values[n] > 0.0) ks[n] = detail::capped_count(f0.values[n], f0.sample_rate, cfg);
  return ks;
}

/// Additive sine excitation driven by a sample-level pitch track.
///
/// A single base phase accumulates 2 pi f0[n] / fs per sample and is wrapped
/// into [0, 2 pi); harmonic k uses (k * base) mod 2 pi. The accumulator is
/// re-initialised at every unvoiced-to-voiced onset. Unvoiced samples are 0.
inline AudioSignal sine_excitation(const SampleF0& f0, const ExcitationConfig& cfg = {}) {
  validate(cfg);
  detail::validate_sample_f0(f0);
  constexpr double two_pi = 2.0 * std::numbers::pi;
  const double fs = f0.sample_rate;

  std::mt19937_64 rng;
  const bool random_onset = std::holds_alternative<SeededRandomPhase>(cfg.phase_init);
  if (random_onset) rng.seed(std::get<SeededRandomPhase>(cfg.phase_init).seed);
  std::uniform_real_distribution<double> onset_phase(0.0, two_pi);

  AudioSignal out;
  out.sample_rate = fs;
  out.samples.assign(f0.size(), 0.0);

  bool voiced = false;
  double base = 0.0;
  for (std::size_t n = 0; n < f0.size(); ++n) {
    const double hz = f0.values[n];
    if (hz == 0.0) {
      voiced = false;
      continue;
    }
    if (!voiced) {
      base = random_onset ? onset_phase(rng) : 0.0;
      voiced = true;
    }
    base += two_pi * hz / fs;
    if (base >= two_pi) base -= two_pi;

    const std::size_t k_max = detail::capped_count(hz, fs, cfg);
    double acc = 0.0;
    for (std::size_t k = 1; k <= k_max; ++k)
      acc += std::sin(std::fmod(static_cast<double>(k) * base, two_pi));
    out.samples[n] = cfg.amplitude * acc;
  }
  return out;
}

/// I.i.d. standard normal samples from a seeded Mersenne Twister.
inline AudioSignal gaussian_noise(std::size_t n_samples, double sample_rate, std::uint64_t seed) {
  detail::validate_sample_rate(sample_rate);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> dist(0.0, 1.0);
  AudioSignal out;
  out.sample_rate = sample_rate;
  out.samples.resize(n_samples);
  for (auto& s : out.samples) s = dist(rng);
  return out;
}

}  // namespace harmex

#endif  // HARMEX_EXCITATION_HPP
