#ifndef HARMEX_METRICS_HPP
#define HARMEX_METRICS_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "harmex/error.hpp"
#include "harmex/pitch.hpp"
#include "harmex/spectral.hpp"
#include "harmex/types.hpp"

namespace harmex {

struct MrStftConfig {
  std::vector<StftConfig> resolutions = {
      {512, 240, 50, WindowKind::Hann},
      {1024, 600, 120, WindowKind::Hann},
      {2048, 1200, 240, WindowKind::Hann},
  };
  double magnitude_floor = 1e-7;
};

struct MrStftLoss {
  double sc = 0.0;
  double mag = 0.0;
  double total = 0.0;
};

/// Multi-resolution STFT loss of hypothesis x against reference y.
///
/// Per resolution: spectral convergence ||Y| - |X||_F / ||Y||_F and mean
/// absolute log-magnitude difference with magnitudes floored. Both terms are
/// averaged over resolutions; total is their sum.
inline MrStftLoss mr_stft_loss(const AudioSignal& x, const AudioSignal& y, const MrStftConfig& cfg = {}) {
  if (cfg.resolutions.empty()) detail::fail(ErrorCategory::Config, "mr-stft: no resolutions");
  if (!(cfg.magnitude_floor > 0.0)) detail::fail(ErrorCategory::Config, "mr-stft: floor must be positive");
  if (x.size() != y.size())
    detail::fail(ErrorCategory::LengthMismatch, "mr-stft: lengths differ (" + std::to_string(x.size()) +
                                                    " vs " + std::to_string(y.size()) + ")");
  if (x.sample_rate != y.sample_rate) detail::fail(ErrorCategory::Config, "mr-stft: sample-rate mismatch");

  MrStftLoss out;
  for (const auto& res : cfg.resolutions) {
    const Matrix mx = stft_magnitude(x, res);
    const Matrix my = stft_magnitude(y, res);
    double diff2 = 0.0, ref2 = 0.0, log_abs = 0.0;
    for (std::size_t i = 0; i < my.data.size(); ++i) {
      const double d = my.data[i] - mx.data[i];
      diff2 += d * d;
      ref2 += my.data[i] * my.data[i];
      log_abs += std::abs(std::log(std::max(my.data[i], cfg.magnitude_floor)) -
                          std::log(std::max(mx.data[i], cfg.magnitude_floor)));
    }
    if (ref2 == 0.0) detail::fail(ErrorCategory::DegenerateReference, "mr-stft: reference is all zero");
    out.sc += std::sqrt(diff2) / std::sqrt(ref2);
    out.mag += log_abs / static_cast<double>(my.data.size());
  }
  const auto r = static_cast<double>(cfg.resolutions.size());
  out.sc /= r;
  out.mag /= r;
  out.total = out.sc + out.mag;
  return out;
}

/// Mean absolute difference between two log-mel spectrograms.
inline double mel_mae(const MelSpectrogram& a, const MelSpectrogram& b) {
  if (a.frames.rows != b.frames.rows || a.frames.cols != b.frames.cols)
    detail::fail(ErrorCategory::Config, "mel_mae: shape mismatch");
  if (!(a.stft == b.stft) || a.mel.n_mels != b.mel.n_mels || a.mel.f_min != b.mel.f_min ||
      a.mel.f_max != b.mel.f_max || a.sample_rate != b.sample_rate)
    detail::fail(ErrorCategory::Config, "mel_mae: spectrogram configs differ");
  if (a.frames.data.empty()) detail::fail(ErrorCategory::Config, "mel_mae: empty spectrograms");
  double acc = 0.0;
  for (std::size_t i = 0; i < a.frames.data.size(); ++i) acc += std::abs(a.frames.data[i] - b.frames.data[i]);
  return acc / static_cast<double>(a.frames.data.size());
}

struct LossWeights {
  double alpha = 200.0;  // decoder mel MAE
  double beta = 4.0;     // adversarial
};

/// alpha * l_dec + beta * l_adv + l_stft.
inline double combined_loss(double l_dec, double l_adv, double l_stft, const LossWeights& w = {}) {
  if (!std::isfinite(w.alpha) || !std::isfinite(w.beta) || w.alpha < 0.0 || w.beta < 0.0)
    detail::fail(ErrorCategory::Config, "loss weights must be finite and >= 0");
  if (!std::isfinite(l_dec) || !std::isfinite(l_adv) || !std::isfinite(l_stft))
    detail::fail(ErrorCategory::Domain, "combined_loss: non-finite term");
  return w.alpha * l_dec + w.beta * l_adv + l_stft;
}

// ---------------------------------------------------------------------------
// Harmonic quality metrics on a reference pitch grid.

struct PitchJitterConfig {
  double search_cents = 200.0;
  double min_strength = 0.5;
};

struct PitchJitter {
  double cents = 0.0;           // mean |delta| between adjacent refined frames
  std::size_t frames_used = 0;  // voiced frames refined successfully
  std::size_t frames_skipped = 0;
  std::size_t pairs = 0;
};

namespace detail {

inline std::size_t aligned_hop(const AudioSignal& x, const F0Track& track) {
  validate_track(track);
  validate_signal(x, "metric input");
  const std::size_t hop = hop_samples(track.hop_seconds, x.sample_rate);
  const std::size_t natural = track.size() * hop;
  const std::size_t gap = x.size() > natural ? x.size() - natural : natural - x.size();
  if (gap > hop)
    fail(ErrorCategory::LengthMismatch, "signal of " + std::to_string(x.size()) +
                                            " samples is not aligned to a " + std::to_string(track.size()) +
                                            "-frame track");
  return hop;
}

}  // namespace detail

/// Frame-to-frame pitch instability of x, in cents.
///
/// Each voiced reference frame is refined by autocorrelation within
/// +-search_cents of the reference. The segment is centred on the frame and
/// spans max(hop, three periods of the lowest candidate pitch), shifted inward
/// at the signal edges. Only adjacent refined frames form pairs.
inline PitchJitter pitch_jitter(const AudioSignal& x, const F0Track& ref, const PitchJitterConfig& cfg = {}) {
  const std::size_t hop = detail::aligned_hop(x, ref);
  if (!(cfg.search_cents > 0.0)) detail::fail(ErrorCategory::Config, "search_cents must be positive");
  const bool any_voiced = std::any_of(ref.values.begin(), ref.values.end(), [](double v) { return v > 0.0; });
  if (!any_voiced) detail::fail(ErrorCategory::UndefinedMetric, "pitch_jitter: no voiced frames");

  const PitchRefiner refiner(x.sample_rate, cfg.min_strength);
  const double span = std::exp2(cfg.search_cents / 1200.0);
  PitchJitter out;
  std::vector<double> estimate(ref.size(), 0.0);
  for (std::size_t f = 0; f < ref.size(); ++f) {
    const double r = ref.values[f];
    if (r <= 0.0) continue;
    const auto len = std::max<std::size_t>(hop, static_cast<std::size_t>(std::ceil(3.0 * x.sample_rate * span / r)));
    if (len > x.size()) {
      ++out.frames_skipped;
      continue;
    }
    const long long centred = static_cast<long long>(f * hop) - static_cast<long long>(len / 2);
    const auto begin = static_cast<std::size_t>(std::clamp<long long>(centred, 0, static_cast<long long>(x.size() - len)));
    const auto res = refiner.refine(std::span<const double>(x.samples).subspan(begin, len), r, cfg.search_cents);
    if (!res) {
      ++out.frames_skipped;
      continue;
    }
    estimate[f] = res->hz;
    ++out.frames_used;
  }

  double acc = 0.0;
  for (std::size_t f = 0; f + 1 < ref.size(); ++f) {
    if (estimate[f] > 0.0 && estimate[f + 1] > 0.0) {
      acc += std::abs(1200.0 * std::log2(estimate[f + 1] / estimate[f]));
      ++out.pairs;
    }
  }
  if (out.pairs == 0) detail::fail(ErrorCategory::UndefinedMetric, "pitch_jitter: no adjacent refined frames");
  out.cents = acc / static_cast<double>(out.pairs);
  return out;
}

struct UvConfig {
  double energy_threshold_db = -40.0;
};

/// Fraction of frames whose energy-based voicing decision on x disagrees with
/// the reference (f0 > 0). A frame of x counts as voiced when its RMS is above
/// the threshold relative to the peak absolute sample of x.
inline double uv_error_rate(const AudioSignal& x, const F0Track& ref, const UvConfig& cfg = {}) {
  if (ref.size() == 0) detail::fail(ErrorCategory::Domain, "uv_error_rate: empty track");
  const std::size_t hop = detail::aligned_hop(x, ref);
  const auto rms = frame_rms(x, hop);
  double peak = 0.0;
  for (double s : x.samples) peak = std::max(peak, std::abs(s));
  const double threshold = peak * std::pow(10.0, cfg.energy_threshold_db / 20.0);

  std::size_t errors = 0;
  for (std::size_t f = 0; f < ref.size(); ++f) {
    const double level = f < rms.size() ? rms[f] : 0.0;
    const bool voiced = peak > 0.0 && level > threshold;
    if (voiced != (ref.values[f] > 0.0)) ++errors;
  }
  return static_cast<double>(errors) / static_cast<double>(ref.size());
}

}  // namespace harmex

#endif  // HARMEX_METRICS_HPP
