#ifndef HARMEX_CONDITIONING_HPP
#define HARMEX_CONDITIONING_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "harmex/error.hpp"
#include "harmex/spectral.hpp"
#include "harmex/types.hpp"

namespace harmex {

/// Channel names in file order.
inline constexpr std::string_view kChannelOrder[] = {"noise", "raw_excitation", "filtered_excitation"};

struct ChannelParts {
  std::optional<AudioSignal> noise;
  std::optional<AudioSignal> raw_excitation;
  std::optional<AudioSignal> filtered_excitation;
};

struct Channel {
  std::string name;
  std::vector<double> samples;
};

/// Equal-length channels, always in kChannelOrder with absent parts omitted.
struct ConditioningBundle {
  std::vector<Channel> channels;
  double sample_rate = kDefaultSampleRate;

  std::size_t length() const noexcept { return channels.empty() ? 0 : channels.front().samples.size(); }
};

inline ConditioningBundle stack_channels(const ChannelParts& parts) {
  ConditioningBundle out;
  const std::optional<AudioSignal>* ordered[] = {&parts.noise, &parts.raw_excitation, &parts.filtered_excitation};
  for (std::size_t i = 0; i < 3; ++i) {
    const auto& part = *ordered[i];
    if (!part) continue;
    detail::validate_signal(*part, "conditioning channel");
    if (!out.channels.empty()) {
      if (part->size() != out.length())
        detail::fail(ErrorCategory::Config, "channel '" + std::string(kChannelOrder[i]) + "' has length " +
                                                std::to_string(part->size()) + ", expected " +
                                                std::to_string(out.length()));
      if (part->sample_rate != out.sample_rate)
        detail::fail(ErrorCategory::Config, "conditioning channels disagree on sample rate");
    }
    out.sample_rate = part->sample_rate;
    out.channels.push_back({std::string(kChannelOrder[i]), part->samples});
  }
  if (out.channels.empty()) detail::fail(ErrorCategory::Domain, "stack_channels: no channels given");
  return out;
}

/// Linear-phase low-pass for decimation by `factor`: Hann-windowed sinc with
/// cutoff 0.45 / factor cycles per sample and 8 * factor + 1 taps, normalised
/// to unit DC gain.
inline std::vector<double> decimation_filter(std::size_t factor) {
  if (factor == 0) detail::fail(ErrorCategory::Config, "decimation factor must be >= 1");
  const std::size_t n = 8 * factor + 1;
  const double cutoff = 0.45 / static_cast<double>(factor);
  const double mid = static_cast<double>(n - 1) / 2.0;
  std::vector<double> h(n);
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double t = static_cast<double>(i) - mid;
    const double sinc = t == 0.0 ? 2.0 * cutoff
                                 : std::sin(2.0 * std::numbers::pi * cutoff * t) / (std::numbers::pi * t);
    const double w = 0.5 - 0.5 * std::cos(2.0 * std::numbers::pi * (static_cast<double>(i) + 1.0) /
                                          static_cast<double>(n + 1));
    h[i] = sinc * w;
    sum += h[i];
  }
  for (auto& v : h) v /= sum;
  return h;
}

/// Filters with `taps` centred on every factor-th sample; the input edge
/// sample is repeated beyond both ends. Output length floor(len / factor).
inline std::vector<double> decimate(std::span<const double> x, std::size_t factor, std::span<const double> taps) {
  if (factor == 0) detail::fail(ErrorCategory::Config, "decimation factor must be >= 1");
  const std::size_t out_len = x.size() / factor;
  std::vector<double> y(out_len);
  const long long half = static_cast<long long>(taps.size() / 2);
  const long long last = static_cast<long long>(x.size()) - 1;
  for (std::size_t i = 0; i < out_len; ++i) {
    const long long centre = static_cast<long long>(i * factor);
    double acc = 0.0;
    for (std::size_t j = 0; j < taps.size(); ++j) {
      const long long idx = std::clamp<long long>(centre + static_cast<long long>(j) - half, 0, last);
      acc += taps[j] * x[static_cast<std::size_t>(idx)];
    }
    y[i] = acc;
  }
  return y;
}

struct PyramidLevel {
  std::size_t factor = 1;             // this level's own decimation factor
  std::size_t cumulative_factor = 1;  // relative to the bundle sample rate
  std::vector<Channel> channels;

  std::size_t length() const noexcept { return channels.empty() ? 0 : channels.front().samples.size(); }
};

struct ScalePyramid {
  std::vector<PyramidLevel> levels;
  double base_sample_rate = kDefaultSampleRate;
  std::size_t base_length = 0;
};

/// Successive anti-aliased decimation, factors applied left to right.
inline ScalePyramid downsample_multiscale(const ConditioningBundle& bundle,
                                          std::span<const std::size_t> factors) {
  if (bundle.channels.empty()) detail::fail(ErrorCategory::Domain, "downsample: empty bundle");
  for (std::size_t f : factors)
    if (f == 0) detail::fail(ErrorCategory::Config, "decimation factor must be >= 1");

  ScalePyramid out{{}, bundle.sample_rate, bundle.length()};
  std::vector<Channel> current = bundle.channels;
  std::size_t cumulative = 1;
  for (std::size_t factor : factors) {
    const auto taps = decimation_filter(factor);
    cumulative *= factor;
    PyramidLevel level{factor, cumulative, {}};
    for (const auto& ch : current) level.channels.push_back({ch.name, decimate(ch.samples, factor, taps)});
    current = level.channels;
    out.levels.push_back(std::move(level));
  }
  return out;
}

inline ScalePyramid downsample_multiscale(const ConditioningBundle& bundle) {
  static constexpr std::size_t kDefaultFactors[] = {8, 6, 5};
  return downsample_multiscale(bundle, kDefaultFactors);
}

}  // namespace harmex

#endif  // HARMEX_CONDITIONING_HPP
