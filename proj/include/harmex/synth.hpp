#ifndef HARMEX_SYNTH_HPP
#define HARMEX_SYNTH_HPP

#include <cmath>
#include <numbers>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "harmex/error.hpp"
#include "harmex/types.hpp"

namespace harmex {

struct Formant {
  double hz = 500.0;
  double bandwidth_hz = 80.0;
};

/// Cascade of two-pole resonators, each normalised to unit gain at DC.
inline AudioSignal formant_filter(const AudioSignal& x, std::span<const Formant> formants) {
  detail::validate_signal(x, "formant_filter");
  AudioSignal y = x;
  for (const auto& f : formants) {
    if (!(f.hz > 0.0) || f.hz >= x.sample_rate / 2.0 || !(f.bandwidth_hz > 0.0))
      detail::fail(ErrorCategory::Config, "formant must lie in (0, fs/2) with positive bandwidth");
    const double r = std::exp(-std::numbers::pi * f.bandwidth_hz / x.sample_rate);
    const double a1 = 2.0 * r * std::cos(2.0 * std::numbers::pi * f.hz / x.sample_rate);
    const double a2 = -r * r;
    const double b0 = 1.0 - a1 - a2;
    double y1 = 0.0, y2 = 0.0;
    for (auto& s : y.samples) {
      const double out = b0 * s + a1 * y1 + a2 * y2;
      y2 = y1;
      y1 = out;
      s = out;
    }
  }
  return y;
}

/// First three formants of a few reference vowels (adult male averages).
inline std::vector<Formant> vowel_formants(std::string_view vowel) {
  if (vowel == "a") return {{730, 90}, {1090, 110}, {2440, 160}};
  if (vowel == "e") return {{530, 60}, {1840, 100}, {2480, 160}};
  if (vowel == "i") return {{270, 60}, {2290, 100}, {3010, 180}};
  if (vowel == "o") return {{570, 70}, {840, 80}, {2410, 160}};
  if (vowel == "u") return {{300, 60}, {870, 80}, {2240, 150}};
  detail::fail(ErrorCategory::Config, "unknown vowel '" + std::string(vowel) + "' (expected a, e, i, o or u)");
}

}  // namespace harmex

#endif  // HARMEX_SYNTH_HPP
