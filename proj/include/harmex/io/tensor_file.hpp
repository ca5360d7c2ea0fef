#ifndef HARMEX_IO_TENSOR_FILE_HPP
#define HARMEX_IO_TENSOR_FILE_HPP

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <limits>
#include <string>
#include <vector>

#include "harmex/conditioning.hpp"
#include "harmex/error.hpp"
#include "harmex/io/binary.hpp"
#include "harmex/ltv.hpp"
#include "harmex/spectral.hpp"

namespace harmex::io {

inline constexpr std::uint32_t kFeatureVersion = 1;
inline constexpr std::uint32_t kCoeffVersion = 1;

/// Frame-major float32 tensor as stored on disk ("HMX1").
///
///   "HMX1" | u32 version | u32 n_frames | u32 n_dims | f64 hop_seconds |
///   n_frames * n_dims f32, row-major. All little-endian.
struct FeatureTensor {
  std::uint32_t n_frames = 0;
  std::uint32_t n_dims = 0;
  double hop_seconds = 0.0;
  std::vector<float> values;

  float at(std::size_t frame, std::size_t dim) const { return values[frame * n_dims + dim]; }
};

namespace detail {
inline std::uint32_t checked_u32(std::size_t v, const char* what) {
  if (v > std::numeric_limits<std::uint32_t>::max())
    harmex::detail::fail(ErrorCategory::Config, std::string(what) + " exceeds the u32 file limit");
  return static_cast<std::uint32_t>(v);
}
}  // namespace detail

inline void write_features(const std::filesystem::path& path, const FeatureTensor& t) {
  if (t.values.size() != static_cast<std::size_t>(t.n_frames) * t.n_dims)
    harmex::detail::fail(ErrorCategory::Config, path.string() + ": tensor payload does not match its shape");
  ByteWriter w;
  w.tag("HMX1");
  w.u32(kFeatureVersion);
  w.u32(t.n_frames);
  w.u32(t.n_dims);
  w.f64(t.hop_seconds);
  for (float v : t.values) w.f32(v);
  write_file(path, w.data());
}

inline FeatureTensor read_features(const std::filesystem::path& path) {
  ByteReader r(read_file(path), path.string());
  if (r.tag() != "HMX1") harmex::detail::fail(ErrorCategory::Format, path.string() + ": bad magic, expected HMX1");
  const std::uint32_t version = r.u32();
  if (version != kFeatureVersion)
    harmex::detail::fail(ErrorCategory::Format, path.string() + ": unsupported version " + std::to_string(version));
  FeatureTensor t;
  t.n_frames = r.u32();
  t.n_dims = r.u32();
  t.hop_seconds = r.f64();
  const std::size_t count = static_cast<std::size_t>(t.n_frames) * t.n_dims;
  if (r.remaining() != count * 4)
    harmex::detail::fail(ErrorCategory::Format, path.string() + ": payload size does not match header");
  t.values.resize(count);
  for (auto& v : t.values) v = r.f32();
  return t;
}

inline FeatureTensor to_tensor(const Matrix& m, double hop_seconds) {
  FeatureTensor t{detail::checked_u32(m.rows, "frame count"), detail::checked_u32(m.cols, "dimension count"),
                  hop_seconds, {}};
  t.values.reserve(m.data.size());
  for (double v : m.data) t.values.push_back(static_cast<float>(v));
  return t;
}

inline FeatureTensor to_tensor(const MelSpectrogram& mel) { return to_tensor(mel.frames, mel.hop_seconds()); }

inline FeatureTensor to_tensor(const LoudnessTrack& loud) {
  Matrix m(loud.values.size(), 1);
  m.data = loud.values;
  return to_tensor(m, loud.hop_seconds);
}

/// Rebuilds a mel spectrogram from a stored tensor plus the analysis settings
/// the file itself does not carry.
inline MelSpectrogram to_mel(const FeatureTensor& t, const StftConfig& stft, const MelConfig& mel, double sample_rate) {
  if (t.n_dims != mel.n_mels)
    harmex::detail::fail(ErrorCategory::Config, "mel tensor has " + std::to_string(t.n_dims) + " dims, expected " +
                                                    std::to_string(mel.n_mels));
  MelSpectrogram out{Matrix(t.n_frames, t.n_dims), stft, mel, sample_rate};
  for (std::size_t i = 0; i < t.values.size(); ++i) out.frames.data[i] = static_cast<double>(t.values[i]);
  return out;
}

// ---------------------------------------------------------------------------
// LTV coefficient file ("LTVF"):
//   "LTVF" | u32 version | u32 n_frames | u32 n_taps | f64 hop_seconds |
//   f64 sample_rate | n_frames * n_taps f32, row-major.

inline void write_coeffs(const std::filesystem::path& path, const LtvFirCoeffs& h) {
  harmex::validate(h);
  ByteWriter w;
  w.tag("LTVF");
  w.u32(kCoeffVersion);
  w.u32(detail::checked_u32(h.n_frames(), "frame count"));
  w.u32(detail::checked_u32(h.n_taps(), "tap count"));
  w.f64(h.hop_seconds);
  w.f64(h.sample_rate);
  for (double v : h.taps.data) w.f32(static_cast<float>(v));
  write_file(path, w.data());
}

inline LtvFirCoeffs read_coeffs(const std::filesystem::path& path) {
  ByteReader r(read_file(path), path.string());
  if (r.tag() != "LTVF") harmex::detail::fail(ErrorCategory::Format, path.string() + ": bad magic, expected LTVF");
  const std::uint32_t version = r.u32();
  if (version != kCoeffVersion)
    harmex::detail::fail(ErrorCategory::Format, path.string() + ": unsupported version " + std::to_string(version));
  const std::uint32_t frames = r.u32();
  const std::uint32_t taps = r.u32();
  LtvFirCoeffs h;
  h.hop_seconds = r.f64();
  h.sample_rate = r.f64();
  const std::size_t count = static_cast<std::size_t>(frames) * taps;
  if (r.remaining() != count * 4)
    harmex::detail::fail(ErrorCategory::Format, path.string() + ": payload size does not match header");
  h.taps = Matrix(frames, taps);
  for (auto& v : h.taps.data) v = static_cast<double>(r.f32());
  harmex::validate(h);
  return h;
}

// ---------------------------------------------------------------------------
// Conditioning export: one HMX1 file per scale, channels as dims in bundle
// order, named <prefix>_x<cumulative factor>.hmx.

inline std::filesystem::path scale_path(const std::filesystem::path& prefix, std::size_t cumulative_factor) {
  return prefix.string() + "_x" + std::to_string(cumulative_factor) + ".hmx";
}

inline FeatureTensor channels_to_tensor(const std::vector<Channel>& channels, double hop_seconds) {
  if (channels.empty()) harmex::detail::fail(ErrorCategory::Domain, "no channels to export");
  const std::size_t len = channels.front().samples.size();
  FeatureTensor t{detail::checked_u32(len, "length"), detail::checked_u32(channels.size(), "channel count"),
                  hop_seconds, {}};
  t.values.resize(len * channels.size());
  for (std::size_t c = 0; c < channels.size(); ++c)
    for (std::size_t i = 0; i < len; ++i) t.values[i * channels.size() + c] = static_cast<float>(channels[c].samples[i]);
  return t;
}

inline std::vector<std::filesystem::path> export_conditioning(const ConditioningBundle& bundle,
                                                              const std::filesystem::path& prefix) {
  const auto path = scale_path(prefix, 1);
  write_features(path, channels_to_tensor(bundle.channels, 1.0 / bundle.sample_rate));
  return {path};
}

inline std::vector<std::filesystem::path> export_conditioning(const ScalePyramid& pyramid,
                                                              const std::filesystem::path& prefix) {
  std::vector<std::filesystem::path> written;
  for (const auto& level : pyramid.levels) {
    const auto path = scale_path(prefix, level.cumulative_factor);
    const double hop = static_cast<double>(level.cumulative_factor) / pyramid.base_sample_rate;
    write_features(path, channels_to_tensor(level.channels, hop));
    written.push_back(path);
  }
  return written;
}

}  // namespace harmex::io

#endif  // HARMEX_IO_TENSOR_FILE_HPP
