#ifndef HARMEX_IO_WAV_HPP
#define HARMEX_IO_WAV_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>

#include "harmex/error.hpp"
#include "harmex/io/binary.hpp"
#include "harmex/types.hpp"

namespace harmex::io {

enum class WavEncoding { Pcm16, Float32 };

struct WavSpec {
  WavEncoding encoding = WavEncoding::Float32;
};

struct WavWriteReport {
  std::size_t clipped = 0;  // PCM16 samples outside [-1, 1] that saturated
};

inline constexpr double kPcm16Scale = 32767.0;

/// Mono RIFF/WAVE writer. PCM16 scales by 32767 and saturates symmetrically.
inline WavWriteReport write_wav(const std::filesystem::path& path, const AudioSignal& x, const WavSpec& spec = {}) {
  harmex::detail::validate_signal(x, path.string().c_str());
  if (x.sample_rate != std::floor(x.sample_rate) || x.sample_rate > 4294967295.0)
    harmex::detail::fail(ErrorCategory::Config, path.string() + ": WAV needs an integral sample rate");

  const bool pcm = spec.encoding == WavEncoding::Pcm16;
  const std::uint16_t bytes_per_sample = pcm ? 2 : 4;
  const auto data_bytes = static_cast<std::uint32_t>(x.size() * bytes_per_sample);
  const auto rate = static_cast<std::uint32_t>(x.sample_rate);

  ByteWriter w;
  w.tag("RIFF");
  w.u32(36 + data_bytes);
  w.tag("WAVE");
  w.tag("fmt ");
  w.u32(16);
  w.u16(pcm ? 1 : 3);
  w.u16(1);
  w.u32(rate);
  w.u32(rate * bytes_per_sample);
  w.u16(bytes_per_sample);
  w.u16(static_cast<std::uint16_t>(bytes_per_sample * 8));
  w.tag("data");
  w.u32(data_bytes);

  WavWriteReport report;
  for (double s : x.samples) {
    if (!pcm) {
      w.f32(static_cast<float>(s));
      continue;
    }
    if (std::abs(s) > 1.0) ++report.clipped;
    const double v = std::clamp(std::round(s * kPcm16Scale), -kPcm16Scale, kPcm16Scale);
    w.i16(static_cast<std::int16_t>(v));
  }
  write_file(path, w.data());
  return report;
}

struct WavFile {
  AudioSignal signal;
  WavEncoding encoding = WavEncoding::Float32;
};

/// Reads mono PCM16 or IEEE float32 WAV (plain or WAVE_FORMAT_EXTENSIBLE).
inline WavFile read_wav_file(const std::filesystem::path& path) {
  ByteReader r(read_file(path), path.string());
  if (r.tag() != "RIFF") harmex::detail::fail(ErrorCategory::Format, path.string() + ": not a RIFF file");
  r.u32();
  if (r.tag() != "WAVE") harmex::detail::fail(ErrorCategory::Format, path.string() + ": not a WAVE file");

  bool have_fmt = false;
  std::uint16_t format = 0, channels = 0, bits = 0;
  std::uint32_t rate = 0;
  while (r.remaining() >= 8) {
    const std::string id = r.tag();
    const std::uint32_t size = r.u32();
    const std::size_t body = r.position();
    if (id == "fmt ") {
      format = r.u16();
      channels = r.u16();
      rate = r.u32();
      r.u32();
      r.u16();
      bits = r.u16();
      if (format == 0xFFFE && size >= 40) {
        r.u16();
        r.u16();
        r.u32();
        format = r.u16();  // first two bytes of the subformat GUID
      }
      have_fmt = true;
    } else if (id == "data") {
      if (!have_fmt) harmex::detail::fail(ErrorCategory::Format, path.string() + ": data chunk before fmt chunk");
      if (channels != 1)
        harmex::detail::fail(ErrorCategory::Format, path.string() + ": " + std::to_string(channels) +
                                                " channels, only mono is supported");
      WavFile out;
      out.signal.sample_rate = static_cast<double>(rate);
      if (format == 1 && bits == 16) {
        out.encoding = WavEncoding::Pcm16;
        out.signal.samples.resize(size / 2);
        for (auto& s : out.signal.samples) s = static_cast<double>(r.i16()) / kPcm16Scale;
      } else if (format == 3 && bits == 32) {
        out.encoding = WavEncoding::Float32;
        out.signal.samples.resize(size / 4);
        for (auto& s : out.signal.samples) s = static_cast<double>(r.f32());
      } else {
        harmex::detail::fail(ErrorCategory::Format, path.string() + ": unsupported codec (format " +
                                                std::to_string(format) + ", " + std::to_string(bits) + " bits)");
      }
      harmex::detail::validate_signal(out.signal, path.string().c_str());
      return out;
    }
    r.seek(body + size + (size & 1u));
  }
  harmex::detail::fail(ErrorCategory::Format, path.string() + ": no data chunk");
}

inline AudioSignal read_wav(const std::filesystem::path& path) { return read_wav_file(path).signal; }

}  // namespace harmex::io

#endif  // HARMEX_IO_WAV_HPP
