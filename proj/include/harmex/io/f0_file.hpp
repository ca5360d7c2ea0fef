#ifndef HARMEX_IO_F0_FILE_HPP
#define HARMEX_IO_F0_FILE_HPP

#include <charconv>
#include <filesystem>
#include <fstream>
#include <string>
#include <system_error>

#include "harmex/error.hpp"
#include "harmex/types.hpp"

namespace harmex::io {

/// Plain-text pitch track: one decimal Hz value per line, 0 for unvoiced.
/// Blank lines are ignored. The hop is not stored in the file.
inline F0Track read_f0(const std::filesystem::path& path, double hop_seconds = kDefaultHopSeconds) {
  std::ifstream in(path);
  if (!in) harmex::detail::fail(ErrorCategory::Io, path.string() + ": cannot open for reading");
  F0Track track;
  track.hop_seconds = hop_seconds;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    const auto last = line.find_last_not_of(" \t\r");
    const char* begin = line.data() + first;
    const char* end = line.data() + last + 1;
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(begin, end, v);
    if (ec != std::errc() || ptr != end)
      harmex::detail::fail(ErrorCategory::Format, path.string() + ":" + std::to_string(lineno) + ": not a number");
    track.values.push_back(v);
  }
  try {
    harmex::detail::validate_track(track);
  } catch (const Error& e) {
    harmex::detail::fail(e.category(), path.string() + ": " + e.what());
  }
  return track;
}

inline void write_f0(const std::filesystem::path& path, const F0Track& track) {
  harmex::detail::validate_track(track);
  std::ofstream out(path, std::ios::trunc);
  if (!out) harmex::detail::fail(ErrorCategory::Io, path.string() + ": cannot open for writing");
  char buf[64];
  for (double v : track.values) {
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    out.write(buf, ptr - buf);
    out.put('\n');
  }
  if (!out) harmex::detail::fail(ErrorCategory::Io, path.string() + ": write failed");
}

}  // namespace harmex::io

#endif  // HARMEX_IO_F0_FILE_HPP
