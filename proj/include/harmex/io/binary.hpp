#ifndef HARMEX_IO_BINARY_HPP
#define HARMEX_IO_BINARY_HPP

#include <bit>
#include <cstddef>
#include <cstdint>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "harmex/error.hpp"

namespace harmex::io {

// Little-endian byte packing independent of host order.
class ByteWriter {
 public:
  void bytes(const void* p, std::size_t n) {
    const auto* b = static_cast<const unsigned char*>(p);
    buf_.insert(buf_.end(), b, b + n);
  }
  void tag(const char (&t)[5]) { bytes(t, 4); }
  void u16(std::uint16_t v) { uint_le(v, 2); }
  void u32(std::uint32_t v) { uint_le(v, 4); }
  void f32(float v) { u32(std::bit_cast<std::uint32_t>(v)); }
  void f64(double v) { uint_le(std::bit_cast<std::uint64_t>(v), 8); }
  void i16(std::int16_t v) { u16(static_cast<std::uint16_t>(v)); }

  const std::vector<unsigned char>& data() const noexcept { return buf_; }

 private:
  void uint_le(std::uint64_t v, int n) {
    for (int i = 0; i < n; ++i) buf_.push_back(static_cast<unsigned char>((v >> (8 * i)) & 0xFF));
  }
  std::vector<unsigned char> buf_;
};

class ByteReader {
 public:
  ByteReader(std::vector<unsigned char> data, std::string context)
      : buf_(std::move(data)), context_(std::move(context)) {}

  std::size_t remaining() const noexcept { return buf_.size() - pos_; }
  std::size_t position() const noexcept { return pos_; }
  void seek(std::size_t pos) {
    if (pos > buf_.size()) truncated();
    pos_ = pos;
  }
  void skip(std::size_t n) { seek(pos_ + n); }

  std::string tag() {
    need(4);
    std::string t(reinterpret_cast<const char*>(&buf_[pos_]), 4);
    pos_ += 4;
    return t;
  }
  std::uint16_t u16() { return static_cast<std::uint16_t>(uint_le(2)); }
  std::uint32_t u32() { return static_cast<std::uint32_t>(uint_le(4)); }
  float f32() { return std::bit_cast<float>(u32()); }
  double f64() { return std::bit_cast<double>(uint_le(8)); }
  std::int16_t i16() { return static_cast<std::int16_t>(u16()); }

  [[noreturn]] void truncated() const { harmex::detail::fail(ErrorCategory::Format, context_ + ": truncated file"); }
  const std::string& context() const noexcept { return context_; }

 private:
  void need(std::size_t n) const {
    if (remaining() < n) truncated();
  }
  std::uint64_t uint_le(int n) {
    need(static_cast<std::size_t>(n));
    std::uint64_t v = 0;
    for (int i = 0; i < n; ++i) v |= static_cast<std::uint64_t>(buf_[pos_ + static_cast<std::size_t>(i)]) << (8 * i);
    pos_ += static_cast<std::size_t>(n);
    return v;
  }

  std::vector<unsigned char> buf_;
  std::size_t pos_ = 0;
  std::string context_;
};

inline std::vector<unsigned char> read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) harmex::detail::fail(ErrorCategory::Io, path.string() + ": cannot open for reading");
  std::vector<unsigned char> data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (in.bad()) harmex::detail::fail(ErrorCategory::Io, path.string() + ": read failed");
  return data;
}

inline void write_file(const std::filesystem::path& path, const std::vector<unsigned char>& data) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) harmex::detail::fail(ErrorCategory::Io, path.string() + ": cannot open for writing");
  out.write(reinterpret_cast<const char*>(data.data()), static_cast<std::streamsize>(data.size()));
  if (!out) harmex::detail::fail(ErrorCategory::Io, path.string() + ": write failed");
}

}  // namespace harmex::io

#endif  // HARMEX_IO_BINARY_HPP
