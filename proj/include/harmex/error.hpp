#ifndef HARMEX_ERROR_HPP
#define HARMEX_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace harmex {

/// Machine-readable error class. The CLI prints category_name() on stderr.
enum class ErrorCategory {
  Config,
  LengthMismatch,
  Domain,
  AliasingDomain,
  Index,
  Format,
  Io,
  DegenerateReference,
  UndefinedMetric,
};

constexpr std::string_view category_name(ErrorCategory c) noexcept {
  switch (c) {
    case ErrorCategory::Config: return "config";
    case ErrorCategory::LengthMismatch: return "length-mismatch";
    case ErrorCategory::Domain: return "domain";
    case ErrorCategory::AliasingDomain: return "aliasing-domain";
    case ErrorCategory::Index: return "index";
    case ErrorCategory::Format: return "format";
    case ErrorCategory::Io: return "io";
    case ErrorCategory::DegenerateReference: return "degenerate-reference";
    case ErrorCategory::UndefinedMetric: return "undefined-metric";
  }
  return "unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCategory category, const std::string& what)
      : std::runtime_error(what), category_(category) {}

  ErrorCategory category() const noexcept { return category_; }

 private:
  ErrorCategory category_;
};

namespace detail {

[[noreturn]] inline void fail(ErrorCategory c, const std::string& what) {
  throw Error(c, what);
}

inline void require(bool ok, ErrorCategory c, const char* what) {
  if (!ok) throw Error(c, what);
}

}  // namespace detail
}  // namespace harmex

#endif  // HARMEX_ERROR_HPP
