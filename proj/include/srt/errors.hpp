#pragma once

#include <stdexcept>
#include <string>

namespace srt {

enum class ErrorKind {
  invalid_argument,
  invalid_coefficient,
  malformed_table,
  no_finite_root,
  window_exhausted,
  fss_construction,
  unsupported_preset,
  r_not_one,
  covering_failure,
  io,
};

const char* to_string(ErrorKind kind);

// Single exception type for the toolkit; `kind()` distinguishes the failure.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] void fail(ErrorKind kind, const std::string& what);

}  // namespace srt
