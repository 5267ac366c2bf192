#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace dipole {

enum class ErrorCode {
  InvalidArgument,
  NonPositiveFrequency,
  UnsupportedLevel,
  SeriesNotConverged,
  DegenerateConstraint,
  NoPositiveRoot,
  EmptyBracket,
  NotQuantized,
  GridTooCoarse,
};

/// Stable snake_case name, used as the status string in CLI output.
std::string_view to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace dipole
