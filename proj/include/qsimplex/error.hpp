#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace qsimplex {

enum class ErrorCode {
  InvalidArgument,
  BasisSingular,
  ZeroVector,
  ZeroColumn,
  SpectrumOutOfRange,
  AllInfinite,
  ThresholdViolation,
  InfeasibleStart,
  ParseError,
};

inline std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::BasisSingular: return "BasisSingular";
    case ErrorCode::ZeroVector: return "ZeroVector";
    case ErrorCode::ZeroColumn: return "ZeroColumn";
    case ErrorCode::SpectrumOutOfRange: return "SpectrumOutOfRange";
    case ErrorCode::AllInfinite: return "AllInfinite";
    case ErrorCode::ThresholdViolation: return "ThresholdViolation";
    case ErrorCode::InfeasibleStart: return "InfeasibleStart";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

/// Exception carrying a machine-readable code alongside the message.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  [[nodiscard]] ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

inline void require(bool condition, ErrorCode code, const std::string& what) {
  if (!condition) throw Error(code, what);
}

}  // namespace qsimplex
