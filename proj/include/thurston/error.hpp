#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace thurston {

enum class ErrorCode {
  DependentInput,
  NotFullDimensional,
  NotSymmetric,
  DegenerateGeometry,
  ZeroNormal,
  DimensionMismatch,
  NotANorm,
  ResourceLimit,
  RankDeficient,
  InvalidGraph,
  NotRealizable,
  Unachievable,
  WitnessFailure,
  InvalidArgument,
  ParseError,
};

constexpr std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::DependentInput: return "DependentInput";
    case ErrorCode::NotFullDimensional: return "NotFullDimensional";
    case ErrorCode::NotSymmetric: return "NotSymmetric";
    case ErrorCode::DegenerateGeometry: return "DegenerateGeometry";
    case ErrorCode::ZeroNormal: return "ZeroNormal";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NotANorm: return "NotANorm";
    case ErrorCode::ResourceLimit: return "ResourceLimit";
    case ErrorCode::RankDeficient: return "RankDeficient";
    case ErrorCode::InvalidGraph: return "InvalidGraph";
    case ErrorCode::NotRealizable: return "NotRealizable";
    case ErrorCode::Unachievable: return "Unachievable";
    case ErrorCode::WitnessFailure: return "WitnessFailure";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

/// Every failure raised by the library carries one of the codes above so
/// callers (the CLI in particular) can map it to an exit status.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code), message_(what) {}

  ErrorCode code() const noexcept { return code_; }
  /// The message without the code prefix.
  const std::string& message() const noexcept { return message_; }

 private:
  ErrorCode code_;
  std::string message_;
};

}  // namespace thurston
