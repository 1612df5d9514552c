#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace cablemass {

enum class ErrorCode {
  kNonConvergence,
  kNotPsd,
  kUnstableSystem,
  kSingularBlock,
  kInvalidParams,
  kGridTooCoarse,
  kDimensionMismatch,
  kStepSizeUnderflow,
  kNonFiniteState,
  kOutOfRange,
  kRankDeficient,
  kPlateauSplit,
  kSingularShift,
  kGridMismatch,
  kParseError,
  kValidationError,
};

std::string_view to_string(ErrorCode code);

/// Single exception type for the library; `code()` identifies the failure.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

inline std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kNonConvergence: return "NonConvergence";
    case ErrorCode::kNotPsd: return "NotPsd";
    case ErrorCode::kUnstableSystem: return "UnstableSystem";
    case ErrorCode::kSingularBlock: return "SingularBlock";
    case ErrorCode::kInvalidParams: return "InvalidParams";
    case ErrorCode::kGridTooCoarse: return "GridTooCoarse";
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kStepSizeUnderflow: return "StepSizeUnderflow";
    case ErrorCode::kNonFiniteState: return "NonFiniteState";
    case ErrorCode::kOutOfRange: return "OutOfRange";
    case ErrorCode::kRankDeficient: return "RankDeficient";
    case ErrorCode::kPlateauSplit: return "PlateauSplit";
    case ErrorCode::kSingularShift: return "SingularShift";
    case ErrorCode::kGridMismatch: return "GridMismatch";
    case ErrorCode::kParseError: return "ParseError";
    case ErrorCode::kValidationError: return "ValidationError";
  }
  return "Unknown";
}

}  // namespace cablemass
