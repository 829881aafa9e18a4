#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace fqs {

enum class ErrorCode {
  CharacteristicTwo,
  NotPrime,
  SizeExceeded,
  DivisionByZero,
  NotASquare,
  DimensionMismatch,
  BadArity,
  IdenticalPoints,
  BudgetExceeded,
  BadResidue,
  OddDimension,
  BadDimension,
  DependentInput,
  TooFewPoints,
  SphereTooSmall,
  ParseError,
  InternalError,
};

constexpr std::string_view error_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::CharacteristicTwo: return "CharacteristicTwo";
    case ErrorCode::NotPrime: return "NotPrime";
    case ErrorCode::SizeExceeded: return "SizeExceeded";
    case ErrorCode::DivisionByZero: return "DivisionByZero";
    case ErrorCode::NotASquare: return "NotASquare";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::BadArity: return "BadArity";
    case ErrorCode::IdenticalPoints: return "IdenticalPoints";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
    case ErrorCode::BadResidue: return "BadResidue";
    case ErrorCode::OddDimension: return "OddDimension";
    case ErrorCode::BadDimension: return "BadDimension";
    case ErrorCode::DependentInput: return "DependentInput";
    case ErrorCode::TooFewPoints: return "TooFewPoints";
    case ErrorCode::SphereTooSmall: return "SphereTooSmall";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::InternalError: return "InternalError";
  }
  return "Unknown";
}

// All domain failures are reported through this type; code() is the
// machine-readable part, what() carries the human-readable detail.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail)
      : std::runtime_error(std::string(error_name(code)) + ": " + detail), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace fqs
