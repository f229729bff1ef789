#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace aoicache {

enum class ErrorKind {
  InvalidTopology,
  NonPositiveLimit,
  NegativeParameter,
  InvalidParameter,
  BadPopularityMode,
  IndexOutOfRange,
  LengthMismatch,
  ConstraintViolation,
  BadDiscount,
  BadEpsilon,
  MissingPolicy,
  UnknownKind,
  NegativeArrivals,
  OutOfCoverage,
  BadPeriod,
  EmptyTraces,
  IoFailure,
  ParseError,
  UnknownKey,
};

constexpr std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidTopology: return "InvalidTopology";
    case ErrorKind::NonPositiveLimit: return "NonPositiveLimit";
    case ErrorKind::NegativeParameter: return "NegativeParameter";
    case ErrorKind::InvalidParameter: return "InvalidParameter";
    case ErrorKind::BadPopularityMode: return "BadPopularityMode";
    case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorKind::LengthMismatch: return "LengthMismatch";
    case ErrorKind::ConstraintViolation: return "ConstraintViolation";
    case ErrorKind::BadDiscount: return "BadDiscount";
    case ErrorKind::BadEpsilon: return "BadEpsilon";
    case ErrorKind::MissingPolicy: return "MissingPolicy";
    case ErrorKind::UnknownKind: return "UnknownKind";
    case ErrorKind::NegativeArrivals: return "NegativeArrivals";
    case ErrorKind::OutOfCoverage: return "OutOfCoverage";
    case ErrorKind::BadPeriod: return "BadPeriod";
    case ErrorKind::EmptyTraces: return "EmptyTraces";
    case ErrorKind::IoFailure: return "IoFailure";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::UnknownKey: return "UnknownKey";
  }
  return "Unknown";
}

// Every failure raised by the library carries a machine-checkable kind.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

// Config-level errors map to CLI exit code 2; IoFailure maps to 3.
constexpr bool is_config_error(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidTopology:
    case ErrorKind::NonPositiveLimit:
    case ErrorKind::NegativeParameter:
    case ErrorKind::InvalidParameter:
    case ErrorKind::BadPopularityMode:
    case ErrorKind::BadPeriod:
    case ErrorKind::UnknownKind:
    case ErrorKind::ParseError:
    case ErrorKind::UnknownKey:
      return true;
    default:
      return false;
  }
}

}  // namespace aoicache
