#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace qdeco {

enum class ErrorKind {
  CapacityExceeded,
  DimensionMismatch,
  NonFinite,
  NotHermitian,
  NotNormalized,
  NotPositive,
  TraceNotOne,
  WeightsInvalid,
  ParamOutOfRange,
  NotTracePreserving,
  NotTraceNonIncreasing,
  NotUnitary,
  StepTooLarge,
  TraceDrift,
  TruncationLeak,
  NotEntangledAtStart,
  ZeroProbability,
};

constexpr std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::CapacityExceeded: return "CapacityExceeded";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::NonFinite: return "NonFinite";
    case ErrorKind::NotHermitian: return "NotHermitian";
    case ErrorKind::NotNormalized: return "NotNormalized";
    case ErrorKind::NotPositive: return "NotPositive";
    case ErrorKind::TraceNotOne: return "TraceNotOne";
    case ErrorKind::WeightsInvalid: return "WeightsInvalid";
    case ErrorKind::ParamOutOfRange: return "ParamOutOfRange";
    case ErrorKind::NotTracePreserving: return "NotTracePreserving";
    case ErrorKind::NotTraceNonIncreasing: return "NotTraceNonIncreasing";
    case ErrorKind::NotUnitary: return "NotUnitary";
    case ErrorKind::StepTooLarge: return "StepTooLarge";
    case ErrorKind::TraceDrift: return "TraceDrift";
    case ErrorKind::TruncationLeak: return "TruncationLeak";
    case ErrorKind::NotEntangledAtStart: return "NotEntangledAtStart";
    case ErrorKind::ZeroProbability: return "ZeroProbability";
  }
  return "Unknown";
}

/// Library failure. Numeric checks carry the measured quantity that tripped
/// them (e.g. the trace for TraceNotOne, the minimum eigenvalue for
/// NotPositive).
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what,
        std::optional<double> magnitude = std::nullopt)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what),
        kind_(kind),
        magnitude_(magnitude) {}

  ErrorKind kind() const noexcept { return kind_; }
  std::optional<double> magnitude() const noexcept { return magnitude_; }

 private:
  ErrorKind kind_;
  std::optional<double> magnitude_;
};

}  // namespace qdeco
