#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace finslerlab {

enum class ErrorKind {
  ZeroSection,
  OrderOutOfRange,
  JetDepthExceeded,
  BadConfig,
  DegreeOutOfRange,
  DimensionMismatch,
  NotSemibasic,
  NotSemispray,
  NotVertical,
  NotConnection,
  NotTorsionFree,
  PositivityFailure,
  HomogeneityFailure,
  NondegeneracyFailure,
  DegenerateDegree,
  HypothesisFailure,
  UnknownId,
};

constexpr std::string_view to_string(ErrorKind k)
{
  switch (k) {
  case ErrorKind::ZeroSection: return "ZeroSection";
  case ErrorKind::OrderOutOfRange: return "OrderOutOfRange";
  case ErrorKind::JetDepthExceeded: return "JetDepthExceeded";
  case ErrorKind::BadConfig: return "BadConfig";
  case ErrorKind::DegreeOutOfRange: return "DegreeOutOfRange";
  case ErrorKind::DimensionMismatch: return "DimensionMismatch";
  case ErrorKind::NotSemibasic: return "NotSemibasic";
  case ErrorKind::NotSemispray: return "NotSemispray";
  case ErrorKind::NotVertical: return "NotVertical";
  case ErrorKind::NotConnection: return "NotConnection";
  case ErrorKind::NotTorsionFree: return "NotTorsionFree";
  case ErrorKind::PositivityFailure: return "PositivityFailure";
  case ErrorKind::HomogeneityFailure: return "HomogeneityFailure";
  case ErrorKind::NondegeneracyFailure: return "NondegeneracyFailure";
  case ErrorKind::DegenerateDegree: return "DegenerateDegree";
  case ErrorKind::HypothesisFailure: return "HypothesisFailure";
  case ErrorKind::UnknownId: return "UnknownId";
  }
  return "Unknown";
}

/// Every failure in the library is an Error tagged with its kind.
class Error : public std::runtime_error
{
public:
  Error(ErrorKind kind, const std::string & what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind)
  {}

  ErrorKind kind() const noexcept { return kind_; }

private:
  ErrorKind kind_;
};

}  // namespace finslerlab
