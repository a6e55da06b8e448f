#pragma once

#include <stdexcept>
#include <string>

namespace netprop {

enum class ErrorCode {
  NotSymmetric,
  SelfLoopPresent,
  Disconnected,
  IsolatedNode,
  NotRowStochastic,
  NegativeEntry,
  NotConverged,
  PeriodicOrReducible,
  DimensionMismatch,
  InvalidEntry,
  InvalidInitialDistribution,
  ParameterOrderViolated,
  NoPositiveColumn,
  WrongCase,
  AssumptionViolated,
  BudgetConditionViolated,
  ZeroQualityVector,
  GenerationFailed,
  ConfigInvalid,
  InvariantViolated,
};

inline const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotSymmetric: return "NotSymmetric";
    case ErrorCode::SelfLoopPresent: return "SelfLoopPresent";
    case ErrorCode::Disconnected: return "Disconnected";
    case ErrorCode::IsolatedNode: return "IsolatedNode";
    case ErrorCode::NotRowStochastic: return "NotRowStochastic";
    case ErrorCode::NegativeEntry: return "NegativeEntry";
    case ErrorCode::NotConverged: return "NotConverged";
    case ErrorCode::PeriodicOrReducible: return "PeriodicOrReducible";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::InvalidEntry: return "InvalidEntry";
    case ErrorCode::InvalidInitialDistribution: return "InvalidInitialDistribution";
    case ErrorCode::ParameterOrderViolated: return "ParameterOrderViolated";
    case ErrorCode::NoPositiveColumn: return "NoPositiveColumn";
    case ErrorCode::WrongCase: return "WrongCase";
    case ErrorCode::AssumptionViolated: return "AssumptionViolated";
    case ErrorCode::BudgetConditionViolated: return "BudgetConditionViolated";
    case ErrorCode::ZeroQualityVector: return "ZeroQualityVector";
    case ErrorCode::GenerationFailed: return "GenerationFailed";
    case ErrorCode::ConfigInvalid: return "ConfigInvalid";
    case ErrorCode::InvariantViolated: return "InvariantViolated";
  }
  return "UnknownError";
}

/// Library-wide exception; carries a machine-checkable code naming the
/// violated assumption or failure mode.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

}  // namespace netprop
