#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace nsgap {

enum class ErrorCode {
  InvalidArgument,
  ParseError,
  NotStochastic,
  NotStationary,
  NoPositiveStationary,
  NotReversibleChain,
  InvalidPower,
  UnsupportedSpace,
  DimensionMismatch,
  LengthMismatch,
  SizeMismatch,
  BadExponentRange,
  NotAMetric,
  ConstantConfiguration,
  InstanceTooLarge,
  MismatchedStationary,
  NormSandwichViolated,
  DegenerateGap,
  GapUnavailable,
  NotNormalized,
  DegenerateSpan,
  NoConvergence,
  ZeroWeight,
  SolverStalled,
  EmptyDecomposition,
  ParityViolation,
  ResampleBudgetExceeded,
  Disconnected,
  EmptyFamily,
};

std::string_view to_string(ErrorCode code);

// True for failures of an iterative method, as opposed to rejected input.
bool is_numerical_failure(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

inline void require(bool condition, ErrorCode code, const std::string& message) {
  if (!condition) fail(code, message);
}

}  // namespace nsgap
