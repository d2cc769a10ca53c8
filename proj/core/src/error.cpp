#include "nsgap/error.hpp"

namespace nsgap {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::NotStochastic: return "NotStochastic";
    case ErrorCode::NotStationary: return "NotStationary";
    case ErrorCode::NoPositiveStationary: return "NoPositiveStationary";
    case ErrorCode::NotReversibleChain: return "NotReversibleChain";
    case ErrorCode::InvalidPower: return "InvalidPower";
    case ErrorCode::UnsupportedSpace: return "UnsupportedSpace";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::SizeMismatch: return "SizeMismatch";
    case ErrorCode::BadExponentRange: return "BadExponentRange";
    case ErrorCode::NotAMetric: return "NotAMetric";
    case ErrorCode::ConstantConfiguration: return "ConstantConfiguration";
    case ErrorCode::InstanceTooLarge: return "InstanceTooLarge";
    case ErrorCode::MismatchedStationary: return "MismatchedStationary";
    case ErrorCode::NormSandwichViolated: return "NormSandwichViolated";
    case ErrorCode::DegenerateGap: return "DegenerateGap";
    case ErrorCode::GapUnavailable: return "GapUnavailable";
    case ErrorCode::NotNormalized: return "NotNormalized";
    case ErrorCode::DegenerateSpan: return "DegenerateSpan";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::ZeroWeight: return "ZeroWeight";
    case ErrorCode::SolverStalled: return "SolverStalled";
    case ErrorCode::EmptyDecomposition: return "EmptyDecomposition";
    case ErrorCode::ParityViolation: return "ParityViolation";
    case ErrorCode::ResampleBudgetExceeded: return "ResampleBudgetExceeded";
    case ErrorCode::Disconnected: return "Disconnected";
    case ErrorCode::EmptyFamily: return "EmptyFamily";
  }
  return "Unknown";
}

bool is_numerical_failure(ErrorCode code) {
  return code == ErrorCode::NoConvergence || code == ErrorCode::SolverStalled;
}

}  // namespace nsgap
