#include "socpart/errors.hpp"

namespace socpart {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kStructureMismatch: return "STRUCTURE_MISMATCH";
    case ErrorCode::kInvalidInstance: return "INVALID_INSTANCE";
    case ErrorCode::kInvalidArgument: return "INVALID_ARGUMENT";
    case ErrorCode::kInfeasibleOrUnbounded: return "INFEASIBLE_OR_UNBOUNDED";
    case ErrorCode::kMaxIterations: return "MAX_ITERATIONS";
    case ErrorCode::kNumericalBreakdown: return "NUMERICAL_BREAKDOWN";
    case ErrorCode::kInconsistentBlock: return "INCONSISTENT_BLOCK";
    case ErrorCode::kNotStrictlyComplementary: return "NOT_STRICTLY_COMPLEMENTARY";
    case ErrorCode::kSqpDiverged: return "SQP_DIVERGED";
    case ErrorCode::kPartitionMismatch: return "PARTITION_MISMATCH";
    case ErrorCode::kLayoutMismatch: return "LAYOUT_MISMATCH";
    case ErrorCode::kSingularJacobian: return "SINGULAR_JACOBIAN";
    case ErrorCode::kDiverged: return "DIVERGED";
    case ErrorCode::kPartitionNotConstant: return "PARTITION_NOT_CONSTANT";
    case ErrorCode::kParseError: return "PARSE_ERROR";
    case ErrorCode::kDimensionMismatch: return "DIMENSION_MISMATCH";
  }
  return "UNKNOWN";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code), detail_(message) {}

ParseError::ParseError(int line, int column, const std::string& message)
    : Error(ErrorCode::kParseError,
            "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + message),
      line_(line),
      column_(column) {}

}  // namespace socpart
