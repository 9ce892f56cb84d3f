#pragma once

#include <stdexcept>
#include <string>

namespace socpart {

enum class ErrorCode {
  kStructureMismatch,
  kInvalidInstance,
  kInvalidArgument,
  kInfeasibleOrUnbounded,
  kMaxIterations,
  kNumericalBreakdown,
  kInconsistentBlock,
  kNotStrictlyComplementary,
  kSqpDiverged,
  kPartitionMismatch,
  kLayoutMismatch,
  kSingularJacobian,
  kDiverged,
  kPartitionNotConstant,
  kParseError,
  kDimensionMismatch,
};

const char* to_string(ErrorCode code);

// Every failure raised by the library carries one of the codes above.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }
  // Message without the code prefix.
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorCode code_;
  std::string detail_;
};

// Parse failures additionally report where in the text they happened (1-based).
class ParseError : public Error {
 public:
  ParseError(int line, int column, const std::string& message);

  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }

 private:
  int line_;
  int column_;
};

}  // namespace socpart
