#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace dsonc {

// Machine-readable failure codes. The CLI prints these verbatim.
enum class ErrorCode {
  InvalidArgument,
  DimensionMismatch,
  DuplicatePoint,
  ParseError,
  NotASimplex,
  NotInRelativeInterior,
  EnumerationCapExceeded,
  VertexSignViolation,
  SingularMatrix,
  SupportMismatch,
  NonNegativeInnerCoefficient,
  NumericalBreakdown,
  InfeasibleLambda,
  DegenerateCircuit,
  BoxTooLarge,
  PreconditionViolation,
  NotACircuit,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

// Raised when a hull vertex of the support carries a negative coefficient.
class VertexSignViolation : public Error {
 public:
  VertexSignViolation(std::vector<std::size_t> offending, const std::string& message)
      : Error(ErrorCode::VertexSignViolation, message), offending_(std::move(offending)) {}

  const std::vector<std::size_t>& offending() const noexcept { return offending_; }

 private:
  std::vector<std::size_t> offending_;
};

// Document parse failure with a 1-based source position (0 when unknown).
class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t line = 0, std::size_t column = 0)
      : Error(ErrorCode::ParseError, message), line_(line), column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

}  // namespace dsonc
