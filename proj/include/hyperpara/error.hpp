#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace hyperpara {

// Stable codes; the CLI maps them to exit statuses and JSON error records.
enum class ErrorCode {
  DivisionByZero,
  DimensionMismatch,
  NonSymmetric,
  DependentBasis,
  NotClosedUnderBracket,
  NonRealTrace,
  JacobiFailure,
  InvalidIndex,
  IncompatibleMetric,
  NotSymmetric,
  Degenerate,
  WrongSignature,
  WrongType,
  WrongDegree,
  UnsupportedDegree,
  NotType11,
  NotDClosed,
  NoPolynomialSolution,
  NoSolution,
  NonUnique,
  UnsupportedParameter,
  UnknownKey,
  NotRepresentable,
  Schema,
};

std::string_view error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace hyperpara
