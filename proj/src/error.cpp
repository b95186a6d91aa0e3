#include "hyperpara/error.hpp"

namespace hyperpara {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::DivisionByZero: return "DivisionByZero";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NonSymmetric: return "NonSymmetric";
    case ErrorCode::DependentBasis: return "DependentBasis";
    case ErrorCode::NotClosedUnderBracket: return "NotClosedUnderBracket";
    case ErrorCode::NonRealTrace: return "NonRealTrace";
    case ErrorCode::JacobiFailure: return "JacobiFailure";
    case ErrorCode::InvalidIndex: return "InvalidIndex";
    case ErrorCode::IncompatibleMetric: return "IncompatibleMetric";
    case ErrorCode::NotSymmetric: return "NotSymmetric";
    case ErrorCode::Degenerate: return "Degenerate";
    case ErrorCode::WrongSignature: return "WrongSignature";
    case ErrorCode::WrongType: return "WrongType";
    case ErrorCode::WrongDegree: return "WrongDegree";
    case ErrorCode::UnsupportedDegree: return "UnsupportedDegree";
    case ErrorCode::NotType11: return "NotType11";
    case ErrorCode::NotDClosed: return "NotDClosed";
    case ErrorCode::NoPolynomialSolution: return "NoPolynomialSolution";
    case ErrorCode::NoSolution: return "NoSolution";
    case ErrorCode::NonUnique: return "NonUnique";
    case ErrorCode::UnsupportedParameter: return "UnsupportedParameter";
    case ErrorCode::UnknownKey: return "UnknownKey";
    case ErrorCode::NotRepresentable: return "NotRepresentable";
    case ErrorCode::Schema: return "Schema";
  }
  return "Unknown";
}

}  // namespace hyperpara
