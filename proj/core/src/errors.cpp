#include "mflag/errors.hpp"

#include <utility>

namespace mflag {

std::string_view error_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::DuplicateBracket: return "DuplicateBracket";
    case ErrorCode::JacobiViolation: return "JacobiViolation";
    case ErrorCode::NotSymmetric: return "NotSymmetric";
    case ErrorCode::NotPositiveDefinite: return "NotPositiveDefinite";
    case ErrorCode::NotASubalgebra: return "NotASubalgebra";
    case ErrorCode::DependentGenerators: return "DependentGenerators";
    case ErrorCode::InconsistentExtension: return "InconsistentExtension";
    case ErrorCode::NonTrivialIsotropy: return "NonTrivialIsotropy";
    case ErrorCode::ReferenceMetricNotBiInvariant:
      return "ReferenceMetricNotBiInvariant";
    case ErrorCode::MetricNotBiInvariant: return "MetricNotBiInvariant";
    case ErrorCode::VectorNotInM: return "VectorNotInM";
    case ErrorCode::NotNaturallyReductive: return "NotNaturallyReductive";
    case ErrorCode::ZeroVector: return "ZeroVector";
    case ErrorCode::Inadmissible: return "Inadmissible";
    case ErrorCode::ConeViolation: return "ConeViolation";
    case ErrorCode::FlagDegenerate: return "FlagDegenerate";
    case ErrorCode::FlagNotOrthonormal: return "FlagNotOrthonormal";
    case ErrorCode::DriftNotParallel: return "DriftNotParallel";
    case ErrorCode::SymmetryViolation: return "SymmetryViolation";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

GeometryError::GeometryError(ErrorCode code, const std::string& message,
                             std::vector<int> indices)
    : std::runtime_error(std::string(error_name(code)) + ": " + message),
      code_(code),
      indices_(std::move(indices)) {}

}  // namespace mflag
