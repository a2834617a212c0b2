#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace mflag {

/// Failure categories raised by the library. The names are part of the CLI
/// contract and are printed verbatim in reports.
enum class ErrorCode {
  DimensionMismatch,
  DuplicateBracket,
  JacobiViolation,
  NotSymmetric,
  NotPositiveDefinite,
  NotASubalgebra,
  DependentGenerators,
  InconsistentExtension,
  NonTrivialIsotropy,
  ReferenceMetricNotBiInvariant,
  MetricNotBiInvariant,
  VectorNotInM,
  NotNaturallyReductive,
  ZeroVector,
  Inadmissible,
  ConeViolation,
  FlagDegenerate,
  FlagNotOrthonormal,
  DriftNotParallel,
  SymmetryViolation,
  ParseError,
};

std::string_view error_name(ErrorCode code);

class GeometryError : public std::runtime_error {
 public:
  GeometryError(ErrorCode code, const std::string& message,
                std::vector<int> indices = {});

  ErrorCode code() const noexcept { return code_; }
  std::string_view name() const noexcept { return error_name(code_); }

  // 0-based index tuple of the worst offender, when the check is a sweep
  // over basis elements (e.g. the Jacobi triple).
  const std::vector<int>& indices() const noexcept { return indices_; }

 private:
  ErrorCode code_;
  std::vector<int> indices_;
};

/// Numerical cutoffs shared by every module.
struct Tolerances {
  double structural = 1e-9;      // exact algebraic identities on float input
  double agree = 1e-6;           // cross-route agreement
  double fd_step = 1e-4;         // relative step for the g_Y oracle
  double nullspace_rel = 1e-8;   // singular value cutoff, relative to sigma_max
};

}  // namespace mflag
