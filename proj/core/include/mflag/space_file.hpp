#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mflag/catalog.hpp"
#include "mflag/matsumoto.hpp"

namespace mflag {

/// In-memory form of the JSON space description.
///
///   {
///     "name": "e2",
///     "dim": 3,
///     "basis_names": ["x", "y", "z"],               // optional
///     "brackets": [{"i": 2, "j": 3, "coeffs": [1, 0, 0]}, ...],
///     "g0": [[...], ...],                            // optional, defaults to g
///     "g":  [[...], ...],
///     "h_basis": [[...], ...],                       // optional
///     "X": [...],                                    // optional, defaults to 0
///     "tolerances": {"structural": 1e-9, "agree": 1e-6, "fd_step": 1e-4}
///   }
///
/// Bracket indices are 1-based in the file and 0-based here. Matrices are
/// row-major arrays of rows.
struct SpaceFile {
  std::string name;
  int dim = 0;
  std::vector<std::string> basis_names;
  std::vector<BracketEntry> brackets;
  std::optional<Mat> g0;
  Mat g;
  std::vector<Vec> h_basis;
  std::optional<Vec> X;
  std::optional<double> tol_structural;
  std::optional<double> tol_agree;
  std::optional<double> tol_fd_step;
};

/// Throws GeometryError(ParseError) naming the offending field, or the
/// line/column for malformed JSON.
SpaceFile parse_space_file(const std::string& text);
SpaceFile read_space_file(const std::string& path);

/// Pretty-printed JSON, stable across runs.
std::string emit_space_file(const SpaceFile& file);

SpaceFile space_file_from(const MatsumotoSpace& space);

/// File values override `base`.
Tolerances apply_overrides(Tolerances base, const SpaceFile& file);

/// Runs every structural validation; throws the first failure
/// (JacobiViolation, NotPositiveDefinite, NotASubalgebra,
/// InconsistentExtension, VectorNotInM, ...).
MatsumotoSpace build_space(const SpaceFile& file, const Tolerances& tol = {});

}  // namespace mflag
