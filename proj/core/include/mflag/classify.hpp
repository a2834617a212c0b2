#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mflag/connection.hpp"
#include "mflag/matsumoto.hpp"

namespace mflag {

struct ClassificationLabel {
  std::string name;
  std::string reason;
};

/// Labels a Matsumoto space from already computed facts; nothing is proved
/// here. A property is unset when the inputs cannot decide it.
struct Classification {
  bool admissible = false;
  std::optional<bool> berwald;
  std::optional<bool> geodesically_complete;
  std::optional<bool> flat;
  std::optional<bool> locally_minkowskian;
  std::optional<double> curvature_max_abs;
  std::vector<ClassificationLabel> labels;

  bool has(const std::string& name) const;
  std::vector<std::string> label_names() const;
};

/// berwald: drift parallel for g.
/// geodesically_complete: Berwald over a homogeneous Riemannian base.
/// flat: R = 0 for g.
/// locally_minkowskian: flat and Berwald.
/// An inadmissible drift yields no labels: F is not a Finsler metric.
Classification classify_space(const MatsumotoSpace& space, const CurvatureTensor& R,
                              bool parallel_ok, double tol = Tolerances{}.structural);

/// Variant for spaces without a curvature tensor (h != 0); flatness is left
/// undecided.
Classification classify_space(const MatsumotoSpace& space, std::optional<bool> parallel_ok);

Classification classify_space(const MatsumotoSpace& space, const SpaceAnalysis& analysis,
                              double tol = Tolerances{}.structural);

}  // namespace mflag
