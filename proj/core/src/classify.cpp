#include "mflag/classify.hpp"

#include <algorithm>

namespace mflag {

namespace {

void finish(Classification& c) {
  c.labels.clear();
  if (!c.admissible) {
    c.berwald.reset();
    c.geodesically_complete.reset();
    c.locally_minkowskian.reset();
    return;
  }
  if (c.berwald.value_or(false)) {
    c.labels.push_back({"berwald", "drift is parallel, so the Chern connection of F is the "
                                   "Levi-Civita connection of g"});
  }
  c.geodesically_complete = c.berwald;
  if (c.geodesically_complete.value_or(false)) {
    c.labels.push_back({"geodesically_complete",
                        "Berwald type over an invariant (homogeneous) Riemannian metric"});
  }
  if (c.flat.value_or(false)) {
    c.labels.push_back({"flat", "curvature tensor of g vanishes"});
  }
  if (c.flat && c.berwald) {
    c.locally_minkowskian = *c.flat && *c.berwald;
  } else if ((c.flat && !*c.flat) || (c.berwald && !*c.berwald)) {
    c.locally_minkowskian = false;
  }
  if (c.locally_minkowskian.value_or(false)) {
    c.labels.push_back({"locally_minkowskian",
                        "flat Berwald metric: F and g share R = 0, so every flag curvature is 0"});
  }
}

}  // namespace

bool Classification::has(const std::string& name) const {
  return std::any_of(labels.begin(), labels.end(),
                     [&](const ClassificationLabel& l) { return l.name == name; });
}

std::vector<std::string> Classification::label_names() const {
  std::vector<std::string> out;
  for (const auto& l : labels) out.push_back(l.name);
  return out;
}

Classification classify_space(const MatsumotoSpace& space, const CurvatureTensor& R,
                              bool parallel_ok, double tol) {
  Classification c;
  c.admissible = space.admissible;
  c.berwald = parallel_ok;
  c.curvature_max_abs = R.max_abs();
  c.flat = *c.curvature_max_abs <= tol;
  finish(c);
  return c;
}

Classification classify_space(const MatsumotoSpace& space, std::optional<bool> parallel_ok) {
  Classification c;
  c.admissible = space.admissible;
  c.berwald = parallel_ok;
  finish(c);
  return c;
}

Classification classify_space(const MatsumotoSpace& space, const SpaceAnalysis& analysis,
                              double tol) {
  if (analysis.curvature && analysis.drift_parallel) {
    return classify_space(space, *analysis.curvature, *analysis.drift_parallel, tol);
  }
  return classify_space(space, analysis.drift_parallel);
}

}  // namespace mflag
