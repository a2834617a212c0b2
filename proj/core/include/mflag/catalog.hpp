#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mflag/matsumoto.hpp"

namespace mflag {

/// Reference results that the generic pipeline must reproduce. Unset fields
/// are not asserted (e.g. no curvature tensor when h != 0).
struct CatalogExpected {
  std::optional<bool> r_is_zero;
  std::optional<std::vector<Vec>> parallel_span;
  /// Bound on |u| for drifts u * drift_generator.
  std::optional<double> admissible_bound;
  /// Constant flag curvature, when the space has one.
  std::optional<double> expected_k;
};

struct CatalogEntry {
  std::string name;
  std::string description;
  std::vector<std::pair<std::string, double>> params;
  MatsumotoSpace space;
  std::optional<Vec> drift_generator;
  CatalogExpected expected;
};

/// E(2): [x,y] = 0, [y,z] = x, [z,x] = y with <.,.> = lambda^2 I, X = u z.
CatalogEntry build_e2(double lambda, double u);

/// [x,y] = a(y+z), [y,z] = 2a x, [z,x] = a(y+z) with <.,.> = lambda^2 I and
/// X = u (y - z).
CatalogEntry build_alpha_family(double alpha, double lambda, double u);

/// Abelian algebra with arbitrary metric and drift.
CatalogEntry build_abelian(int dim, const Mat& g, const Vec& X);

/// su(2) ([e1,e2] = e3 cyclic) with g0 = I and g = diag(phi), X = 0.
CatalogEntry build_su2(double phi1, double phi2, double phi3);

/// su(2) + R with the product metric g = g0 = I and central drift X = u w.
CatalogEntry build_su2_x_r(double u);

/// SU(2)/U(1): h = span{e3}, g0 = I, g = mu I on m extended by g0, X = 0.
CatalogEntry build_su2_u1(double mu);

/// Names accepted by catalog_entry().
const std::vector<std::string>& catalog_names();

/// Entry with default parameters; throws std::invalid_argument for unknown
/// names.
CatalogEntry catalog_entry(const std::string& name);

}  // namespace mflag
