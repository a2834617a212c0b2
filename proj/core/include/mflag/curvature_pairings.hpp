#pragma once

#include <array>

#include "mflag/lie_algebra.hpp"

namespace mflag {

/// How the -3/4 <[Y,U],[Y,X]_m> term of the A/B closed forms treats its first
/// argument. AsPrinted leaves [Y,U] unprojected; ProjectBoth projects it onto m
/// as well. The two agree whenever h = 0.
enum class MixedPairing { AsPrinted, ProjectBoth };

/// <R(U,Y)Y, X> for invariant metrics on G/H with bi-invariant reference g0,
/// written entirely in brackets, phi and phi^-1:
///
///   A = -1/4 ( <[phi U,Y] + [U,phi Y], [Y,X]>_0 + <[U,Y], [phi Y,X] + [Y,phi X]>_0 )
///       -3/4 <[Y,U], [Y,X]_m>
///       -1/2 <[U,phi X] + [X,phi U], phi^-1 [Y,phi Y]>_0
///       +1/4 <[U,phi Y] + [Y,phi U], phi^-1 ([Y,phi X] + [X,phi Y])>_0
///
/// The second line is paired with the working metric <.,.>, every other line
/// with <.,.>_0.
///
/// Throws ReferenceMetricNotBiInvariant or VectorNotInM.
double A_term(const Vec& U, const Vec& Y, const Vec& X, const MetricPack& pack,
              const ReductiveStructure& red, const LieAlgebra& alg,
              MixedPairing mixed = MixedPairing::AsPrinted,
              double tol = Tolerances{}.structural);

/// <R(U,Y)Y, U>; same conventions as A_term.
///
///   B = -1/2 <[phi U,Y] + [U,phi Y], [Y,U]>_0
///       -3/4 <[Y,U], [Y,U]_m>
///       -    <[U,phi U], phi^-1 [Y,phi Y]>_0
///       +1/4 <[U,phi Y] + [Y,phi U], phi^-1 ([Y,phi U] + [U,phi Y])>_0
double B_term(const Vec& U, const Vec& Y, const MetricPack& pack,
              const ReductiveStructure& red, const LieAlgebra& alg,
              MixedPairing mixed = MixedPairing::AsPrinted,
              double tol = Tolerances{}.structural);

/// Residual of B(X,[Z,Y]_m) + B([Z,X]_m, Y) over m-basis triples (Z, X, Y),
/// with B the restriction of g to m.
struct NaturalReductivityReport {
  bool naturally_reductive = true;
  double residual = 0.0;
  std::array<int, 3> worst{0, 0, 0};
};

NaturalReductivityReport naturally_reductive_check(const ReductiveStructure& red,
                                                   const InnerProduct& g,
                                                   const LieAlgebra& alg,
                                                   double tol = Tolerances{}.structural);

/// R(U,Y)Y = 1/4 [Y,[U,Y]_m]_m + [Y,[U,Y]_h]; throws NotNaturallyReductive.
Vec nat_red_curvature(const Vec& U, const Vec& Y, const ReductiveStructure& red,
                      const InnerProduct& g, const LieAlgebra& alg,
                      double tol = Tolerances{}.structural);

/// R(U,Y)Y = -1/4 [[U,Y],Y]; the caller is responsible for bi-invariance.
Vec bi_invariant_curvature(const Vec& U, const Vec& Y, const LieAlgebra& alg);

}  // namespace mflag
