#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "mflag/connection.hpp"
#include "mflag/curvature_pairings.hpp"
#include "mflag/lie_algebra.hpp"

namespace mflag {

/// Invariant Matsumoto metric F = a^2 / (a - <X, y>), a = sqrt(<y, y>), on
/// G/H (or G when h = 0). The drift X is the value of the invariant vector
/// field at the origin and must lie in m.
struct MatsumotoSpace {
  std::string name;
  LieAlgebra algebra;
  MetricPack metrics;
  ReductiveStructure split;
  Vec drift;
  double drift_norm = 0.0;
  bool admissible = true;

  int dim() const { return algebra.dim(); }
  const InnerProduct& g() const { return metrics.g; }
};

/// Throws DimensionMismatch or VectorNotInM. Inadmissible drifts are accepted
/// and flagged; evaluation routines refuse them.
MatsumotoSpace make_matsumoto_space(std::string name, LieAlgebra algebra, MetricPack metrics,
                                    ReductiveStructure split, Vec drift,
                                    double tol = Tolerances{}.structural);

struct Admissibility {
  bool admissible = true;
  double norm = 0.0;
  /// s X is admissible iff |s| < scale_bound.
  double scale_bound = 0.0;
};

/// sqrt(<X,X>) < 1/2, strictly.
Admissibility admissible(const Vec& X, const InnerProduct& g);

/// Bound on |u| for drifts u * generator: 1 / (2 |generator|).
double coefficient_bound(const Vec& generator, const InnerProduct& g);

double F(const Vec& y, const MatsumotoSpace& space);

/// Closed form of g_Y(U, V) = 1/2 d^2/ds dt F^2(Y + sU + tV) at s = t = 0.
/// Y need not be unit.
double g_Y_closed(const Vec& Y, const Vec& U, const Vec& V, const MatsumotoSpace& space);

/// Central four-point mixed difference of F^2. The step is `step * |Y|`
/// applied to U and V rescaled to unit length. Throws ConeViolation if a
/// stencil point leaves {a - <X,y> > 0}.
double g_Y_fd(const Vec& Y, const Vec& U, const Vec& V, const MatsumotoSpace& space,
              double step = Tolerances{}.fd_step);

/// Matrix of g_Y in the coordinate basis.
Mat fundamental_tensor(const Vec& Y, const MatsumotoSpace& space);

/// Flag (P, Y): flagpole Y and a transverse edge U spanning the plane P.
struct Flag {
  Vec Y;
  Vec U;
  bool orthonormalized = false;
};

/// Checks independence only (FlagDegenerate).
Flag make_flag(const Vec& Y, const Vec& U, const InnerProduct& g,
               double tol = Tolerances{}.structural);

/// Gram-Schmidt in g, Y first; the flagpole direction is kept.
Flag orthonormalize_flag(const Vec& Y, const Vec& U, const InnerProduct& g,
                         double tol = Tolerances{}.structural);

/// g_Y(R(U,Y)Y, U) for a g-orthonormal (Y, U) with tY = <Y,X>, tU = <U,X>.
/// `yyy` is <R(U,Y)Y, Y>, which vanishes for a metric connection; the terms
/// it multiplies are evaluated rather than dropped.
double flag_numerator_closed(double A, double B, double tY, double tU, double yyy = 0.0);

/// g_Y(Y,Y) g_Y(U,U) - g_Y(U,Y)^2 for a g-orthonormal (Y, U).
double flag_denominator_closed(double tY, double tU);

/// K = (1-t)^2 { B (1-t)(1-2t) + 3 A u } / [ (1-t)(1-2t) + 2 u^2 ] with
/// t = <Y,X>, u = <U,X>. The flag must come from orthonormalize_flag, since
/// A and B were computed for that exact pair.
double flag_curvature_closed(const Flag& flag, const MatsumotoSpace& space, double A,
                             double B, double tol = Tolerances{}.structural);

/// K = g_Y(R(U,Y)Y, U) / [g_Y(Y,Y) g_Y(U,U) - g_Y(Y,U)^2] with g_Y in closed
/// form. Only valid when the drift is parallel (then the Chern connection of F
/// is the Levi-Civita connection of g); `force` evaluates it anyway.
double flag_curvature_direct(const Flag& flag, const MatsumotoSpace& space,
                             const ConnectionTable& conn, const CurvatureTensor& R,
                             bool force = false, double tol = Tolerances{}.structural);

/// Bi-invariant g with central (hence parallel) drift:
/// K = -(1-t)^2 { <[[U,Y],Y],U> (1-t)(1-2t) + 3 <[[U,Y],Y],X> u } / (4(1-t)(1-2t) + 8u^2).
/// Raw flags are orthonormalized first.
double flag_curvature_bi_invariant(const Flag& flag, const MatsumotoSpace& space,
                                   double tol = Tolerances{}.structural);

// ---------------------------------------------------------------------------
// Route comparison

/// Quantities that depend only on the space, shared across flags.
struct SpaceAnalysis {
  std::optional<ConnectionTable> connection;  // only when h = 0
  std::optional<CurvatureTensor> curvature;
  /// Unset when parallelism cannot be decided (h != 0 and X != 0).
  std::optional<bool> drift_parallel;
  double drift_parallel_residual = 0.0;
  bool g_bi_invariant = false;
  bool drift_central = false;
  NaturalReductivityReport natural_reductivity;
};

SpaceAnalysis analyze_space(const MatsumotoSpace& space, const Tolerances& tol = {});

enum Route : unsigned { kRouteDirect = 1u, kRouteClosed = 2u, kRouteBiInvariant = 4u,
                        kRouteAll = 7u };

enum class RouteStatus { Ok, Formal, NotApplicable, Refused };

struct RouteOutcome {
  RouteStatus status = RouteStatus::NotApplicable;
  std::optional<ErrorCode> error;
  std::string note;
};

struct RouteOptions {
  unsigned routes = kRouteAll;
  /// Routes named explicitly are refused (not skipped) when inapplicable.
  bool explicit_routes = false;
  bool force = false;
  Tolerances tol;
};

struct KReport {
  Flag flag;  // orthonormalized
  double tY = 0.0;
  double tU = 0.0;
  std::optional<double> A;
  std::optional<double> B;
  std::optional<double> yyy;  // <R(U,Y)Y,Y>, expected 0
  std::string ab_source;      // "puttmann" or "koszul"
  std::optional<double> k_direct;
  std::optional<double> k_closed;
  std::optional<double> k_closed_expanded;  // numerator / denominator form
  std::optional<double> k_bi_invariant;
  RouteOutcome direct;
  RouteOutcome closed;
  RouteOutcome bi_invariant;
  double max_pairwise_delta = 0.0;

  bool any_refused() const;
};

/// Flag curvature of (span{Y,U}, Y) along every requested route. Throws only
/// for malformed input (dimension, degenerate flag, inadmissible drift);
/// route-level precondition failures are recorded in the outcomes.
KReport flag_report(const MatsumotoSpace& space, const SpaceAnalysis& analysis, const Vec& Y,
                    const Vec& U, const RouteOptions& options = {});

struct RouteStats {
  int count = 0;
  double min = 0.0;
  double max = 0.0;
  double mean = 0.0;
};

struct SweepResult {
  int samples = 0;
  std::uint64_t seed = 0;
  RouteStats direct;
  RouteStats closed;
  RouteStats bi_invariant;
  double max_pairwise_delta = 0.0;
  RouteOutcome direct_outcome;
  RouteOutcome closed_outcome;
  RouteOutcome bi_invariant_outcome;
};

/// Seed for sample `index`; independent of evaluation order.
std::uint64_t sample_seed(std::uint64_t seed, std::uint64_t index);

/// Random g-orthonormal flag inside m drawn from the sample seed.
Flag random_flag(const MatsumotoSpace& space, std::uint64_t sample_seed);

SweepResult sweep_flags(const MatsumotoSpace& space, const SpaceAnalysis& analysis,
                        int samples, std::uint64_t seed, const RouteOptions& options = {});

}  // namespace mflag
