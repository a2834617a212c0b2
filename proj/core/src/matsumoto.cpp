#include "mflag/matsumoto.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <vector>

namespace mflag {

namespace {

void require_dim(const Vec& v, int dim, const char* what) {
  if (v.size() != dim) {
    throw GeometryError(ErrorCode::DimensionMismatch,
                        std::string(what) + " has length " + std::to_string(v.size()) +
                            ", expected " + std::to_string(dim));
  }
}

void require_admissible(const MatsumotoSpace& space) {
  if (!space.admissible) {
    throw GeometryError(ErrorCode::Inadmissible,
                        "|X| = " + std::to_string(space.drift_norm) + " is not below 1/2");
  }
}

void require_nonzero(const Vec& y, const InnerProduct& g) {
  if (!(g.norm_sq(y) > 0.0)) throw GeometryError(ErrorCode::ZeroVector, "flagpole is zero");
}

bool numerically_orthonormal(const Flag& flag, const InnerProduct& g, double tol) {
  return std::abs(g.norm_sq(flag.Y) - 1.0) <= tol && std::abs(g.norm_sq(flag.U) - 1.0) <= tol &&
         std::abs(g.dot(flag.Y, flag.U)) <= tol;
}

// Closed-form flag curvature for orthonormal flags, no precondition checks.
double closed_formula(double A, double B, double t, double u) {
  const double a = 1.0 - t;
  const double b = 1.0 - 2.0 * t;
  return a * a * (B * a * b + 3.0 * A * u) / (a * b + 2.0 * u * u);
}

double bi_invariant_formula(const Flag& flag, const MatsumotoSpace& space) {
  const auto& alg = space.algebra;
  const auto& g = space.g();
  const Vec w = alg.bracket(alg.bracket(flag.U, flag.Y), flag.Y);
  const double t = g.dot(flag.Y, space.drift);
  const double u = g.dot(flag.U, space.drift);
  const double a = 1.0 - t;
  const double b = 1.0 - 2.0 * t;
  return -a * a * (g.dot(w, flag.U) * a * b + 3.0 * g.dot(w, space.drift) * u) /
         (4.0 * a * b + 8.0 * u * u);
}

bool drift_is_central(const MatsumotoSpace& space, double tol) {
  for (int i = 0; i < space.dim(); ++i) {
    if (space.algebra.bracket(space.algebra.basis_vector(i), space.drift).cwiseAbs().maxCoeff() >
        tol) {
      return false;
    }
  }
  return true;
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

}  // namespace

MatsumotoSpace make_matsumoto_space(std::string name, LieAlgebra algebra, MetricPack metrics,
                                    ReductiveStructure split, Vec drift, double tol) {
  const int n = algebra.dim();
  if (metrics.g.dim() != n || split.dim() != n) {
    throw GeometryError(ErrorCode::DimensionMismatch, "space components differ in dimension");
  }
  require_dim(drift, n, "drift");
  if (!split.in_m(drift, tol)) {
    throw GeometryError(ErrorCode::VectorNotInM, "drift has a component along h");
  }
  const auto adm = admissible(drift, metrics.g);
  MatsumotoSpace space{std::move(name), std::move(algebra), std::move(metrics),
                       std::move(split), std::move(drift), adm.norm, adm.admissible};
  return space;
}

Admissibility admissible(const Vec& X, const InnerProduct& g) {
  Admissibility a;
  a.norm = g.norm(X);
  a.admissible = a.norm < 0.5;
  a.scale_bound = a.norm > 0.0 ? 0.5 / a.norm : std::numeric_limits<double>::infinity();
  return a;
}

double coefficient_bound(const Vec& generator, const InnerProduct& g) {
  const double n = g.norm(generator);
  return n > 0.0 ? 0.5 / n : std::numeric_limits<double>::infinity();
}

double F(const Vec& y, const MatsumotoSpace& space) {
  require_dim(y, space.dim(), "y");
  require_nonzero(y, space.g());
  require_admissible(space);
  const double alpha = space.g().norm(y);
  return alpha * alpha / (alpha - space.g().dot(space.drift, y));
}

double g_Y_closed(const Vec& Y, const Vec& U, const Vec& V, const MatsumotoSpace& space) {
  require_dim(Y, space.dim(), "Y");
  require_dim(U, space.dim(), "U");
  require_dim(V, space.dim(), "V");
  require_nonzero(Y, space.g());
  require_admissible(space);
  const auto& g = space.g();
  const Vec& X = space.drift;

  const double yy = g.dot(Y, Y);
  const double s = std::sqrt(yy);
  const double yx = g.dot(Y, X);
  const double yu = g.dot(Y, U);
  const double yv = g.dot(Y, V);
  const double uv = g.dot(U, V);
  const double ux = g.dot(U, X);
  const double vx = g.dot(V, X);
  const double d = s - yx;
  const double d2 = d * d;

  const double first = (4.0 * yu * yv + 2.0 * yy * uv) / d2;
  const double second = (-4.0 * yy * yu * yv + yy * s * (yv * ux + yu * vx) +
                         yy * yy * (3.0 * ux * vx - uv) + s * yx * (7.0 * yu * yv + yy * uv) -
                         4.0 * yy * yx * (yv * ux + yu * vx)) /
                        (d2 * d2);
  return first + second;
}

double g_Y_fd(const Vec& Y, const Vec& U, const Vec& V, const MatsumotoSpace& space,
              double step) {
  require_dim(Y, space.dim(), "Y");
  require_dim(U, space.dim(), "U");
  require_dim(V, space.dim(), "V");
  require_nonzero(Y, space.g());
  require_admissible(space);
  const auto& g = space.g();
  const double nu = g.norm(U);
  const double nv = g.norm(V);
  if (nu == 0.0 || nv == 0.0) return 0.0;
  const Vec u = U / nu;
  const Vec v = V / nv;
  const double h = step * g.norm(Y);

  const auto f2 = [&](const Vec& y) {
    const double a = g.norm(y);
    const double denom = a - g.dot(space.drift, y);
    if (!(a > 0.0) || !(denom > 0.0)) {
      throw GeometryError(ErrorCode::ConeViolation, "stencil point left the domain of F");
    }
    const double f = a * a / denom;
    return f * f;
  };
  const double mixed = f2(Y + h * u + h * v) - f2(Y + h * u - h * v) - f2(Y - h * u + h * v) +
                       f2(Y - h * u - h * v);
  return 0.5 * mixed / (4.0 * h * h) * nu * nv;
}

Mat fundamental_tensor(const Vec& Y, const MatsumotoSpace& space) {
  const int n = space.dim();
  Mat out(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      out(i, j) = g_Y_closed(Y, Vec::Unit(n, i), Vec::Unit(n, j), space);
      out(j, i) = out(i, j);
    }
  }
  return out;
}

Flag make_flag(const Vec& Y, const Vec& U, const InnerProduct& g, double tol) {
  require_dim(Y, g.dim(), "Y");
  require_dim(U, g.dim(), "U");
  const double yy = g.norm_sq(Y);
  const double uu = g.norm_sq(U);
  const double yu = g.dot(Y, U);
  if (!(yy > 0.0) || !(uu > 0.0) || (yy * uu - yu * yu) <= tol * yy * uu) {
    throw GeometryError(ErrorCode::FlagDegenerate, "Y and U are linearly dependent");
  }
  return Flag{Y, U, false};
}

Flag orthonormalize_flag(const Vec& Y, const Vec& U, const InnerProduct& g, double tol) {
  make_flag(Y, U, g, tol);
  Flag out;
  out.Y = Y / g.norm(Y);
  out.U = U;
  for (int pass = 0; pass < 2; ++pass) out.U -= g.dot(out.U, out.Y) * out.Y;
  out.U /= g.norm(out.U);
  out.orthonormalized = true;
  return out;
}

double flag_numerator_closed(double A, double B, double tY, double tU, double yyy) {
  const double a = 1.0 - tY;
  const double a2 = a * a;
  return 2.0 * B / a2 +
         (yyy * tU + 3.0 * A * tU - B + tY * B - 4.0 * tY * yyy * tU) / (a2 * a2);
}

double flag_denominator_closed(double tY, double tU) {
  const double a = 1.0 - tY;
  const double a2 = a * a;
  return 2.0 / (a2 * a2) + (2.0 * tU * tU + tY - 1.0) / (a2 * a2 * a2);
}

double flag_curvature_closed(const Flag& flag, const MatsumotoSpace& space, double A, double B,
                             double tol) {
  const auto& g = space.g();
  make_flag(flag.Y, flag.U, g, tol);
  if (!numerically_orthonormal(flag, g, std::max(tol, 1e-12))) {
    throw GeometryError(ErrorCode::FlagNotOrthonormal,
                        "closed-form route needs a g-orthonormal (Y, U)");
  }
  require_admissible(space);
  return closed_formula(A, B, g.dot(flag.Y, space.drift), g.dot(flag.U, space.drift));
}

double flag_curvature_direct(const Flag& flag, const MatsumotoSpace& space,
                             const ConnectionTable& conn, const CurvatureTensor& R, bool force,
                             double tol) {
  const auto& g = space.g();
  make_flag(flag.Y, flag.U, g, tol);
  require_admissible(space);
  if (conn.dim() != space.dim() || R.dim() != space.dim()) {
    throw GeometryError(ErrorCode::DimensionMismatch, "connection does not match the space");
  }
  if (!force &&
      parallel_residual(conn, space.drift) > tol * std::max(1.0, space.drift.cwiseAbs().maxCoeff())) {
    throw GeometryError(ErrorCode::DriftNotParallel,
                        "drift is not parallel; F is not of Berwald type");
  }
  const Vec& Y = flag.Y;
  const Vec& U = flag.U;
  const Vec w = R.apply(U, Y, Y);
  const double yy = g_Y_closed(Y, Y, Y, space);
  const double uu = g_Y_closed(Y, U, U, space);
  const double yu = g_Y_closed(Y, Y, U, space);
  return g_Y_closed(Y, w, U, space) / (yy * uu - yu * yu);
}

double flag_curvature_bi_invariant(const Flag& flag, const MatsumotoSpace& space, double tol) {
  if (!space.split.trivial_isotropy()) {
    throw GeometryError(ErrorCode::NonTrivialIsotropy, "bi-invariant route is for groups");
  }
  if (!check_bi_invariance(space.g(), space.algebra, tol).bi_invariant) {
    throw GeometryError(ErrorCode::MetricNotBiInvariant, "g is not ad-invariant");
  }
  if (!drift_is_central(space, tol)) {
    throw GeometryError(ErrorCode::DriftNotParallel,
                        "drift is not central, so not parallel for a bi-invariant metric");
  }
  require_admissible(space);
  const Flag f = flag.orthonormalized ? flag : orthonormalize_flag(flag.Y, flag.U, space.g(), tol);
  return bi_invariant_formula(f, space);
}

SpaceAnalysis analyze_space(const MatsumotoSpace& space, const Tolerances& tol) {
  SpaceAnalysis a;
  const double scale = std::max(1.0, space.drift.cwiseAbs().maxCoeff());
  if (space.split.trivial_isotropy()) {
    a.connection = koszul_connection(space.algebra, space.g());
    a.curvature = curvature_tensor(*a.connection, space.algebra);
    a.drift_parallel_residual = parallel_residual(*a.connection, space.drift);
    a.drift_parallel = a.drift_parallel_residual <= tol.structural * scale;
    a.drift_central = drift_is_central(space, tol.structural);
  } else if (space.drift.isZero(0.0)) {
    a.drift_parallel = true;
  }
  a.g_bi_invariant = check_bi_invariance(space.g(), space.algebra, tol.structural).bi_invariant;
  a.natural_reductivity =
      naturally_reductive_check(space.split, space.g(), space.algebra, tol.structural);
  return a;
}

bool KReport::any_refused() const {
  return direct.status == RouteStatus::Refused || closed.status == RouteStatus::Refused ||
         bi_invariant.status == RouteStatus::Refused;
}

KReport flag_report(const MatsumotoSpace& space, const SpaceAnalysis& analysis, const Vec& Y,
                    const Vec& U, const RouteOptions& options) {
  const auto& tol = options.tol;
  const auto& g = space.g();
  require_dim(Y, space.dim(), "Y");
  require_dim(U, space.dim(), "U");
  require_admissible(space);
  if (!space.split.in_m(Y, tol.structural) || !space.split.in_m(U, tol.structural)) {
    throw GeometryError(ErrorCode::VectorNotInM, "flag must lie in m");
  }

  KReport rep;
  rep.flag = orthonormalize_flag(Y, U, g, tol.structural);
  rep.tY = g.dot(rep.flag.Y, space.drift);
  rep.tU = g.dot(rep.flag.U, space.drift);
  const Vec& fy = rep.flag.Y;
  const Vec& fu = rep.flag.U;

  const auto skip = [&](RouteOutcome& out, ErrorCode code, std::string note) {
    out.status = options.explicit_routes ? RouteStatus::Refused : RouteStatus::NotApplicable;
    out.error = code;
    out.note = std::move(note);
  };
  const auto refuse = [](RouteOutcome& out, ErrorCode code, std::string note) {
    out.status = RouteStatus::Refused;
    out.error = code;
    out.note = std::move(note);
  };
  const bool drift_bad = analysis.drift_parallel.has_value() && !*analysis.drift_parallel;
  const std::string formal_note = "formal value: Chern connection differs from Levi-Civita";

  if (options.routes & kRouteDirect) {
    if (!analysis.curvature) {
      skip(rep.direct, ErrorCode::NonTrivialIsotropy, "curvature tensor needs h = 0");
    } else if (drift_bad && !options.force) {
      refuse(rep.direct, ErrorCode::DriftNotParallel, "drift is not parallel");
    } else {
      rep.k_direct = flag_curvature_direct(rep.flag, space, *analysis.connection,
                                           *analysis.curvature, true, tol.structural);
      rep.direct.status = drift_bad ? RouteStatus::Formal : RouteStatus::Ok;
      if (drift_bad) rep.direct.note = formal_note;
    }
  }

  if (options.routes & kRouteClosed) {
    bool have_ab = true;
    if (space.metrics.g0_bi_invariant) {
      rep.A = A_term(fu, fy, space.drift, space.metrics, space.split, space.algebra,
                     MixedPairing::AsPrinted, tol.structural);
      rep.B = B_term(fu, fy, space.metrics, space.split, space.algebra, MixedPairing::AsPrinted,
                     tol.structural);
      rep.yyy = A_term(fu, fy, fy, space.metrics, space.split, space.algebra,
                       MixedPairing::AsPrinted, tol.structural);
      rep.ab_source = "puttmann";
    } else if (analysis.curvature) {
      const Vec w = analysis.curvature->apply(fu, fy, fy);
      rep.A = g.dot(w, space.drift);
      rep.B = g.dot(w, fu);
      rep.yyy = g.dot(w, fy);
      rep.ab_source = "koszul";
    } else {
      have_ab = false;
      skip(rep.closed, ErrorCode::ReferenceMetricNotBiInvariant,
           "A/B need a bi-invariant g0 or h = 0");
    }
    if (have_ab) {
      if (std::abs(*rep.yyy) > tol.agree * (1.0 + std::abs(*rep.B))) {
        throw GeometryError(ErrorCode::SymmetryViolation,
                            "<R(U,Y)Y,Y> = " + std::to_string(*rep.yyy) + " should vanish");
      }
      if (drift_bad && !options.force) {
        refuse(rep.closed, ErrorCode::DriftNotParallel, "drift is not parallel");
      } else {
        rep.k_closed = closed_formula(*rep.A, *rep.B, rep.tY, rep.tU);
        rep.k_closed_expanded = flag_numerator_closed(*rep.A, *rep.B, rep.tY, rep.tU, *rep.yyy) /
                                flag_denominator_closed(rep.tY, rep.tU);
        if (drift_bad) {
          rep.closed.status = RouteStatus::Formal;
          rep.closed.note = formal_note;
        } else {
          rep.closed.status = RouteStatus::Ok;
          if (!analysis.drift_parallel) {
            rep.closed.note = "drift parallelism assumed; not decidable with h != 0";
          }
        }
      }
    }
  }

  if (options.routes & kRouteBiInvariant) {
    if (!space.split.trivial_isotropy()) {
      skip(rep.bi_invariant, ErrorCode::NonTrivialIsotropy, "route is for groups");
    } else if (!analysis.g_bi_invariant) {
      skip(rep.bi_invariant, ErrorCode::MetricNotBiInvariant, "g is not bi-invariant");
    } else if (!analysis.drift_central && !options.force) {
      refuse(rep.bi_invariant, ErrorCode::DriftNotParallel, "drift is not central");
    } else {
      rep.k_bi_invariant = bi_invariant_formula(rep.flag, space);
      rep.bi_invariant.status = analysis.drift_central ? RouteStatus::Ok : RouteStatus::Formal;
      if (!analysis.drift_central) rep.bi_invariant.note = formal_note;
    }
  }

  std::vector<double> values;
  for (const auto& k : {rep.k_direct, rep.k_closed, rep.k_bi_invariant}) {
    if (k) values.push_back(*k);
  }
  for (std::size_t i = 0; i < values.size(); ++i) {
    for (std::size_t j = i + 1; j < values.size(); ++j) {
      rep.max_pairwise_delta = std::max(rep.max_pairwise_delta, std::abs(values[i] - values[j]));
    }
  }
  return rep;
}

std::uint64_t sample_seed(std::uint64_t seed, std::uint64_t index) {
  return splitmix64(splitmix64(seed) ^ (index + 1) * 0xD1B54A32D192ED03ull);
}

Flag random_flag(const MatsumotoSpace& space, std::uint64_t seed) {
  if (space.split.m_dim() < 2) {
    throw GeometryError(ErrorCode::FlagDegenerate, "m has no 2-planes");
  }
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  const auto draw = [&] {
    Vec c(space.split.m_dim());
    for (auto& x : c) x = normal(rng);
    return Vec(space.split.m_basis * c);
  };
  for (;;) {
    const Vec y = draw();
    const Vec u = draw();
    try {
      return orthonormalize_flag(y, u, space.g(), 1e-6);
    } catch (const GeometryError&) {
      // nearly dependent draw; take the next one
    }
  }
}

SweepResult sweep_flags(const MatsumotoSpace& space, const SpaceAnalysis& analysis, int samples,
                        std::uint64_t seed, const RouteOptions& options) {
  SweepResult out;
  out.samples = samples;
  out.seed = seed;
  std::vector<KReport> reports(static_cast<std::size_t>(std::max(samples, 0)));
  for (int i = 0; i < samples; ++i) {
    const Flag f = random_flag(space, sample_seed(seed, static_cast<std::uint64_t>(i)));
    reports[i] = flag_report(space, analysis, f.Y, f.U, options);
  }

  const auto accumulate = [](RouteStats& st, double k) {
    if (st.count == 0) {
      st.min = st.max = k;
    } else {
      st.min = std::min(st.min, k);
      st.max = std::max(st.max, k);
    }
    st.mean += k;
    ++st.count;
  };
  for (const auto& r : reports) {
    if (r.k_direct) accumulate(out.direct, *r.k_direct);
    if (r.k_closed) accumulate(out.closed, *r.k_closed);
    if (r.k_bi_invariant) accumulate(out.bi_invariant, *r.k_bi_invariant);
    out.max_pairwise_delta = std::max(out.max_pairwise_delta, r.max_pairwise_delta);
  }
  for (RouteStats* st : {&out.direct, &out.closed, &out.bi_invariant}) {
    if (st->count > 0) st->mean /= st->count;
  }
  if (!reports.empty()) {
    out.direct_outcome = reports.front().direct;
    out.closed_outcome = reports.front().closed;
    out.bi_invariant_outcome = reports.front().bi_invariant;
  }
  return out;
}

}  // namespace mflag
