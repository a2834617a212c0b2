#include <gtest/gtest.h>

#include "mflag/catalog.hpp"
#include "mflag/classify.hpp"
#include "mflag/matsumoto.hpp"
#include "oracle.hpp"

using namespace mflag;

namespace {

Vec e(int n, int i) { return Vec::Unit(n, i); }

MatsumotoSpace with_drift(const MatsumotoSpace& s, const Vec& X) {
  return make_matsumoto_space(s.name, s.algebra, s.metrics, s.split, X);
}

Vec random_in_m(std::mt19937_64& rng, const MatsumotoSpace& s) {
  return s.split.m_basis * oracle::random_vec(rng, s.split.m_dim());
}

// Drift in m with |X| uniform in [0, 0.45).
Vec random_drift(std::mt19937_64& rng, const MatsumotoSpace& s) {
  const Vec d = random_in_m(rng, s);
  std::uniform_real_distribution<double> ud(0.0, 0.45);
  return d * (ud(rng) / s.g().norm(d));
}

template <class Fn>
ErrorCode code_of(Fn&& f) {
  try {
    f();
  } catch (const GeometryError& err) {
    return err.code();
  }
  ADD_FAILURE() << "no GeometryError thrown";
  return ErrorCode::ParseError;
}

}  // namespace

TEST(F, Examples) {
  const auto s = build_e2(1.0, 0.3).space;
  EXPECT_NEAR(F(e(3, 2), s), 10.0 / 7.0, 1e-15);
  EXPECT_NEAR(F(2 * e(3, 2), s), 20.0 / 7.0, 1e-14);
  const auto flat = build_e2(1.0, 0.0).space;
  EXPECT_DOUBLE_EQ(F(e(3, 0), flat), 1.0);
  EXPECT_EQ(code_of([&] { F(Vec::Zero(3), s); }), ErrorCode::ZeroVector);
  EXPECT_EQ(code_of([&] { F(e(3, 0), build_e2(1.0, 0.5).space); }), ErrorCode::Inadmissible);
  EXPECT_EQ(code_of([&] { F(Vec::Zero(2), s); }), ErrorCode::DimensionMismatch);
}

TEST(F, MatchesOracleAndHomogeneity) {
  std::mt19937_64 rng(101);
  for (const auto& name : catalog_names()) {
    const auto base = catalog_entry(name).space;
    const auto s = with_drift(base, random_drift(rng, base));
    for (int n = 0; n < 20; ++n) {
      const Vec y = random_in_m(rng, s);
      const double f = F(y, s);
      EXPECT_NEAR(f, oracle::F(y, s.g().matrix(), s.drift), 1e-12 * f) << name;
      EXPECT_GT(f, 0.0);
      for (double c : {0.5, 2.0, 10.0}) EXPECT_NEAR(F(c * y, s), c * f, 1e-10 * c * f) << name;
    }
  }
}

TEST(Admissible, Examples) {
  const auto g1 = InnerProduct::identity(3);
  const auto a = admissible(0.3 * e(3, 2), g1);
  EXPECT_TRUE(a.admissible);
  EXPECT_NEAR(a.scale_bound, 0.5 / 0.3, 1e-12);
  EXPECT_NEAR(coefficient_bound(e(3, 2), g1), 0.5, 1e-15);
  EXPECT_FALSE(admissible(0.6 * e(3, 2), g1).admissible);
  EXPECT_FALSE(admissible(0.5 * e(3, 2), g1).admissible);  // strict
  const Vec yz = (Vec(3) << 0, 1, -1).finished();
  EXPECT_NEAR(coefficient_bound(yz, g1), 1 / (2 * std::sqrt(2.0)), 1e-15);
  const InnerProduct g4(4.0 * Mat::Identity(3, 3));
  EXPECT_NEAR(coefficient_bound(e(3, 2), g4), 0.25, 1e-15);
  EXPECT_TRUE(admissible(0.2 * e(3, 2), g4).admissible);
}

TEST(GY, ClosedExamples) {
  std::mt19937_64 rng(102);
  const auto base = build_su2_x_r(0.0).space;
  for (int n = 0; n < 20; ++n) {
    const Vec Y = oracle::random_vec(rng, 4), U = oracle::random_vec(rng, 4),
              V = oracle::random_vec(rng, 4);
    EXPECT_NEAR(g_Y_closed(Y, U, V, base), base.g().dot(U, V), 1e-10 * (1 + U.norm() * V.norm()));
  }
  const auto s = build_su2_x_r(0.3).space;
  for (int n = 0; n < 20; ++n) {
    Vec Y = oracle::random_vec(rng, 4);
    Y /= s.g().norm(Y);
    const double t = s.g().dot(Y, s.drift);
    EXPECT_NEAR(g_Y_closed(Y, Y, Y, s), 1 / ((1 - t) * (1 - t)), 1e-12);
    EXPECT_NEAR(g_Y_closed(Y, Y, Y, s), std::pow(F(Y, s), 2), 1e-12);
  }
  EXPECT_EQ(code_of([&] { g_Y_closed(Vec::Zero(4), e(4, 0), e(4, 0), s); }),
            ErrorCode::ZeroVector);
  EXPECT_EQ(code_of([&] { g_Y_closed(e(4, 0), e(4, 0), e(4, 0), build_su2_x_r(0.7).space); }),
            ErrorCode::Inadmissible);
}

TEST(GY, ClosedMatchesIndependentOracle) {
  std::mt19937_64 rng(103);
  for (const auto& name : catalog_names()) {
    const auto base = catalog_entry(name).space;
    for (int n = 0; n < 30; ++n) {
      const auto s = with_drift(base, random_drift(rng, base));
      const Vec Y = random_in_m(rng, s), U = random_in_m(rng, s), V = random_in_m(rng, s);
      const double c = g_Y_closed(Y, U, V, s);
      const double o = oracle::g_Y(Y, U, V, s.g().matrix(), s.drift);
      EXPECT_NEAR(c, o, 1e-7 * (1 + std::abs(c)) * (1 + U.norm() * V.norm())) << name;
    }
  }
}

TEST(GY, FdExamples) {
  const auto flat = build_su2_x_r(0.0).space;
  EXPECT_NEAR(g_Y_fd(e(4, 0), e(4, 1), e(4, 1), flat), 1.0, 1e-7);
  const auto s = build_su2_x_r(0.3).space;
  const Vec Y = (Vec(4) << 0.2, -0.4, 1.0, 0.6).finished();
  EXPECT_NEAR(g_Y_fd(Y, Y, Y, s), std::pow(F(Y, s), 2), 1e-6);
  EXPECT_NEAR(g_Y_fd(Y, Y, Y, s), g_Y_closed(Y, Y, Y, s), 1e-5 * (1 + g_Y_closed(Y, Y, Y, s)));
}

TEST(GY, FdConeViolation) {
  // Y - hU - hV = 0 with U = V = Y and h = |Y| / 2.
  const auto s = build_su2_x_r(0.3).space;
  EXPECT_EQ(code_of([&] { g_Y_fd(e(4, 3), e(4, 3), e(4, 3), s, 0.5); }),
            ErrorCode::ConeViolation);
}

TEST(GY, HomogeneityAndSymmetry) {
  std::mt19937_64 rng(104);
  for (const auto& name : catalog_names()) {
    const auto base = catalog_entry(name).space;
    const auto s = with_drift(base, random_drift(rng, base));
    const Vec Y = random_in_m(rng, s);
    const Mat gy = fundamental_tensor(Y, s);
    EXPECT_LE((gy - gy.transpose()).cwiseAbs().maxCoeff(), 1e-12) << name;
    for (double c : {0.5, 2.0, 10.0}) {
      EXPECT_LE((fundamental_tensor(c * Y, s) - gy).cwiseAbs().maxCoeff(),
                1e-10 * gy.cwiseAbs().maxCoeff())
          << name;
    }
  }
}

TEST(FlagClosed, NumeratorDenominatorExamples) {
  EXPECT_DOUBLE_EQ(flag_numerator_closed(0.1, 0.7, 0, 0), 0.7);
  EXPECT_NEAR(flag_numerator_closed(0, 0.25, 0, 0.3), 0.25, 1e-15);
  EXPECT_EQ(flag_numerator_closed(0, 0, 0.2, -0.3), 0.0);
  EXPECT_DOUBLE_EQ(flag_denominator_closed(0, 0), 1.0);
  EXPECT_NEAR(flag_denominator_closed(0, 0.3), 1.18, 1e-15);
}

TEST(FlagClosed, DenominatorPositiveOnGrid) {
  for (int i = -49; i <= 49; ++i) {
    for (int j = -49; j <= 49; ++j) {
      const double tY = i / 100.0, tU = j / 100.0;
      if (tY * tY + tU * tU >= 0.25) continue;  // |X| < 1/2 bounds (tY, tU)
      EXPECT_GT(flag_denominator_closed(tY, tU), 0.0) << tY << ' ' << tU;
    }
  }
}

TEST(FlagClosed, DenominatorMatchesAssembledGram) {
  std::mt19937_64 rng(105);
  const auto base = build_su2_x_r(0.0).space;
  for (int n = 0; n < 50; ++n) {
    const auto s = with_drift(base, random_drift(rng, base));
    const Flag f = orthonormalize_flag(oracle::random_vec(rng, 4), oracle::random_vec(rng, 4),
                                       s.g());
    const double yy = g_Y_closed(f.Y, f.Y, f.Y, s), uu = g_Y_closed(f.Y, f.U, f.U, s),
                 uy = g_Y_closed(f.Y, f.U, f.Y, s);
    EXPECT_NEAR(flag_denominator_closed(s.g().dot(f.Y, s.drift), s.g().dot(f.U, s.drift)),
                yy * uu - uy * uy, 1e-10);
  }
}

TEST(FlagClosed, Examples) {
  const auto s = build_su2_x_r(0.3).space;
  const Flag f12 = orthonormalize_flag(e(4, 0), e(4, 1), s.g());
  EXPECT_NEAR(flag_curvature_closed(f12, s, 0.0, 0.25), 0.25, 1e-15);
  const Flag f1w = orthonormalize_flag(e(4, 0), e(4, 3), s.g());
  EXPECT_EQ(flag_curvature_closed(f1w, s, 0.0, 0.0), 0.0);
  const auto flat = build_su2_x_r(0.0).space;
  EXPECT_NEAR(flag_curvature_closed(f12, flat, 0.3, 0.7), 0.7, 1e-15);
  EXPECT_EQ(code_of([&] { flag_curvature_closed(Flag{2 * e(4, 0), e(4, 1)}, s, 0, 0.25); }),
            ErrorCode::FlagNotOrthonormal);
}

TEST(OrthonormalizeFlag, Examples) {
  const auto g = InnerProduct::identity(3);
  const Flag f = orthonormalize_flag(2 * e(3, 0), e(3, 0) + e(3, 1), g);
  EXPECT_TRUE(f.Y.isApprox(e(3, 0)));
  EXPECT_TRUE(f.U.isApprox(e(3, 1)));
  EXPECT_TRUE(f.orthonormalized);
  const Flag again = orthonormalize_flag(f.Y, f.U, g);
  EXPECT_TRUE(again.Y.isApprox(f.Y) && again.U.isApprox(f.U));
  EXPECT_EQ(code_of([&] { orthonormalize_flag(e(3, 0), 3 * e(3, 0), g); }),
            ErrorCode::FlagDegenerate);

  std::mt19937_64 rng(106);
  for (int n = 0; n < 50; ++n) {
    const InnerProduct gr(oracle::random_spd(rng, 4));
    const Vec Y = oracle::random_vec(rng, 4);
    const Flag r = orthonormalize_flag(Y, oracle::random_vec(rng, 4), gr);
    EXPECT_NEAR(gr.norm_sq(r.Y), 1.0, 1e-12);
    EXPECT_NEAR(gr.norm_sq(r.U), 1.0, 1e-12);
    EXPECT_NEAR(gr.dot(r.Y, r.U), 0.0, 1e-12);
    EXPECT_GT(gr.dot(r.Y, Y), 0.0);  // flagpole direction kept
  }
}

TEST(FlagDirect, Examples) {
  std::mt19937_64 rng(107);
  const auto s = build_e2(1.0, 0.3).space;
  const auto a = analyze_space(s);
  for (int n = 0; n < 20; ++n) {
    const Flag f = make_flag(oracle::random_vec(rng, 3), oracle::random_vec(rng, 3), s.g());
    EXPECT_NEAR(flag_curvature_direct(f, s, *a.connection, *a.curvature), 0.0, 1e-12);
  }
  const Mat G = oracle::random_spd(rng, 4);
  Vec X = oracle::random_vec(rng, 4);
  X *= 0.4 / std::sqrt(X.dot(G * X));
  const auto ab = build_abelian(4, G, X).space;
  const auto aa = analyze_space(ab);
  for (int n = 0; n < 20; ++n) {
    const Flag f = make_flag(oracle::random_vec(rng, 4), oracle::random_vec(rng, 4), ab.g());
    EXPECT_EQ(flag_curvature_direct(f, ab, *aa.connection, *aa.curvature), 0.0);
  }
  const auto sxr = build_su2_x_r(0.3).space;
  const auto sa = analyze_space(sxr);
  const Flag f = make_flag(e(4, 0), e(4, 1), sxr.g());
  EXPECT_NEAR(flag_curvature_direct(f, sxr, *sa.connection, *sa.curvature), 0.25, 1e-12);
  EXPECT_NEAR(flag_curvature_direct(f, sxr, *sa.connection, *sa.curvature),
              flag_curvature_closed(orthonormalize_flag(e(4, 0), e(4, 1), sxr.g()), sxr, 0, 0.25),
              1e-9);
}

TEST(FlagDirect, MatchesOracleFlagCurvature) {
  std::mt19937_64 rng(108);
  for (const auto& name : catalog_names()) {
    const auto s = catalog_entry(name).space;
    if (!s.split.trivial_isotropy() || s.dim() < 2) continue;
    const auto a = analyze_space(s);
    for (int n = 0; n < 10; ++n) {
      const Vec Y = oracle::random_vec(rng, s.dim()), U = oracle::random_vec(rng, s.dim());
      const double k = flag_curvature_direct(make_flag(Y, U, s.g()), s, *a.connection,
                                             *a.curvature, true);
      EXPECT_NEAR(k, oracle::flag_curvature(s.algebra, s.g().matrix(), s.drift, Y, U),
                  1e-6 * (1 + std::abs(k)))
          << name;
    }
  }
}

TEST(FlagDirect, ProjectiveInvariance) {
  std::mt19937_64 rng(109);
  const auto s = build_su2_x_r(0.35).space;
  const auto a = analyze_space(s);
  for (int n = 0; n < 30; ++n) {
    const Vec Y = oracle::random_vec(rng, 4), U = oracle::random_vec(rng, 4);
    const double k = flag_curvature_direct(make_flag(Y, U, s.g()), s, *a.connection, *a.curvature);
    for (double c : {0.5, 3.0}) {
      for (double t : {-1.0, 0.7}) {
        const double k2 = flag_curvature_direct(make_flag(c * Y, U + t * Y, s.g()), s,
                                                *a.connection, *a.curvature);
        EXPECT_NEAR(k2, k, 1e-8 * (1 + std::abs(k)));
      }
    }
  }
}

TEST(FlagDirect, RefusesNonParallelDrift) {
  const auto su = build_su2(1, 1, 1).space;
  const auto s = with_drift(su, 0.3 * e(3, 0));
  const auto a = analyze_space(s);
  ASSERT_TRUE(a.drift_parallel.has_value());
  EXPECT_FALSE(*a.drift_parallel);
  const Flag f = make_flag(e(3, 1), e(3, 2), s.g());
  EXPECT_EQ(code_of([&] { flag_curvature_direct(f, s, *a.connection, *a.curvature); }),
            ErrorCode::DriftNotParallel);
  EXPECT_NO_THROW(flag_curvature_direct(f, s, *a.connection, *a.curvature, true));

  const auto rep = flag_report(s, a, e(3, 1), e(3, 2));
  EXPECT_EQ(rep.direct.status, RouteStatus::Refused);
  EXPECT_EQ(rep.direct.error, ErrorCode::DriftNotParallel);
  EXPECT_TRUE(rep.any_refused());
  RouteOptions force;
  force.force = true;
  const auto forced = flag_report(s, a, e(3, 1), e(3, 2), force);
  EXPECT_EQ(forced.direct.status, RouteStatus::Formal);
  EXPECT_NE(forced.direct.note.find("formal"), std::string::npos);
  EXPECT_FALSE(forced.any_refused());
}

TEST(FlagBiInvariant, Examples) {
  const auto sxr = build_su2_x_r(0.3).space;
  EXPECT_NEAR(flag_curvature_bi_invariant(Flag{e(4, 0), e(4, 1)}, sxr), 0.25, 1e-15);
  const auto su = build_su2(1, 1, 1).space;
  EXPECT_NEAR(flag_curvature_bi_invariant(Flag{e(3, 0), e(3, 1)}, su), 0.25, 1e-15);
  EXPECT_EQ(code_of([&] {
              flag_curvature_bi_invariant(make_flag(e(3, 0), e(3, 0) + 1e-13 * e(3, 1), su.g()),
                                          su);
            }),
            ErrorCode::FlagDegenerate);
  EXPECT_EQ(code_of([&] {
              flag_curvature_bi_invariant(Flag{e(3, 0), e(3, 1)}, build_e2(1, 0.3).space);
            }),
            ErrorCode::MetricNotBiInvariant);
  EXPECT_EQ(code_of([&] {
              flag_curvature_bi_invariant(Flag{e(3, 1), e(3, 2)}, with_drift(su, 0.3 * e(3, 0)));
            }),
            ErrorCode::DriftNotParallel);
  EXPECT_EQ(code_of([&] {
              flag_curvature_bi_invariant(Flag{e(3, 0), e(3, 1)}, build_su2_u1(1.0).space);
            }),
            ErrorCode::NonTrivialIsotropy);
}

TEST(Routes, AgreeOnCatalogSpaces) {
  for (const auto& name : catalog_names()) {
    const auto s = catalog_entry(name).space;
    if (s.split.m_dim() < 2) continue;
    const auto a = analyze_space(s);
    const auto res = sweep_flags(s, a, 200, 17);
    EXPECT_LE(res.max_pairwise_delta, 1e-6) << name;
    EXPECT_GT(res.closed.count + res.direct.count, 0) << name;
  }
}

TEST(Routes, ZeroDriftCollapse) {
  std::mt19937_64 rng(110);
  for (const auto& name : catalog_names()) {
    const auto base = catalog_entry(name).space;
    if (base.split.m_dim() < 2) continue;
    const auto s = with_drift(base, Vec::Zero(base.dim()));
    const auto a = analyze_space(s);
    for (int n = 0; n < 20; ++n) {
      const Flag f = random_flag(s, rng());
      const auto rep = flag_report(s, a, f.Y, f.U);
      ASSERT_TRUE(rep.B.has_value()) << name;
      for (const auto& k : {rep.k_direct, rep.k_closed, rep.k_bi_invariant}) {
        if (k) EXPECT_NEAR(*k, *rep.B, 1e-10) << name;
      }
      const Vec Y = random_in_m(rng, s), U = random_in_m(rng, s), V = random_in_m(rng, s);
      EXPECT_NEAR(g_Y_closed(Y, U, V, s), s.g().dot(U, V), 1e-10 * (1 + U.norm() * V.norm()));
    }
  }
}

TEST(Sweep, DeterministicAndSeedSensitive) {
  const auto s = build_su2_x_r(0.3).space;
  const auto a = analyze_space(s);
  const auto r1 = sweep_flags(s, a, 50, 7);
  const auto r2 = sweep_flags(s, a, 50, 7);
  const auto r3 = sweep_flags(s, a, 50, 8);
  EXPECT_EQ(r1.closed.mean, r2.closed.mean);
  EXPECT_EQ(r1.direct.min, r2.direct.min);
  EXPECT_NE(r1.closed.mean, r3.closed.mean);
  EXPECT_NE(sample_seed(7, 0), sample_seed(7, 1));
  EXPECT_NE(sample_seed(7, 0), sample_seed(8, 0));
}

TEST(Analysis, HomogeneousSpaceParallelism) {
  const auto u1 = build_su2_u1(2.0).space;
  const auto a = analyze_space(u1);
  EXPECT_FALSE(a.connection.has_value());
  ASSERT_TRUE(a.drift_parallel.has_value());  // X = 0 is always parallel
  EXPECT_TRUE(*a.drift_parallel);
  const auto drifted = with_drift(u1, 0.2 * e(3, 0));
  EXPECT_FALSE(analyze_space(drifted).drift_parallel.has_value());
  EXPECT_EQ(code_of([&] { with_drift(u1, 0.2 * e(3, 2)); }), ErrorCode::VectorNotInM);
}

TEST(Classify, Examples) {
  const auto e2c = classify_space(build_e2(1.0, 0.3).space, analyze_space(build_e2(1.0, 0.3).space));
  EXPECT_EQ(e2c.label_names(), (std::vector<std::string>{"berwald", "geodesically_complete",
                                                         "flat", "locally_minkowskian"}));
  const auto su = build_su2(1, 1, 1).space;
  const auto suc = classify_space(su, analyze_space(su));
  EXPECT_EQ(suc.label_names(), (std::vector<std::string>{"berwald", "geodesically_complete"}));
  EXPECT_EQ(suc.flat, false);
  const auto al = build_alpha_family(1.0, 1.0, 0.2).space;
  const auto alc = classify_space(al, analyze_space(al));
  EXPECT_TRUE(alc.has("locally_minkowskian"));
  EXPECT_TRUE(alc.has("flat"));
  const auto bad = build_e2(1.0, 0.5).space;
  EXPECT_TRUE(classify_space(bad, analyze_space(bad)).labels.empty());
  const auto drifted = with_drift(su, 0.3 * e(3, 0));
  const auto dc = classify_space(drifted, analyze_space(drifted));
  EXPECT_EQ(dc.berwald, false);
  EXPECT_TRUE(dc.labels.empty());
  for (const auto& l : e2c.labels) EXPECT_FALSE(l.reason.empty());
}
