#include <gtest/gtest.h>

#include "mflag/catalog.hpp"
#include "mflag/lie_algebra.hpp"
#include "oracle.hpp"

using namespace mflag;

namespace {

Vec v3(double a, double b, double c) { return (Vec(3) << a, b, c).finished(); }

LieAlgebra e2() {
  return build_algebra(3, {{0, 2, v3(0, -1, 0)}, {1, 2, v3(1, 0, 0)}}, {"x", "y", "z"});
}

LieAlgebra su2() {
  return build_algebra(3, {{0, 1, v3(0, 0, 1)}, {1, 2, v3(1, 0, 0)}, {0, 2, v3(0, -1, 0)}});
}

LieAlgebra alpha_family(double a) {
  return build_algebra(3, {{0, 1, v3(0, a, a)}, {1, 2, v3(2 * a, 0, 0)}, {0, 2, v3(0, -a, -a)}},
                       {"x", "y", "z"});
}

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const GeometryError& e) {
    return e.code();
  }
  ADD_FAILURE() << "no GeometryError thrown";
  return ErrorCode::ParseError;
}

}  // namespace

TEST(BuildAlgebra, E2IsValid) {
  const auto alg = e2();
  EXPECT_EQ(alg.dim(), 3);
  EXPECT_LE(alg.jacobi_residual(), 1e-15);
  EXPECT_DOUBLE_EQ(alg.c(0, 1, 2), 1.0);   // [y,z] = x
  EXPECT_DOUBLE_EQ(alg.c(1, 2, 0), 1.0);   // [z,x] = y
  EXPECT_DOUBLE_EQ(alg.c(0, 2, 1), -1.0);  // antisymmetric completion
}

TEST(BuildAlgebra, AbelianIsValid) {
  const auto alg = build_algebra(3, {});
  EXPECT_TRUE(alg.is_abelian());
  EXPECT_EQ(alg.jacobi_residual(), 0.0);
  EXPECT_EQ(alg.basis_names(), (std::vector<std::string>{"e1", "e2", "e3"}));
}

TEST(BuildAlgebra, AlphaFamilyIsValid) {
  const auto alg = alpha_family(1.0);
  EXPECT_LE(alg.jacobi_residual(), 1e-12);
  EXPECT_TRUE(bracket(v3(0, 1, 0), v3(0, 0, 1), alg).isApprox(v3(2, 0, 0)));
  EXPECT_TRUE(bracket(v3(0, 0, 1), v3(1, 0, 0), alg).isApprox(v3(0, 1, 1)));
}

TEST(BuildAlgebra, JacobiViolationNamesWorstTriple) {
  // [e1,e2] = e3, [e2,e3] = e2: the Jacobi sum on (e1,e2,e3) is [e2,e1] = -e3.
  try {
    build_algebra(3, {{0, 1, v3(0, 0, 1)}, {1, 2, v3(0, 1, 0)}});
    FAIL() << "expected JacobiViolation";
  } catch (const GeometryError& e) {
    EXPECT_EQ(e.code(), ErrorCode::JacobiViolation);
    EXPECT_EQ(e.indices().size(), 3u);
    EXPECT_NE(std::string(e.what()).find("JacobiViolation"), std::string::npos);
  }
}

TEST(BuildAlgebra, RejectsBadInput) {
  EXPECT_EQ(code_of([] { build_algebra(3, {{0, 3, v3(0, 0, 0)}}); }),
            ErrorCode::DimensionMismatch);
  EXPECT_EQ(code_of([] { build_algebra(3, {{1, 0, v3(0, 0, 0)}}); }),
            ErrorCode::DimensionMismatch);
  EXPECT_EQ(code_of([] { build_algebra(3, {{0, 1, Vec::Zero(2)}}); }),
            ErrorCode::DimensionMismatch);
  EXPECT_EQ(code_of([] { build_algebra(0, {}); }), ErrorCode::DimensionMismatch);
  EXPECT_EQ(code_of([] { build_algebra(kMaxDim + 1, {}); }), ErrorCode::DimensionMismatch);
  EXPECT_EQ(code_of([] { build_algebra(3, {{0, 1, v3(0, 0, 1)}, {0, 1, v3(0, 0, 1)}}); }),
            ErrorCode::DuplicateBracket);
}

TEST(Bracket, Examples) {
  EXPECT_TRUE(bracket(v3(0, 1, 0), v3(0, 0, 1), e2()).isApprox(v3(1, 0, 0)));
  const auto s = su2();
  EXPECT_TRUE(bracket(v3(1, 1, 0), v3(0, 0, 1), s).isApprox(v3(1, -1, 0)));
  const Vec v = v3(0.3, -1.2, 2.0);
  EXPECT_EQ(bracket(v, v, s).cwiseAbs().maxCoeff(), 0.0);
  EXPECT_EQ(code_of([&] { bracket(Vec::Zero(2), v, s); }), ErrorCode::DimensionMismatch);
}

TEST(Bracket, MatchesOracleAndIsBilinear) {
  std::mt19937_64 rng(11);
  for (const auto& name : catalog_names()) {
    const auto& alg = catalog_entry(name).space.algebra;
    for (int n = 0; n < 20; ++n) {
      const Vec a = oracle::random_vec(rng, alg.dim());
      const Vec b = oracle::random_vec(rng, alg.dim());
      const Vec c = oracle::random_vec(rng, alg.dim());
      const double s = 1.7, t = -0.4;
      const Vec lhs = bracket(s * a + t * b, c, alg);
      const Vec rhs = s * bracket(a, c, alg) + t * bracket(b, c, alg);
      EXPECT_LE((lhs - rhs).norm(), 1e-12 * (1 + rhs.norm())) << name;
      EXPECT_LE((bracket(a, b, alg) - oracle::bracket(alg, a, b)).norm(), 1e-12) << name;
    }
    EXPECT_LE(alg.jacobi_residual(), 1e-12) << name;
  }
}

TEST(InnerProduct, RejectsBadMatrices) {
  Mat asym = Mat::Identity(2, 2);
  asym(0, 1) = 0.5;
  EXPECT_EQ(code_of([&] { InnerProduct{asym}; }), ErrorCode::NotSymmetric);
  Mat indefinite = Mat::Identity(2, 2);
  indefinite(1, 1) = -1.0;
  EXPECT_EQ(code_of([&] { InnerProduct{indefinite}; }), ErrorCode::NotPositiveDefinite);
  EXPECT_EQ(code_of([&] { InnerProduct{Mat::Zero(2, 2)}; }), ErrorCode::NotPositiveDefinite);
  EXPECT_EQ(code_of([&] { InnerProduct{Mat::Identity(2, 3)}; }), ErrorCode::DimensionMismatch);
}

TEST(BiInvariance, Examples) {
  EXPECT_TRUE(check_bi_invariance(InnerProduct::identity(3), su2()).bi_invariant);
  const double lambda = 1.5;
  const auto rep = check_bi_invariance(InnerProduct(lambda * lambda * Mat::Identity(3, 3)), e2());
  EXPECT_FALSE(rep.bi_invariant);
  EXPECT_NEAR(rep.residual, lambda * lambda, 1e-12);
  std::mt19937_64 rng(3);
  EXPECT_TRUE(
      check_bi_invariance(InnerProduct(oracle::random_spd(rng, 3)), build_algebra(3, {}))
          .bi_invariant);
  // anisotropic su(2) is not ad-invariant
  EXPECT_FALSE(check_bi_invariance(InnerProduct(Vec(v3(1, 2, 3)).asDiagonal()), su2())
                   .bi_invariant);
}

TEST(PhiFromMetrics, Examples) {
  const auto s = su2();
  const auto id = InnerProduct::identity(3);
  auto pack = phi_from_metrics(id, id, s);
  EXPECT_TRUE(pack.phi.isApprox(Mat::Identity(3, 3)));
  EXPECT_TRUE(pack.g0_bi_invariant);

  pack = phi_from_metrics(id, InnerProduct(Vec(v3(2, 3, 5)).asDiagonal()), s);
  EXPECT_TRUE(pack.phi.isApprox(Mat(Vec(v3(2, 3, 5)).asDiagonal())));
  EXPECT_TRUE(pack.phi_inv.isApprox(Mat(Vec(v3(0.5, 1.0 / 3, 0.2)).asDiagonal())));

  const double l = 3.0;
  pack = phi_from_metrics(InnerProduct(l * l * Mat::Identity(3, 3)), id, e2());
  EXPECT_TRUE(pack.phi.isApprox(Mat::Identity(3, 3) / (l * l)));
  EXPECT_FALSE(pack.g0_bi_invariant);
}

TEST(PhiFromMetrics, ResidualSmallForRandomPairs) {
  std::mt19937_64 rng(5);
  const auto alg = build_algebra(4, {});
  for (int n = 0; n < 20; ++n) {
    const auto pack = phi_from_metrics(InnerProduct(oracle::random_spd(rng, 4)),
                                       InnerProduct(oracle::random_spd(rng, 4)), alg);
    EXPECT_LE(phi_residual(pack), 1e-12 * (1 + pack.g.matrix().cwiseAbs().maxCoeff()));
    // phi is g0-self-adjoint: G0 phi symmetric
    const Mat s = pack.g0.matrix() * pack.phi;
    EXPECT_LE((s - s.transpose()).cwiseAbs().maxCoeff(), 1e-10);
  }
}

TEST(ReductiveSplit, TrivialSubgroup) {
  const auto red = reductive_split({}, InnerProduct::identity(3), su2());
  EXPECT_TRUE(red.trivial_isotropy());
  EXPECT_TRUE(red.P_m.isApprox(Mat::Identity(3, 3)));
  EXPECT_EQ(red.m_dim(), 3);
}

TEST(ReductiveSplit, Su2ModU1) {
  const auto red = reductive_split({v3(0, 0, 1)}, InnerProduct::identity(3), su2());
  ASSERT_EQ(red.m_dim(), 2);
  ASSERT_EQ(red.h_dim(), 1);
  EXPECT_TRUE(red.P_m.isApprox(Mat(Vec(v3(1, 1, 0)).asDiagonal())));
  EXPECT_TRUE(red.in_m(v3(1, -2, 0)));
  EXPECT_FALSE(red.in_m(v3(1, 0, 0.1)));
}

TEST(ReductiveSplit, E2SpanXIsASubalgebra) {
  const auto red = reductive_split({v3(2, 0, 0)}, InnerProduct::identity(3), e2());
  EXPECT_TRUE(red.P_m.isApprox(Mat(Vec(v3(0, 1, 1)).asDiagonal())));
  EXPECT_EQ(red.m_dim(), 2);
}

TEST(ReductiveSplit, Errors) {
  const auto id = InnerProduct::identity(3);
  EXPECT_EQ(code_of([&] { reductive_split({v3(1, 0, 0), v3(0, 1, 0)}, id, su2()); }),
            ErrorCode::NotASubalgebra);
  EXPECT_EQ(code_of([&] { reductive_split({v3(1, 0, 0), v3(2, 0, 0)}, id, e2()); }),
            ErrorCode::DependentGenerators);
  EXPECT_EQ(code_of([&] { reductive_split({Vec::Zero(3)}, id, e2()); }),
            ErrorCode::DependentGenerators);
}

TEST(ReductiveSplit, ProjectorProperties) {
  std::mt19937_64 rng(8);
  const auto alg = build_algebra(4, {});
  for (int n = 0; n < 10; ++n) {
    const InnerProduct g0(oracle::random_spd(rng, 4));
    const Vec h1 = oracle::random_vec(rng, 4);
    const Vec h2 = oracle::random_vec(rng, 4);
    const auto red = reductive_split({h1, h2}, g0, alg);
    EXPECT_LE((red.P_m * red.P_m - red.P_m).cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_LE((red.P_h * red.P_m).cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_LE((red.P_h + red.P_m - Mat::Identity(4, 4)).cwiseAbs().maxCoeff(), 1e-12);
    const Vec u = oracle::random_vec(rng, 4);
    EXPECT_NEAR(g0.dot(red.P_m * u, h1), 0.0, 1e-12 * (1 + u.norm() * h1.norm()));
    EXPECT_NEAR(g0.dot(red.P_m * u, h2), 0.0, 1e-12 * (1 + u.norm() * h2.norm()));
    EXPECT_EQ(red.m_dim(), 2);
  }
}

TEST(ExtendMetric, ZeroesCrossTerms) {
  const auto s = su2();
  const auto id = InnerProduct::identity(3);
  const auto red = reductive_split({v3(0, 0, 1)}, id, s);
  Mat cand = Mat::Identity(3, 3) * 2.0;
  cand(0, 2) = cand(2, 0) = 0.7;
  const auto g = extend_metric(cand, red, id);
  EXPECT_TRUE(g.matrix().isApprox(Mat(Vec(v3(2, 2, 1)).asDiagonal())));
  EXPECT_LE(extension_residual(g, red, id), 1e-15);
  EXPECT_GT(extension_residual(InnerProduct(cand), red, id), 0.5);
}
