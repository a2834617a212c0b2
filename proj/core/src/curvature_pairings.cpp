#include "mflag/curvature_pairings.hpp"

#include <algorithm>
#include <cmath>

namespace mflag {

namespace {

void require_puttmann_inputs(const MetricPack& pack, const ReductiveStructure& red,
                             std::initializer_list<const Vec*> vectors, double tol) {
  if (!pack.g0_bi_invariant) {
    throw GeometryError(ErrorCode::ReferenceMetricNotBiInvariant,
                        "closed-form pairings need an ad-invariant g0");
  }
  for (const Vec* v : vectors) {
    if (v->size() != red.dim()) {
      throw GeometryError(ErrorCode::DimensionMismatch, "vector length differs from dim");
    }
    if (!red.in_m(*v, tol)) {
      throw GeometryError(ErrorCode::VectorNotInM, "argument has a component along h");
    }
  }
}

}  // namespace

double A_term(const Vec& U, const Vec& Y, const Vec& X, const MetricPack& pack,
              const ReductiveStructure& red, const LieAlgebra& alg, MixedPairing mixed,
              double tol) {
  require_puttmann_inputs(pack, red, {&U, &Y, &X}, tol);
  const auto br = [&](const Vec& a, const Vec& b) -> Vec { return alg.bracket(a, b); };
  const auto ip0 = [&](const Vec& a, const Vec& b) { return pack.g0.dot(a, b); };
  const Mat& phi = pack.phi;
  const Mat& phi_inv = pack.phi_inv;
  const Vec pU = phi * U;
  const Vec pY = phi * Y;
  const Vec pX = phi * X;

  const double line1 = -0.25 * (ip0(br(pU, Y) + br(U, pY), br(Y, X)) +
                                ip0(br(U, Y), br(pY, X) + br(Y, pX)));
  Vec yu = br(Y, U);
  if (mixed == MixedPairing::ProjectBoth) yu = red.project_m(yu);
  const double line2 = -0.75 * pack.g.dot(yu, red.project_m(br(Y, X)));
  const double line3 = -0.5 * ip0(br(U, pX) + br(X, pU), phi_inv * br(Y, pY));
  const double line4 =
      0.25 * ip0(br(U, pY) + br(Y, pU), phi_inv * (br(Y, pX) + br(X, pY)));
  return line1 + line2 + line3 + line4;
}

double B_term(const Vec& U, const Vec& Y, const MetricPack& pack,
              const ReductiveStructure& red, const LieAlgebra& alg, MixedPairing mixed,
              double tol) {
  require_puttmann_inputs(pack, red, {&U, &Y}, tol);
  const auto br = [&](const Vec& a, const Vec& b) -> Vec { return alg.bracket(a, b); };
  const auto ip0 = [&](const Vec& a, const Vec& b) { return pack.g0.dot(a, b); };
  const Mat& phi = pack.phi;
  const Mat& phi_inv = pack.phi_inv;
  const Vec pU = phi * U;
  const Vec pY = phi * Y;

  const double line1 = -0.5 * ip0(br(pU, Y) + br(U, pY), br(Y, U));
  Vec yu = br(Y, U);
  const Vec yu_m = red.project_m(yu);
  if (mixed == MixedPairing::ProjectBoth) yu = yu_m;
  const double line2 = -0.75 * pack.g.dot(yu, yu_m);
  const double line3 = -ip0(br(U, pU), phi_inv * br(Y, pY));
  const double line4 =
      0.25 * ip0(br(U, pY) + br(Y, pU), phi_inv * (br(Y, pU) + br(U, pY)));
  return line1 + line2 + line3 + line4;
}

NaturalReductivityReport naturally_reductive_check(const ReductiveStructure& red,
                                                   const InnerProduct& g,
                                                   const LieAlgebra& alg, double tol) {
  NaturalReductivityReport rep;
  const int m = red.m_dim();
  for (int z = 0; z < m; ++z) {
    const Vec Z = red.m_basis.col(z);
    for (int x = 0; x < m; ++x) {
      const Vec X = red.m_basis.col(x);
      const Vec zx = red.project_m(alg.bracket(Z, X));
      for (int y = x; y < m; ++y) {
        const Vec Yv = red.m_basis.col(y);
        const double r =
            std::abs(g.dot(X, red.project_m(alg.bracket(Z, Yv))) + g.dot(zx, Yv));
        if (r > rep.residual) {
          rep.residual = r;
          rep.worst = {z, x, y};
        }
      }
    }
  }
  rep.naturally_reductive = rep.residual <= tol;
  return rep;
}

Vec nat_red_curvature(const Vec& U, const Vec& Y, const ReductiveStructure& red,
                      const InnerProduct& g, const LieAlgebra& alg, double tol) {
  const auto check = naturally_reductive_check(red, g, alg, tol);
  if (!check.naturally_reductive) {
    throw GeometryError(ErrorCode::NotNaturallyReductive,
                        "split fails the natural reductivity condition",
                        {check.worst[0], check.worst[1], check.worst[2]});
  }
  const Vec uy = alg.bracket(U, Y);
  return 0.25 * red.project_m(alg.bracket(Y, red.project_m(uy))) +
         alg.bracket(Y, red.project_h(uy));
}

Vec bi_invariant_curvature(const Vec& U, const Vec& Y, const LieAlgebra& alg) {
  return -0.25 * alg.bracket(alg.bracket(U, Y), Y);
}

}  // namespace mflag
