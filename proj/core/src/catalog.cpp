#include "mflag/catalog.hpp"

#include <cmath>
#include <stdexcept>

namespace mflag {

namespace {

Vec vec3(double a, double b, double c) { return Vec{{a, b, c}}; }

std::vector<BracketEntry> su2_brackets(int dim) {
  const auto pad = [dim](Vec v) {
    Vec out = Vec::Zero(dim);
    out.head(3) = v;
    return out;
  };
  return {{0, 1, pad(vec3(0, 0, 1))}, {1, 2, pad(vec3(1, 0, 0))}, {0, 2, pad(vec3(0, -1, 0))}};
}

MatsumotoSpace assemble(std::string name, LieAlgebra alg, const Mat& g0, const Mat& g,
                        const std::vector<Vec>& h, const Vec& X) {
  const InnerProduct ip0(g0);
  auto split = reductive_split(h, ip0, alg);
  const InnerProduct ip = h.empty() ? InnerProduct(g) : extend_metric(g, split, ip0);
  auto pack = phi_from_metrics(ip0, ip, alg);
  return make_matsumoto_space(std::move(name), std::move(alg), std::move(pack), std::move(split),
                              X);
}

// Rescales so that the largest |coordinate| is 1 and positive.
Vec coordinate_normalized(const Vec& v) {
  Eigen::Index at = 0;
  v.cwiseAbs().maxCoeff(&at);
  return v / v[at];
}

}  // namespace

CatalogEntry build_e2(double lambda, double u) {
  if (!(lambda > 0.0)) throw std::invalid_argument("lambda must be positive");
  auto alg = build_algebra(3, {{0, 2, vec3(0, -1, 0)}, {1, 2, vec3(1, 0, 0)}}, {"x", "y", "z"});
  const Mat g = lambda * lambda * Mat::Identity(3, 3);
  const Vec z = vec3(0, 0, 1);
  CatalogEntry e{"e2",
                 "rigid motions of the Euclidean plane, X = u z",
                 {{"lambda", lambda}, {"u", u}},
                 assemble("e2", std::move(alg), g, g, {}, u * z),
                 z,
                 {}};
  e.expected.r_is_zero = true;
  e.expected.parallel_span = std::vector<Vec>{z};
  e.expected.admissible_bound = 1.0 / (2.0 * lambda);
  e.expected.expected_k = 0.0;
  return e;
}

CatalogEntry build_alpha_family(double alpha, double lambda, double u) {
  if (!(lambda > 0.0)) throw std::invalid_argument("lambda must be positive");
  const double a = alpha;
  auto alg = build_algebra(
      3, {{0, 1, vec3(0, a, a)}, {1, 2, vec3(2 * a, 0, 0)}, {0, 2, vec3(0, -a, -a)}},
      {"x", "y", "z"});
  const Mat g = lambda * lambda * Mat::Identity(3, 3);
  const Vec gen = vec3(0, 1, -1);
  CatalogEntry e{"alpha",
                 "flat family [x,y] = a(y+z), [y,z] = 2a x, [z,x] = a(y+z), X = u(y - z)",
                 {{"alpha", alpha}, {"lambda", lambda}, {"u", u}},
                 assemble("alpha", std::move(alg), g, g, {}, u * gen),
                 gen,
                 {}};
  e.expected.r_is_zero = true;
  if (alpha == 0.0) {
    e.expected.parallel_span = std::vector<Vec>{vec3(1, 0, 0), vec3(0, 1, 0), vec3(0, 0, 1)};
  } else {
    e.expected.parallel_span = std::vector<Vec>{gen};
  }
  e.expected.admissible_bound = 1.0 / (2.0 * std::sqrt(2.0) * lambda);
  e.expected.expected_k = 0.0;
  return e;
}

CatalogEntry build_abelian(int dim, const Mat& g, const Vec& X) {
  auto alg = build_algebra(dim, {});
  CatalogEntry e{"abelian",
                 "abelian algebra; every invariant field is parallel",
                 {{"dim", static_cast<double>(dim)}},
                 assemble("abelian", std::move(alg), g, g, {}, X),
                 std::nullopt,
                 {}};
  const Vec gen = X.isZero(0.0) ? Vec(Vec::Unit(dim, 0)) : coordinate_normalized(X);
  e.drift_generator = gen;
  std::vector<Vec> span;
  for (int i = 0; i < dim; ++i) span.push_back(Vec::Unit(dim, i));
  e.expected.r_is_zero = true;
  e.expected.parallel_span = span;
  e.expected.admissible_bound = coefficient_bound(gen, e.space.g());
  e.expected.expected_k = 0.0;
  return e;
}

CatalogEntry build_su2(double phi1, double phi2, double phi3) {
  auto alg = build_algebra(3, su2_brackets(3));
  const Mat g = vec3(phi1, phi2, phi3).asDiagonal();
  CatalogEntry e{"su2",
                 "su(2) with reference metric I and g = diag(phi), no drift",
                 {{"phi1", phi1}, {"phi2", phi2}, {"phi3", phi3}},
                 assemble("su2", std::move(alg), Mat::Identity(3, 3), g, {}, Vec::Zero(3)),
                 std::nullopt,
                 {}};
  e.expected.r_is_zero = false;
  e.expected.parallel_span = std::vector<Vec>{};
  if (phi1 == phi2 && phi2 == phi3) e.expected.expected_k = 0.25 / phi1;
  return e;
}

CatalogEntry build_su2_x_r(double u) {
  auto alg = build_algebra(4, su2_brackets(4), {"e1", "e2", "e3", "w"});
  const Vec w = Vec::Unit(4, 3);
  CatalogEntry e{"su2_x_r",
                 "su(2) + R with product metric I and central drift X = u w",
                 {{"u", u}},
                 assemble("su2_x_r", std::move(alg), Mat::Identity(4, 4), Mat::Identity(4, 4),
                          {}, u * w),
                 w,
                 {}};
  e.expected.r_is_zero = false;
  e.expected.parallel_span = std::vector<Vec>{w};
  e.expected.admissible_bound = 0.5;
  return e;
}

CatalogEntry build_su2_u1(double mu) {
  if (!(mu > 0.0)) throw std::invalid_argument("mu must be positive");
  auto alg = build_algebra(3, su2_brackets(3));
  const Mat g = vec3(mu, mu, 1.0).asDiagonal();
  CatalogEntry e{"su2_u1",
                 "SU(2)/U(1) with h = span{e3}, g = mu I on m, no drift",
                 {{"mu", mu}},
                 assemble("su2_u1", std::move(alg), Mat::Identity(3, 3), g, {vec3(0, 0, 1)},
                          Vec::Zero(3)),
                 std::nullopt,
                 {}};
  e.expected.expected_k = 1.0 / mu;
  return e;
}

const std::vector<std::string>& catalog_names() {
  static const std::vector<std::string> names{"e2",      "alpha",   "abelian", "su2",
                                              "su2_aniso", "su2_x_r", "su2_u1"};
  return names;
}

CatalogEntry catalog_entry(const std::string& name) {
  if (name == "e2") return build_e2(1.0, 0.3);
  if (name == "alpha") return build_alpha_family(1.0, 1.0, 0.2);
  if (name == "abelian") return build_abelian(3, Mat::Identity(3, 3), vec3(0.3, 0, 0));
  if (name == "su2") return build_su2(1.0, 1.0, 1.0);
  if (name == "su2_aniso") {
    auto e = build_su2(1.0, 1.5, 2.5);
    e.name = e.space.name = "su2_aniso";
    e.description = "su(2) with reference metric I and g = diag(1, 1.5, 2.5), no drift";
    return e;
  }
  if (name == "su2_x_r") return build_su2_x_r(0.3);
  if (name == "su2_u1") return build_su2_u1(2.0);
  throw std::invalid_argument("unknown catalog entry '" + name + "'");
}

}  // namespace mflag
