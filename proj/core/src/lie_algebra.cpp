#include "mflag/lie_algebra.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>
#include <utility>

namespace mflag {

namespace {

std::string fmt_num(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

void require_length(const Vec& v, int dim, const char* what) {
  if (v.size() != dim) {
    throw GeometryError(ErrorCode::DimensionMismatch,
                        std::string(what) + " has length " + std::to_string(v.size()) +
                            ", expected " + std::to_string(dim));
  }
}

// Modified Gram-Schmidt against `gram`; columns whose remainder falls below
// `cutoff` (in the gram norm) are dropped.
Mat gram_schmidt(const Mat& vectors, const Mat& gram, double cutoff) {
  std::vector<Vec> kept;
  for (Eigen::Index c = 0; c < vectors.cols(); ++c) {
    Vec v = vectors.col(c);
    for (int pass = 0; pass < 2; ++pass) {
      for (const Vec& q : kept) v -= q.dot(gram * v) * q;
    }
    const double n = std::sqrt(std::max(0.0, v.dot(gram * v)));
    if (n > cutoff) kept.push_back(v / n);
  }
  Mat out(vectors.rows(), static_cast<Eigen::Index>(kept.size()));
  for (std::size_t c = 0; c < kept.size(); ++c) out.col(static_cast<Eigen::Index>(c)) = kept[c];
  return out;
}

}  // namespace

Mat LieAlgebra::ad(const Vec& a) const {
  Mat out = Mat::Zero(dim(), dim());
  for (int i = 0; i < dim(); ++i) {
    if (a[i] != 0.0) out += a[i] * ad_[i];
  }
  return out;
}

Vec LieAlgebra::bracket(const Vec& a, const Vec& b) const {
  require_length(a, dim(), "bracket argument");
  require_length(b, dim(), "bracket argument");
  Vec out = Vec::Zero(dim());
  for (int i = 0; i < dim(); ++i) {
    if (a[i] != 0.0) out += a[i] * (ad_[i] * b);
  }
  return out;
}

bool LieAlgebra::is_abelian() const {
  return std::all_of(ad_.begin(), ad_.end(), [](const Mat& m) { return m.isZero(0.0); });
}

LieAlgebra build_algebra(int dim, const std::vector<BracketEntry>& brackets,
                         std::vector<std::string> basis_names, double tol) {
  if (dim < 1 || dim > kMaxDim) {
    throw GeometryError(ErrorCode::DimensionMismatch,
                        "dimension " + std::to_string(dim) + " outside [1, " +
                            std::to_string(kMaxDim) + "]");
  }
  if (basis_names.empty()) {
    for (int i = 0; i < dim; ++i) basis_names.push_back("e" + std::to_string(i + 1));
  } else if (static_cast<int>(basis_names.size()) != dim) {
    throw GeometryError(ErrorCode::DimensionMismatch,
                        "expected " + std::to_string(dim) + " basis names");
  }

  LieAlgebra alg;
  alg.ad_.assign(dim, Mat::Zero(dim, dim));
  alg.names_ = std::move(basis_names);

  std::set<std::pair<int, int>> seen;
  for (const auto& b : brackets) {
    if (b.i < 0 || b.j >= dim || b.i >= b.j) {
      throw GeometryError(ErrorCode::DimensionMismatch,
                          "bracket indices (" + std::to_string(b.i + 1) + ", " +
                              std::to_string(b.j + 1) + ") must satisfy 1 <= i < j <= dim",
                          {b.i, b.j});
    }
    require_length(b.coeffs, dim, "bracket coefficient vector");
    if (!seen.emplace(b.i, b.j).second) {
      throw GeometryError(ErrorCode::DuplicateBracket,
                          "pair (" + std::to_string(b.i + 1) + ", " +
                              std::to_string(b.j + 1) + ") listed twice",
                          {b.i, b.j});
    }
    alg.ad_[b.i].col(b.j) = b.coeffs;
    alg.ad_[b.j].col(b.i) = -b.coeffs;
  }

  // [[x,y],z] + [[y,z],x] + [[z,x],y] over basis triples.
  double worst = 0.0;
  std::array<int, 3> worst_triple{0, 0, 0};
  for (int i = 0; i < dim; ++i) {
    for (int j = i + 1; j < dim; ++j) {
      const Vec xy = alg.ad_[i].col(j);
      for (int k = j + 1; k < dim; ++k) {
        const Vec yz = alg.ad_[j].col(k);
        const Vec zx = alg.ad_[k].col(i);
        const Vec jac = alg.ad(xy).col(k) + alg.ad(yz).col(i) + alg.ad(zx).col(j);
        const double r = jac.cwiseAbs().maxCoeff();
        if (r > worst) {
          worst = r;
          worst_triple = {i, j, k};
        }
      }
    }
  }
  alg.jacobi_residual_ = worst;
  alg.jacobi_worst_ = worst_triple;
  if (worst > tol) {
    const auto& n = alg.names_;
    throw GeometryError(ErrorCode::JacobiViolation,
                        "Jacobi residual " + fmt_num(worst) + " at (" + n[worst_triple[0]] +
                            ", " + n[worst_triple[1]] + ", " + n[worst_triple[2]] + ")",
                        {worst_triple[0], worst_triple[1], worst_triple[2]});
  }
  return alg;
}

Vec bracket(const Vec& a, const Vec& b, const LieAlgebra& alg) { return alg.bracket(a, b); }

InnerProduct::InnerProduct(const Mat& m, double tol) {
  if (m.rows() != m.cols() || m.rows() < 1) {
    throw GeometryError(ErrorCode::DimensionMismatch, "inner product matrix must be square");
  }
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  const double asym = (m - m.transpose()).cwiseAbs().maxCoeff();
  if (asym > tol * scale) {
    throw GeometryError(ErrorCode::NotSymmetric,
                        "inner product asymmetry " + fmt_num(asym));
  }
  matrix_ = 0.5 * (m + m.transpose());
  Eigen::SelfAdjointEigenSolver<Mat> eig(matrix_, Eigen::EigenvaluesOnly);
  const double lo = eig.eigenvalues().minCoeff();
  if (!(lo > tol)) {
    throw GeometryError(ErrorCode::NotPositiveDefinite,
                        "inner product has eigenvalue " + fmt_num(lo));
  }
}

double InnerProduct::norm(const Vec& u) const { return std::sqrt(std::max(0.0, norm_sq(u))); }

BiInvarianceReport check_bi_invariance(const InnerProduct& ip, const LieAlgebra& alg,
                                       double tol) {
  if (ip.dim() != alg.dim()) {
    throw GeometryError(ErrorCode::DimensionMismatch, "metric and algebra dimensions differ");
  }
  BiInvarianceReport rep;
  const Mat& G = ip.matrix();
  for (int z = 0; z < alg.dim(); ++z) {
    // entry (x, y) = <[z,x],y> + <x,[z,y]>
    const Mat skew = alg.ad(z).transpose() * G + G * alg.ad(z);
    Eigen::Index x = 0;
    Eigen::Index y = 0;
    const double r = skew.cwiseAbs().maxCoeff(&x, &y);
    if (r > rep.residual) {
      rep.residual = r;
      rep.worst = {z, static_cast<int>(x), static_cast<int>(y)};
    }
  }
  rep.bi_invariant = rep.residual <= tol;
  return rep;
}

MetricPack phi_from_metrics(const InnerProduct& g0, const InnerProduct& g,
                            const LieAlgebra& alg, double tol) {
  if (g0.dim() != g.dim() || g.dim() != alg.dim()) {
    throw GeometryError(ErrorCode::DimensionMismatch, "metric and algebra dimensions differ");
  }
  const Mat phi = g0.matrix().ldlt().solve(g.matrix());
  Eigen::GeneralizedSelfAdjointEigenSolver<Mat> eig(g.matrix(), g0.matrix(),
                                                    Eigen::EigenvaluesOnly);
  const double lo = eig.eigenvalues().minCoeff();
  if (!(lo > tol)) {
    throw GeometryError(ErrorCode::NotPositiveDefinite, "phi has eigenvalue " + fmt_num(lo));
  }
  const auto bi = check_bi_invariance(g0, alg, tol);
  MetricPack pack{g0, g, phi, phi.inverse(), bi.bi_invariant, bi.residual};
  if (phi_residual(pack) > tol * std::max(1.0, g.matrix().cwiseAbs().maxCoeff())) {
    throw GeometryError(ErrorCode::NotPositiveDefinite, "phi is not g0-self-adjoint");
  }
  return pack;
}

double phi_residual(const MetricPack& pack) {
  // <phi e_i, e_j>_0 = (phi^T G0)(i, j)
  return (pack.phi.transpose() * pack.g0.matrix() - pack.g.matrix()).cwiseAbs().maxCoeff();
}

bool ReductiveStructure::in_m(const Vec& v, double tol) const {
  if (v.size() != dim()) return false;
  return project_h(v).cwiseAbs().maxCoeff() <= tol * std::max(1.0, v.cwiseAbs().maxCoeff());
}

ReductiveStructure reductive_split(const std::vector<Vec>& h_vectors, const InnerProduct& g0,
                                   const LieAlgebra& alg, double tol) {
  const int n = alg.dim();
  if (g0.dim() != n) {
    throw GeometryError(ErrorCode::DimensionMismatch, "metric and algebra dimensions differ");
  }
  const int k = static_cast<int>(h_vectors.size());
  Mat H(n, k);
  for (int c = 0; c < k; ++c) {
    require_length(h_vectors[c], n, "subalgebra generator");
    H.col(c) = h_vectors[c];
  }

  ReductiveStructure red;
  if (k == 0) {
    red.h_basis = Mat(n, 0);
    red.m_basis = Mat::Identity(n, n);
    red.P_h = Mat::Zero(n, n);
    red.P_m = Mat::Identity(n, n);
    return red;
  }
  if (k > n) {
    throw GeometryError(ErrorCode::DependentGenerators,
                        std::to_string(k) + " generators in dimension " + std::to_string(n));
  }

  Eigen::JacobiSVD<Mat> svd(H);
  const auto& s = svd.singularValues();
  if (!(s[k - 1] > tol * std::max(1.0, s[0]))) {
    throw GeometryError(ErrorCode::DependentGenerators,
                        "subalgebra generators are linearly dependent");
  }

  const Mat& G0 = g0.matrix();
  red.h_basis = gram_schmidt(H, G0, 0.0);
  red.P_h = red.h_basis * red.h_basis.transpose() * G0;
  red.P_m = Mat::Identity(n, n) - red.P_h;

  // Keep P_m e_i whenever it raises the rank of the collected set.
  std::vector<Vec> cols;
  Mat ortho(n, 0);
  for (int i = 0; i < n; ++i) {
    const Vec v = red.P_m.col(i);
    Mat trial(n, ortho.cols() + 1);
    trial << ortho, v;
    const double scale = std::sqrt(G0.diagonal().maxCoeff());
    const Mat q = gram_schmidt(trial, G0, Tolerances{}.nullspace_rel * std::max(1.0, scale));
    if (q.cols() > ortho.cols()) {
      ortho = q;
      cols.push_back(v);
    }
  }
  red.m_basis.resize(n, static_cast<Eigen::Index>(cols.size()));
  for (std::size_t c = 0; c < cols.size(); ++c) red.m_basis.col(static_cast<Eigen::Index>(c)) = cols[c];

  for (int a = 0; a < k; ++a) {
    for (int b = a + 1; b < k; ++b) {
      const Vec leak = red.P_m * alg.bracket(red.h_basis.col(a), red.h_basis.col(b));
      const double r = leak.cwiseAbs().maxCoeff();
      if (r > tol) {
        throw GeometryError(ErrorCode::NotASubalgebra,
                            "bracket of generators leaves h by " + fmt_num(r), {a, b});
      }
    }
  }
  return red;
}

InnerProduct extend_metric(const Mat& g_candidate, const ReductiveStructure& red,
                           const InnerProduct& g0) {
  if (g_candidate.rows() != red.dim() || g_candidate.cols() != red.dim()) {
    throw GeometryError(ErrorCode::DimensionMismatch, "metric and split dimensions differ");
  }
  const Mat ext = red.P_m.transpose() * g_candidate * red.P_m +
                  red.P_h.transpose() * g0.matrix() * red.P_h;
  return InnerProduct(ext);
}

double extension_residual(const InnerProduct& g, const ReductiveStructure& red,
                          const InnerProduct& g0) {
  if (red.trivial_isotropy()) return 0.0;
  const Mat ext = red.P_m.transpose() * g.matrix() * red.P_m +
                  red.P_h.transpose() * g0.matrix() * red.P_h;
  return (g.matrix() - ext).cwiseAbs().maxCoeff();
}

}  // namespace mflag
