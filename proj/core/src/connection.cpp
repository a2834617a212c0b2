#include "mflag/connection.hpp"

#include <algorithm>
#include <cmath>

namespace mflag {

Mat ConnectionTable::along(const Vec& u) const {
  Mat out = Mat::Zero(dim(), dim());
  for (int i = 0; i < dim(); ++i) {
    if (u[i] != 0.0) out += u[i] * along_[i];
  }
  return out;
}

CurvatureTensor::CurvatureTensor(std::vector<Mat> blocks) : blocks_(std::move(blocks)) {
  dim_ = static_cast<int>(std::lround(std::sqrt(static_cast<double>(blocks_.size()))));
  if (dim_ * dim_ != static_cast<int>(blocks_.size())) {
    throw GeometryError(ErrorCode::DimensionMismatch, "curvature needs dim^2 blocks");
  }
}

Mat CurvatureTensor::operator_of(const Vec& u, const Vec& y) const {
  Mat out = Mat::Zero(dim_, dim_);
  for (int i = 0; i < dim_; ++i) {
    if (u[i] == 0.0) continue;
    for (int j = 0; j < dim_; ++j) {
      if (y[j] != 0.0) out += (u[i] * y[j]) * block(i, j);
    }
  }
  return out;
}

double CurvatureTensor::max_abs() const {
  double m = 0.0;
  for (const auto& b : blocks_) m = std::max(m, b.cwiseAbs().maxCoeff());
  return m;
}

ConnectionTable koszul_connection(const LieAlgebra& alg, const InnerProduct& g) {
  const int n = alg.dim();
  if (g.dim() != n) {
    throw GeometryError(ErrorCode::DimensionMismatch, "metric and algebra dimensions differ");
  }
  const Mat& G = g.matrix();
  // lowered(i)(k, j) = <[e_i, e_j], e_k>
  std::vector<Mat> lowered(n);
  for (int i = 0; i < n; ++i) lowered[i] = G * alg.ad(i);

  const auto solver = G.ldlt();
  std::vector<Mat> along(n, Mat::Zero(n, n));
  Vec rhs(n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < n; ++k) {
        rhs[k] = 0.5 * (lowered[i](k, j) - lowered[j](i, k) + lowered[k](j, i));
      }
      along[i].col(j) = solver.solve(rhs);
    }
  }
  return ConnectionTable(std::move(along), g, ConnectionBackend::Koszul);
}

ConnectionTable koszul_connection(const LieAlgebra& alg, const InnerProduct& g,
                                  const ReductiveStructure& red) {
  if (!red.trivial_isotropy()) {
    throw GeometryError(ErrorCode::NonTrivialIsotropy,
                        "Koszul table needs h = 0; got dim h = " + std::to_string(red.h_dim()));
  }
  return koszul_connection(alg, g);
}

CurvatureTensor curvature_tensor(const ConnectionTable& conn, const LieAlgebra& alg) {
  const int n = conn.dim();
  if (alg.dim() != n) {
    throw GeometryError(ErrorCode::DimensionMismatch, "connection and algebra dimensions differ");
  }
  std::vector<Mat> blocks(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const Vec bij = alg.ad(i).col(j);
      blocks[i * n + j] = conn.along(i) * conn.along(j) - conn.along(j) * conn.along(i) -
                          conn.along(bij);
    }
  }
  return CurvatureTensor(std::move(blocks));
}

Mat parallel_fields(const ConnectionTable& conn, double nullspace_rel) {
  const int n = conn.dim();
  Mat stacked(static_cast<Eigen::Index>(n) * n, n);
  for (int i = 0; i < n; ++i) stacked.middleRows(static_cast<Eigen::Index>(i) * n, n) = conn.along(i);

  Eigen::JacobiSVD<Mat> svd(stacked, Eigen::ComputeFullV);
  const Vec& s = svd.singularValues();
  const double cut = nullspace_rel * (s.size() > 0 ? s[0] : 0.0);
  int rank = 0;
  while (rank < s.size() && s[rank] > cut && s[rank] > 0.0) ++rank;
  const Mat kernel = svd.matrixV().rightCols(n - rank);
  const Mat projector = kernel * kernel.transpose();

  const Mat& G = conn.metric().matrix();
  const double cutoff = std::sqrt(nullspace_rel) * std::sqrt(G.diagonal().maxCoeff());
  std::vector<Vec> basis;
  for (int i = 0; i < n && static_cast<int>(basis.size()) < n - rank; ++i) {
    Vec v = projector.col(i);
    for (int pass = 0; pass < 2; ++pass) {
      for (const Vec& q : basis) v -= q.dot(G * v) * q;
    }
    const double len = std::sqrt(std::max(0.0, v.dot(G * v)));
    if (len > cutoff) basis.push_back(v / len);
  }
  Mat out(n, static_cast<Eigen::Index>(basis.size()));
  for (std::size_t c = 0; c < basis.size(); ++c) out.col(static_cast<Eigen::Index>(c)) = basis[c];
  return out;
}

double parallel_residual(const ConnectionTable& conn, const Vec& x) {
  double r = 0.0;
  for (int i = 0; i < conn.dim(); ++i) r = std::max(r, (conn.along(i) * x).cwiseAbs().maxCoeff());
  return r;
}

double torsion_residual(const ConnectionTable& conn, const LieAlgebra& alg) {
  double r = 0.0;
  for (int i = 0; i < conn.dim(); ++i) {
    for (int j = 0; j < conn.dim(); ++j) {
      const Vec t = conn.along(i).col(j) - conn.along(j).col(i) - alg.ad(i).col(j);
      r = std::max(r, t.cwiseAbs().maxCoeff());
    }
  }
  return r;
}

double metric_compatibility_residual(const ConnectionTable& conn) {
  const Mat& G = conn.metric().matrix();
  double r = 0.0;
  for (int i = 0; i < conn.dim(); ++i) {
    const Mat lowered = G * conn.along(i);
    r = std::max(r, (lowered + lowered.transpose()).cwiseAbs().maxCoeff());
  }
  return r;
}

double antisymmetry_residual(const CurvatureTensor& r) {
  double out = 0.0;
  for (int i = 0; i < r.dim(); ++i) {
    for (int j = i; j < r.dim(); ++j) {
      out = std::max(out, (r.block(i, j) + r.block(j, i)).cwiseAbs().maxCoeff());
    }
  }
  return out;
}

double pairing_antisymmetry_residual(const CurvatureTensor& r, const InnerProduct& g) {
  const Mat& G = g.matrix();
  double out = 0.0;
  for (int i = 0; i < r.dim(); ++i) {
    for (int j = 0; j < r.dim(); ++j) {
      const Mat lowered = G * r.block(i, j);
      out = std::max(out, (lowered + lowered.transpose()).cwiseAbs().maxCoeff());
    }
  }
  return out;
}

double bianchi_residual(const CurvatureTensor& r) {
  const int n = r.dim();
  double out = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < n; ++k) {
        const Vec s = r.block(i, j).col(k) + r.block(j, k).col(i) + r.block(k, i).col(j);
        out = std::max(out, s.cwiseAbs().maxCoeff());
      }
    }
  }
  return out;
}

}  // namespace mflag
