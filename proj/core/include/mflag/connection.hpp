#pragma once

#include <vector>

#include "mflag/lie_algebra.hpp"

namespace mflag {

enum class ConnectionBackend { Koszul };

/// Levi-Civita connection of a left-invariant metric, restricted to
/// left-invariant fields. along(i) is the matrix of v -> nabla_{e_i} v, so
/// gamma(k, i, j) is the k-th coordinate of nabla_{e_i} e_j.
class ConnectionTable {
 public:
  ConnectionTable(std::vector<Mat> along, InnerProduct metric, ConnectionBackend backend)
      : along_(std::move(along)), metric_(std::move(metric)), backend_(backend) {}

  int dim() const { return static_cast<int>(along_.size()); }
  double gamma(int k, int i, int j) const { return along_[i](k, j); }
  const Mat& along(int i) const { return along_[i]; }
  Mat along(const Vec& u) const;
  Vec covariant(const Vec& u, const Vec& v) const { return along(u) * v; }

  const InnerProduct& metric() const { return metric_; }
  ConnectionBackend backend() const { return backend_; }

 private:
  std::vector<Mat> along_;
  InnerProduct metric_;
  ConnectionBackend backend_;
};

/// Curvature of an invariant connection with the convention
///
///   R(U,Y)Z = nabla_U nabla_Y Z - nabla_Y nabla_U Z - nabla_{[U,Y]} Z.
///
/// With this sign <R(U,Y)Y, U> is the (unnormalized) sectional curvature;
/// many textbooks use the opposite order.
class CurvatureTensor {
 public:
  explicit CurvatureTensor(std::vector<Mat> blocks);

  int dim() const { return dim_; }
  /// l-th coordinate of R(e_i, e_j) e_k.
  double get(int l, int i, int j, int k) const { return block(i, j)(l, k); }
  const Mat& block(int i, int j) const { return blocks_[i * dim_ + j]; }

  /// Matrix of Z -> R(U,Y)Z.
  Mat operator_of(const Vec& u, const Vec& y) const;
  Vec apply(const Vec& u, const Vec& y, const Vec& z) const { return operator_of(u, y) * z; }

  double max_abs() const;

 private:
  int dim_ = 0;
  std::vector<Mat> blocks_;
};

/// 2<nabla_a b, c> = <[a,b],c> - <[b,c],a> + <[c,a],b>.
ConnectionTable koszul_connection(const LieAlgebra& alg, const InnerProduct& g);

/// As above, refusing with NonTrivialIsotropy when the split has h != 0: the
/// algebra-level formula only describes invariant metrics on the group itself.
ConnectionTable koszul_connection(const LieAlgebra& alg, const InnerProduct& g,
                                  const ReductiveStructure& red);

CurvatureTensor curvature_tensor(const ConnectionTable& conn, const LieAlgebra& alg);

/// g-orthonormal basis (columns) of the invariant fields X with
/// nabla_{e_i} X = 0 for every i. The basis is canonical: standard basis
/// vectors projected onto the kernel, then Gram-Schmidt in g, so repeated runs
/// and different SVD paths give identical output.
Mat parallel_fields(const ConnectionTable& conn, double nullspace_rel = Tolerances{}.nullspace_rel);

/// max_i |nabla_{e_i} X|_inf.
double parallel_residual(const ConnectionTable& conn, const Vec& x);

// Structural residuals, all max-norm.
double torsion_residual(const ConnectionTable& conn, const LieAlgebra& alg);
double metric_compatibility_residual(const ConnectionTable& conn);
double antisymmetry_residual(const CurvatureTensor& r);
double pairing_antisymmetry_residual(const CurvatureTensor& r, const InnerProduct& g);
double bianchi_residual(const CurvatureTensor& r);

}  // namespace mflag
