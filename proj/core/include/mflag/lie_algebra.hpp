#pragma once

#include <array>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "mflag/errors.hpp"

namespace mflag {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

inline constexpr int kMaxDim = 32;

/// One bracket relation [e_i, e_j] = sum_k coeffs[k] e_k, with 0-based i < j.
struct BracketEntry {
  int i = 0;
  int j = 0;
  Vec coeffs;
};

/// Finite-dimensional real Lie algebra in a fixed basis.
///
/// Structure constants are held densely as one matrix per basis element:
/// ad(i)(k, j) = c^k_{ij}, the k-th coordinate of [e_i, e_j]. The table is
/// antisymmetric by construction; instances come out of build_algebra(), which
/// also checks the Jacobi identity.
class LieAlgebra {
 public:
  int dim() const { return static_cast<int>(ad_.size()); }

  double c(int k, int i, int j) const { return ad_[i](k, j); }
  const Mat& ad(int i) const { return ad_[i]; }

  /// Matrix of v -> [a, v].
  Mat ad(const Vec& a) const;

  Vec bracket(const Vec& a, const Vec& b) const;
  Vec basis_vector(int i) const { return Vec::Unit(dim(), i); }

  const std::vector<std::string>& basis_names() const { return names_; }
  bool is_abelian() const;

  double jacobi_residual() const { return jacobi_residual_; }
  const std::array<int, 3>& jacobi_worst_triple() const { return jacobi_worst_; }

 private:
  friend LieAlgebra build_algebra(int, const std::vector<BracketEntry>&,
                                  std::vector<std::string>, double);
  std::vector<Mat> ad_;
  std::vector<std::string> names_;
  double jacobi_residual_ = 0.0;
  std::array<int, 3> jacobi_worst_{0, 0, 0};
};

/// Assembles the dense structure tensor from the listed brackets (unlisted
/// pairs bracket to zero) and validates it.
///
/// Throws DimensionMismatch for bad indices or lengths, DuplicateBracket when
/// a pair is listed twice and JacobiViolation (with the worst triple) when the
/// Jacobi residual exceeds `tol`.
LieAlgebra build_algebra(int dim, const std::vector<BracketEntry>& brackets,
                         std::vector<std::string> basis_names = {},
                         double tol = Tolerances{}.structural);

Vec bracket(const Vec& a, const Vec& b, const LieAlgebra& alg);

/// Symmetric positive definite pairing <e_i, e_j> on the algebra.
class InnerProduct {
 public:
  /// Validates symmetry and positive definiteness; the stored matrix is the
  /// exact symmetrization of `m`.
  explicit InnerProduct(const Mat& m, double tol = Tolerances{}.structural);

  static InnerProduct identity(int dim) { return InnerProduct(Mat::Identity(dim, dim)); }

  int dim() const { return static_cast<int>(matrix_.rows()); }
  const Mat& matrix() const { return matrix_; }

  double dot(const Vec& u, const Vec& v) const { return u.dot(matrix_ * v); }
  double norm_sq(const Vec& u) const { return dot(u, u); }
  double norm(const Vec& u) const;

 private:
  Mat matrix_;
};

/// Result of an ad-invariance sweep; the triple is (z, x, y) for the residual
/// <[z,x],y> + <x,[z,y]>.
struct BiInvarianceReport {
  bool bi_invariant = true;
  double residual = 0.0;
  std::array<int, 3> worst{0, 0, 0};
};

BiInvarianceReport check_bi_invariance(const InnerProduct& ip, const LieAlgebra& alg,
                                       double tol = Tolerances{}.structural);

/// Reference metric g0, working metric g, and phi with <X,Y> = <phi X, Y>_0.
struct MetricPack {
  InnerProduct g0;
  InnerProduct g;
  Mat phi;
  Mat phi_inv;
  bool g0_bi_invariant = false;
  double g0_bi_invariance_residual = 0.0;
};

MetricPack phi_from_metrics(const InnerProduct& g0, const InnerProduct& g,
                            const LieAlgebra& alg,
                            double tol = Tolerances{}.structural);

/// max |<phi e_i, e_j>_0 - <e_i, e_j>| over the basis.
double phi_residual(const MetricPack& pack);

/// Splitting g = h + m with m the g0-orthogonal complement of the subalgebra h.
struct ReductiveStructure {
  Mat h_basis;  // columns, g0-orthonormal
  Mat m_basis;  // columns spanning m (coordinate projections P_m e_i)
  Mat P_h;
  Mat P_m;

  int dim() const { return static_cast<int>(P_m.rows()); }
  int h_dim() const { return static_cast<int>(h_basis.cols()); }
  int m_dim() const { return static_cast<int>(m_basis.cols()); }
  bool trivial_isotropy() const { return h_dim() == 0; }

  Vec project_m(const Vec& v) const { return P_m * v; }
  Vec project_h(const Vec& v) const { return P_h * v; }
  bool in_m(const Vec& v, double tol = Tolerances{}.structural) const;
};

/// Throws DependentGenerators, NotASubalgebra or DimensionMismatch.
ReductiveStructure reductive_split(const std::vector<Vec>& h_vectors,
                                   const InnerProduct& g0, const LieAlgebra& alg,
                                   double tol = Tolerances{}.structural);

/// Extends the m-block of `g_candidate` to all of the algebra by taking g0 on
/// h and zero h/m cross terms.
InnerProduct extend_metric(const Mat& g_candidate, const ReductiveStructure& red,
                           const InnerProduct& g0);

/// Largest deviation of g from the extension rule above (cross terms and the
/// h-block against g0). Zero when red has trivial isotropy.
double extension_residual(const InnerProduct& g, const ReductiveStructure& red,
                          const InnerProduct& g0);

}  // namespace mflag
