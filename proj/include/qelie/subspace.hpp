#pragma once

#include <Eigen/Dense>

#include <vector>

namespace qelie {

/// A linear subspace of R^n held by a canonical Euclidean-orthonormal basis.
///
/// The basis is obtained from a reduced row echelon form of the spanning set
/// followed by Gram-Schmidt in basis order, so equal subspaces always carry the
/// same basis matrix (up to rounding).
class Subspace {
 public:
  Subspace() = default;
  explicit Subspace(std::size_t ambient_dim) : basis_(ambient_dim, 0) {}

  /// Column span of `columns`; rank decided with `tol` relative to the largest
  /// singular value (and at least absolute `tol`).
  static Subspace span(const Eigen::MatrixXd& columns, double tol);
  static Subspace whole(std::size_t n);
  /// Null space of the n-column matrix `A`.
  static Subspace null_space(const Eigen::MatrixXd& A, double tol);

  std::size_t ambient_dim() const { return static_cast<std::size_t>(basis_.rows()); }
  std::size_t dim() const { return static_cast<std::size_t>(basis_.cols()); }
  const Eigen::MatrixXd& basis() const { return basis_; }

  Eigen::MatrixXd projector() const { return basis_ * basis_.transpose(); }
  /// Euclidean distance from v to the subspace.
  double distance(const Eigen::VectorXd& v) const;
  bool contains(const Eigen::VectorXd& v, double tol) const;
  bool contains(const Subspace& other, double tol) const;
  bool equals(const Subspace& other, double tol) const;

 private:
  Eigen::MatrixXd basis_;
};

/// Span of the union.
Subspace sum(const Subspace& a, const Subspace& b, double tol);

/// {v in within : g(v, w) = 0 for all w in S}.
Subspace orthogonal_complement(const Subspace& S, const Eigen::MatrixXd& gram, double tol,
                               const Subspace* within = nullptr);

/// Basis of S orthonormal for `gram`, built by Gram-Schmidt over S's canonical
/// basis (columns are coordinates in the ambient basis).
Eigen::MatrixXd metric_orthonormal_basis(const Subspace& S, const Eigen::MatrixXd& gram);

}  // namespace qelie
