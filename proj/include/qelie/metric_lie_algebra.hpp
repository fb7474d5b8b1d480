#pragma once

#include <Eigen/Dense>

#include <optional>
#include <string>
#include <vector>

#include "qelie/structure_tensor.hpp"

namespace qelie {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

inline constexpr double kDefaultTol = 1e-9;

/// A Lie algebra in a declared basis together with an inner product on it.
///
/// The float tensor is always present. When every structure constant came from
/// an exact rational input, an exact copy is kept as well and exact predicates
/// (Jacobi, unimodularity, rationality) use it.
class MetricLieAlgebra {
 public:
  MetricLieAlgebra() = default;

  /// Validates antisymmetry and positive definiteness of the Gram matrix.
  /// Throws Error(InvalidTensor / GramNotPositiveDefinite / DimensionMismatch).
  MetricLieAlgebra(std::vector<std::string> labels, StructureTensor st, Matrix gram,
                   std::optional<ExactStructureTensor> exact = std::nullopt);

  /// Identity Gram.
  MetricLieAlgebra(std::vector<std::string> labels, StructureTensor st,
                   std::optional<ExactStructureTensor> exact = std::nullopt);

  static MetricLieAlgebra from_exact(std::vector<std::string> labels, const ExactStructureTensor& st,
                                     Matrix gram);
  static MetricLieAlgebra from_exact(std::vector<std::string> labels, const ExactStructureTensor& st);

  std::size_t dim() const { return st_.dim(); }
  const std::vector<std::string>& labels() const { return labels_; }
  const StructureTensor& tensor() const { return st_; }
  const Matrix& gram() const { return gram_; }
  const std::optional<ExactStructureTensor>& exact() const { return exact_; }
  bool is_exact() const { return exact_.has_value(); }

  /// Coordinates of [x, y].
  Vector bracket(const Vector& x, const Vector& y) const;
  /// Coordinates of [e_i, e_j].
  Vector bracket(std::size_t i, std::size_t j) const;

  double inner(const Vector& x, const Vector& y) const { return x.dot(gram_ * y); }

  /// Same algebra, different Gram matrix. The exact tensor is kept.
  MetricLieAlgebra with_gram(Matrix gram) const;

 private:
  std::vector<std::string> labels_;
  StructureTensor st_;
  Matrix gram_;
  std::optional<ExactStructureTensor> exact_;
};

/// Re-expresses L in the basis f_a = sum_i P(i,a) e_i. The Gram becomes
/// P^T G P. The exact tensor is dropped unless P is the identity.
MetricLieAlgebra change_basis(const MetricLieAlgebra& L, const Matrix& P,
                              std::vector<std::string> labels = {});

/// Default labels e0, e1, ...
std::vector<std::string> default_labels(std::size_t dim);

}  // namespace qelie
