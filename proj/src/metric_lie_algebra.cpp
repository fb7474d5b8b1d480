#include "qelie/metric_lie_algebra.hpp"

#include <cmath>
#include <set>

#include "qelie/error.hpp"

namespace qelie {

MetricLieAlgebra::MetricLieAlgebra(std::vector<std::string> labels, StructureTensor st, Matrix gram,
                                   std::optional<ExactStructureTensor> exact)
    : labels_(std::move(labels)), st_(std::move(st)), gram_(std::move(gram)), exact_(std::move(exact)) {
  const std::size_t n = st_.dim();
  if (labels_.empty()) labels_ = default_labels(n);
  if (labels_.size() != n) throw Error(Errc::DimensionMismatch, "label count differs from dimension");
  if (static_cast<std::size_t>(gram_.rows()) != n || static_cast<std::size_t>(gram_.cols()) != n)
    throw Error(Errc::DimensionMismatch, "Gram matrix must be " + std::to_string(n) + "x" + std::to_string(n));
  if (exact_ && exact_->dim() != n) throw Error(Errc::DimensionMismatch, "exact tensor dimension");
  if (antisymmetry_defect(st_) > 1e-12) throw Error(Errc::InvalidTensor, "structure constants not antisymmetric");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k)
      if (st_(i, i, k) != 0.0) throw Error(Errc::InvalidTensor, "[e_i, e_i] must vanish");
  if (!gram_.allFinite()) throw Error(Errc::GramNotPositiveDefinite, "Gram matrix has non-finite entries");
  if ((gram_ - gram_.transpose()).cwiseAbs().maxCoeff() > 1e-12 * (1.0 + gram_.cwiseAbs().maxCoeff()))
    throw Error(Errc::GramNotPositiveDefinite, "Gram matrix not symmetric");
  gram_ = (gram_ + gram_.transpose()) / 2;
  if (n > 0) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(gram_, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() <= 0.0)
      throw Error(Errc::GramNotPositiveDefinite, "Gram matrix has a non-positive eigenvalue");
  }
  std::set<std::string> seen(labels_.begin(), labels_.end());
  if (seen.size() != labels_.size()) throw Error(Errc::InvalidTensor, "duplicate basis labels");
}

MetricLieAlgebra::MetricLieAlgebra(std::vector<std::string> labels, StructureTensor st,
                                   std::optional<ExactStructureTensor> exact)
    : MetricLieAlgebra(std::move(labels), st, Matrix::Identity(st.dim(), st.dim()), std::move(exact)) {}

MetricLieAlgebra MetricLieAlgebra::from_exact(std::vector<std::string> labels, const ExactStructureTensor& st,
                                              Matrix gram) {
  for (std::size_t i = 0; i < st.dim(); ++i)
    for (std::size_t j = 0; j < st.dim(); ++j)
      for (std::size_t k = 0; k < st.dim(); ++k)
        if (st(i, j, k) != -st(j, i, k))
          throw Error(Errc::InvalidTensor, "structure constants not antisymmetric");
  return MetricLieAlgebra(std::move(labels), to_float(st), std::move(gram), st);
}

MetricLieAlgebra MetricLieAlgebra::from_exact(std::vector<std::string> labels, const ExactStructureTensor& st) {
  return from_exact(std::move(labels), st, Matrix::Identity(st.dim(), st.dim()));
}

Vector MetricLieAlgebra::bracket(const Vector& x, const Vector& y) const {
  const std::size_t n = dim();
  if (static_cast<std::size_t>(x.size()) != n || static_cast<std::size_t>(y.size()) != n)
    throw Error(Errc::DimensionMismatch, "vector length differs from dimension");
  Vector out = Vector::Zero(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (x(i) == 0.0) continue;
    for (std::size_t j = 0; j < n; ++j) {
      if (y(j) == 0.0) continue;
      const double w = x(i) * y(j);
      for (std::size_t k = 0; k < n; ++k) out(k) += w * st_(i, j, k);
    }
  }
  return out;
}

Vector MetricLieAlgebra::bracket(std::size_t i, std::size_t j) const {
  Vector out(dim());
  for (std::size_t k = 0; k < dim(); ++k) out(k) = st_(i, j, k);
  return out;
}

MetricLieAlgebra MetricLieAlgebra::with_gram(Matrix gram) const {
  return MetricLieAlgebra(labels_, st_, std::move(gram), exact_);
}

MetricLieAlgebra change_basis(const MetricLieAlgebra& L, const Matrix& P, std::vector<std::string> labels) {
  const std::size_t n = L.dim();
  if (static_cast<std::size_t>(P.rows()) != n || static_cast<std::size_t>(P.cols()) != n)
    throw Error(Errc::DimensionMismatch, "change of basis must be square of the algebra dimension");
  Eigen::FullPivLU<Matrix> lu(P);
  if (!lu.isInvertible()) throw Error(Errc::DimensionMismatch, "change of basis is singular");
  const Matrix Pinv = lu.inverse();
  StructureTensor st(n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b) {
      Vector v = Pinv * L.bracket(Vector(P.col(a)), Vector(P.col(b)));
      for (std::size_t c = 0; c < n; ++c) st.set_bracket(a, b, c, v(c));
    }
  Matrix gram = P.transpose() * L.gram() * P;
  gram = (gram + gram.transpose()) / 2;
  if (labels.empty()) labels = P.isIdentity(0.0) ? L.labels() : default_labels(n);
  std::optional<ExactStructureTensor> exact;
  if (P.isIdentity(0.0)) exact = L.exact();
  return MetricLieAlgebra(std::move(labels), std::move(st), std::move(gram), std::move(exact));
}

std::vector<std::string> default_labels(std::size_t dim) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < dim; ++i) out.push_back("e" + std::to_string(i));
  return out;
}

}  // namespace qelie
