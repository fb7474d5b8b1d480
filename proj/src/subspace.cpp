#include "qelie/subspace.hpp"

#include <algorithm>
#include <cmath>

namespace qelie {

namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

// Rows of `rows` are an orthonormal basis; returns the canonical basis as columns.
MatrixXd canonicalize(MatrixXd rows, double tol) {
  const Eigen::Index r = rows.rows(), n = rows.cols();
  if (r == 0) return MatrixXd(n, 0);
  Eigen::Index lead = 0;
  for (Eigen::Index c = 0; c < n && lead < r; ++c) {
    Eigen::Index piv = lead;
    double best = std::abs(rows(lead, c));
    for (Eigen::Index i = lead + 1; i < r; ++i)
      if (std::abs(rows(i, c)) > best) best = std::abs(rows(i, c)), piv = i;
    if (best <= tol) continue;
    rows.row(lead).swap(rows.row(piv));
    rows.row(lead) /= rows(lead, c);
    for (Eigen::Index i = 0; i < r; ++i)
      if (i != lead) rows.row(i) -= rows(i, c) * rows.row(lead);
    ++lead;
  }
  MatrixXd B = rows.topRows(lead).transpose();
  for (int pass = 0; pass < 2; ++pass)
    for (Eigen::Index j = 0; j < B.cols(); ++j) {
      for (Eigen::Index i = 0; i < j; ++i) B.col(j) -= B.col(i).dot(B.col(j)) * B.col(i);
      B.col(j).normalize();
    }
  return B;
}

}  // namespace

Subspace Subspace::span(const MatrixXd& columns, double tol) {
  Subspace s(static_cast<std::size_t>(columns.rows()));
  if (columns.cols() == 0 || columns.rows() == 0) return s;
  Eigen::JacobiSVD<MatrixXd> svd(columns, Eigen::ComputeThinU);
  const auto& sv = svd.singularValues();
  const double thr = tol * std::max(1.0, sv.size() ? sv(0) : 0.0);
  Eigen::Index rank = 0;
  while (rank < sv.size() && sv(rank) > thr) ++rank;
  if (rank == 0) return s;
  s.basis_ = canonicalize(svd.matrixU().leftCols(rank).transpose(), 1e-10);
  if (s.basis_.cols() != rank) s.basis_ = svd.matrixU().leftCols(rank);
  return s;
}

Subspace Subspace::whole(std::size_t n) {
  Subspace s(n);
  s.basis_ = MatrixXd::Identity(n, n);
  return s;
}

Subspace Subspace::null_space(const MatrixXd& A, double tol) {
  const Eigen::Index n = A.cols();
  if (A.rows() == 0) return whole(static_cast<std::size_t>(n));
  Eigen::JacobiSVD<MatrixXd> svd(A, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double thr = tol * std::max(1.0, sv.size() ? sv(0) : 0.0);
  Eigen::Index rank = 0;
  while (rank < sv.size() && sv(rank) > thr) ++rank;
  if (rank == n) return Subspace(static_cast<std::size_t>(n));
  return span(svd.matrixV().rightCols(n - rank), 1e-12);
}

double Subspace::distance(const VectorXd& v) const {
  if (dim() == 0) return v.norm();
  return (v - basis_ * (basis_.transpose() * v)).norm();
}

bool Subspace::contains(const VectorXd& v, double tol) const {
  return distance(v) <= tol * std::max(1.0, v.norm());
}

bool Subspace::contains(const Subspace& other, double tol) const {
  for (Eigen::Index j = 0; j < other.basis_.cols(); ++j)
    if (!contains(VectorXd(other.basis_.col(j)), tol)) return false;
  return true;
}

bool Subspace::equals(const Subspace& other, double tol) const {
  return dim() == other.dim() && ambient_dim() == other.ambient_dim() && contains(other, tol);
}

Subspace sum(const Subspace& a, const Subspace& b, double tol) {
  MatrixXd cols(a.ambient_dim(), a.dim() + b.dim());
  cols << a.basis(), b.basis();
  return Subspace::span(cols, tol);
}

Subspace orthogonal_complement(const Subspace& S, const MatrixXd& gram, double tol, const Subspace* within) {
  const Subspace W = within ? *within : Subspace::whole(S.ambient_dim());
  if (S.dim() == 0 || W.dim() == 0) return W;
  const MatrixXd M = S.basis().transpose() * gram * W.basis();
  const Subspace coeffs = Subspace::null_space(M, tol);
  return Subspace::span(W.basis() * coeffs.basis(), tol);
}

MatrixXd metric_orthonormal_basis(const Subspace& S, const MatrixXd& gram) {
  MatrixXd B = S.basis();
  for (int pass = 0; pass < 2; ++pass)
    for (Eigen::Index j = 0; j < B.cols(); ++j) {
      for (Eigen::Index i = 0; i < j; ++i) B.col(j) -= B.col(i).dot(gram * B.col(j)) * B.col(i);
      B.col(j) /= std::sqrt(B.col(j).dot(gram * B.col(j)));
    }
  return B;
}

}  // namespace qelie
