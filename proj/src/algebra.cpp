#include "qelie/algebra.hpp"

#include <algorithm>
#include <cmath>

#include "qelie/error.hpp"

namespace qelie {

Matrix ad_matrix(const MetricLieAlgebra& L, const Vector& x) {
  const std::size_t n = L.dim();
  if (static_cast<std::size_t>(x.size()) != n) throw Error(Errc::DimensionMismatch, "vector length differs from dimension");
  const auto& c = L.tensor();
  Matrix ad = Matrix::Zero(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    if (x(i) == 0.0) continue;
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) ad(k, j) += x(i) * c(i, j, k);
  }
  return ad;
}

Matrix ad_matrix(const MetricLieAlgebra& L, std::size_t i) {
  if (i >= L.dim()) throw Error(Errc::DimensionMismatch, "basis index out of range");
  return ad_matrix(L, Vector(Vector::Unit(L.dim(), i)));
}

double jacobi_residual(const MetricLieAlgebra& L) {
  if (L.exact()) return jacobi_residual(*L.exact()).get_d();
  return jacobi_residual(L.tensor());
}

double max_ad_trace(const MetricLieAlgebra& L) {
  const std::size_t n = L.dim();
  double worst = 0;
  for (std::size_t i = 0; i < n; ++i) {
    double t = 0;
    for (std::size_t j = 0; j < n; ++j) t += L.tensor()(i, j, j);
    worst = std::max(worst, std::abs(t));
  }
  return worst;
}

bool is_unimodular(const MetricLieAlgebra& L, double tol) {
  if (const auto& ex = L.exact()) {
    for (std::size_t i = 0; i < L.dim(); ++i) {
      mpq_class t = 0;
      for (std::size_t j = 0; j < L.dim(); ++j) t += (*ex)(i, j, j);
      if (t != 0) return false;
    }
    return true;
  }
  return max_ad_trace(L) <= tol;
}

std::vector<std::size_t> SeriesReport::dims() const {
  std::vector<std::size_t> out;
  for (const auto& t : terms) out.push_back(t.dim());
  return out;
}

Subspace bracket_span(const MetricLieAlgebra& L, const Subspace& A, const Subspace& B, double tol) {
  const std::size_t n = L.dim();
  Matrix cols(n, A.dim() * B.dim());
  Eigen::Index c = 0;
  for (std::size_t i = 0; i < A.dim(); ++i)
    for (std::size_t j = 0; j < B.dim(); ++j)
      cols.col(c++) = L.bracket(Vector(A.basis().col(i)), Vector(B.basis().col(j)));
  return Subspace::span(cols, tol);
}

namespace {

std::vector<Subspace> run_series(const MetricLieAlgebra& L, SeriesKind kind, double tol) {
  std::vector<Subspace> terms{Subspace::whole(L.dim())};
  while (terms.back().dim() > 0) {
    const Subspace& last = terms.back();
    Subspace next = kind == SeriesKind::Derived ? bracket_span(L, last, last, tol)
                                                : bracket_span(L, terms.front(), last, tol);
    if (next.dim() >= last.dim()) break;
    terms.push_back(std::move(next));
  }
  return terms;
}

}  // namespace

SeriesReport series(const MetricLieAlgebra& L, SeriesKind kind, double tol) {
  SeriesReport r{kind, run_series(L, kind, tol), SeriesVerdict::Neither, 0};
  const bool terminates = r.terms.back().dim() == 0;
  if (kind == SeriesKind::LowerCentral && terminates) {
    r.verdict = SeriesVerdict::Nilpotent;
    r.length = static_cast<int>(r.terms.size()) - 1;
  } else if (kind == SeriesKind::Derived && terminates) {
    r.verdict = SeriesVerdict::Solvable;
    r.length = static_cast<int>(r.terms.size()) - 1;
  } else if (kind == SeriesKind::LowerCentral) {
    auto derived = run_series(L, SeriesKind::Derived, tol);
    if (derived.back().dim() == 0) {
      r.verdict = SeriesVerdict::Solvable;
      r.length = static_cast<int>(derived.size()) - 1;
    }
  }
  return r;
}

bool is_nilpotent(const MetricLieAlgebra& L, double tol) {
  return run_series(L, SeriesKind::LowerCentral, tol).back().dim() == 0;
}

bool is_solvable(const MetricLieAlgebra& L, double tol) {
  return run_series(L, SeriesKind::Derived, tol).back().dim() == 0;
}

bool is_abelian(const MetricLieAlgebra& L, double tol) {
  return L.tensor().data().empty() ||
         std::all_of(L.tensor().data().begin(), L.tensor().data().end(), [&](double v) { return std::abs(v) <= tol; });
}

Subspace center(const MetricLieAlgebra& L, double tol) {
  const std::size_t n = L.dim();
  const auto& c = L.tensor();
  Matrix A(n * n, n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t i = 0; i < n; ++i) A(j * n + k, i) = c(i, j, k);
  return Subspace::null_space(A, tol);
}

Subspace nilradical_solvable(const MetricLieAlgebra& L, double tol) {
  if (!is_solvable(L, tol)) throw Error(Errc::NotSolvable, "nilradical requested for a non-solvable algebra");
  const std::size_t n = L.dim();
  if (n == 0) return Subspace(0);
  std::vector<Matrix> ad(n);
  double scale = 1.0;
  for (std::size_t i = 0; i < n; ++i) {
    ad[i] = ad_matrix(L, i);
    scale = std::max(scale, ad[i].norm());
  }

  // Frobenius-orthonormal basis of the unital associative algebra generated by ad(L).
  std::vector<Matrix> alg;
  auto try_add = [&](Matrix Y) {
    const double before = Y.norm();
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& B : alg) Y -= (B.cwiseProduct(Y)).sum() * B;
    if (Y.norm() <= tol * std::max(1.0, before)) return;
    alg.push_back(Y / Y.norm());
  };
  try_add(Matrix::Identity(n, n));
  for (std::size_t q = 0; q < alg.size() && alg.size() < n * n; ++q)
    for (std::size_t i = 0; i < n; ++i) try_add(ad[i] * alg[q]);

  Matrix R(alg.size(), n);
  for (std::size_t m = 0; m < alg.size(); ++m)
    for (std::size_t i = 0; i < n; ++i) R(m, i) = (ad[i] * alg[m]).trace() / scale;
  Subspace nil = Subspace::null_space(R, tol);

  const Subspace whole = Subspace::whole(n);
  const double vtol = std::sqrt(tol);
  if (!nil.contains(bracket_span(L, whole, whole, tol), vtol))
    throw Error(Errc::VerificationFailed, "nilradical candidate does not contain [s,s]");
  if (!nil.contains(bracket_span(L, whole, nil, tol), vtol))
    throw Error(Errc::VerificationFailed, "nilradical candidate is not an ideal");
  if (nil.dim() > 0 && !is_nilpotent(restrict_to(L, nil, vtol), tol))
    throw Error(Errc::VerificationFailed, "nilradical candidate is not nilpotent");
  return nil;
}

Matrix killing_form(const MetricLieAlgebra& L) {
  const std::size_t n = L.dim();
  std::vector<Matrix> ad(n);
  for (std::size_t i = 0; i < n; ++i) ad[i] = ad_matrix(L, i);
  Matrix B(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) B(i, j) = B(j, i) = (ad[i] * ad[j]).trace();
  return B;
}

Vector mean_curvature_vector(const MetricLieAlgebra& L, const Subspace& a, const Subspace& n, double tol) {
  const Matrix& G = L.gram();
  if (a.ambient_dim() != L.dim() || n.ambient_dim() != L.dim())
    throw Error(Errc::DimensionMismatch, "split subspaces live in the wrong space");
  if (a.dim() + n.dim() != L.dim() || sum(a, n, tol).dim() != L.dim())
    throw Error(Errc::SplitNotOrthogonal, "a and n do not span the algebra");
  if (a.dim() > 0 && n.dim() > 0 &&
      (a.basis().transpose() * G * n.basis()).cwiseAbs().maxCoeff() > tol * std::max(1.0, G.norm()))
    throw Error(Errc::SplitNotOrthogonal, "a is not g-orthogonal to n");
  if (a.dim() == 0) return Vector::Zero(L.dim());
  const Matrix& A = a.basis();
  Vector t(A.cols());
  for (Eigen::Index p = 0; p < A.cols(); ++p) t(p) = ad_matrix(L, Vector(A.col(p))).trace();
  const Matrix M = A.transpose() * G * A;
  return A * M.ldlt().solve(t);
}

double derivation_defect(const MetricLieAlgebra& L, const Matrix& D) {
  const std::size_t n = L.dim();
  if (static_cast<std::size_t>(D.rows()) != n || static_cast<std::size_t>(D.cols()) != n)
    throw Error(Errc::DimensionMismatch, "derivation candidate has the wrong shape");
  double worst = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      Vector lhs = D * L.bracket(i, j);
      Vector rhs = L.bracket(Vector(D.col(i)), Vector(Vector::Unit(n, j))) +
                   L.bracket(Vector(Vector::Unit(n, i)), Vector(D.col(j)));
      worst = std::max(worst, (lhs - rhs).cwiseAbs().maxCoeff());
    }
  return worst;
}

bool is_derivation(const MetricLieAlgebra& L, const Matrix& D, double tol) {
  return derivation_defect(L, D) <= tol;
}

Matrix metric_adjoint(const Matrix& A, const Matrix& gram) {
  return gram.ldlt().solve(A.transpose() * gram);
}

Matrix symmetric_part(const Matrix& A) { return (A + A.transpose()) / 2; }

Matrix symmetric_part(const Matrix& A, const Matrix& gram) { return (A + metric_adjoint(A, gram)) / 2; }

OrthonormalFrame orthonormal_frame(const MetricLieAlgebra& L) {
  const std::size_t n = L.dim();
  if (L.gram().isIdentity(0.0)) return {Matrix::Identity(n, n), L};
  Eigen::LLT<Matrix> llt(L.gram());
  if (llt.info() != Eigen::Success) throw Error(Errc::GramNotPositiveDefinite, "Cholesky factorization failed");
  Matrix Lc = llt.matrixL();
  Matrix Q = Lc.transpose().triangularView<Eigen::Upper>().solve(Matrix::Identity(n, n));
  MetricLieAlgebra framed = change_basis(L, Q, L.labels());
  return {Q, framed.with_gram(Matrix::Identity(n, n))};
}

std::vector<std::size_t> GradedBasis::grade_dims() const {
  std::vector<std::size_t> out;
  for (const auto& g : grading) out.push_back(g.dim());
  return out;
}

double graded_defect(const MetricLieAlgebra& L, const Matrix& basis) {
  double worst = 0;
  for (Eigen::Index a = 0; a < basis.cols(); ++a)
    for (Eigen::Index b = 0; b < basis.cols(); ++b) {
      const Vector ea = basis.col(a);
      worst = std::max(worst, std::abs(L.inner(L.bracket(ea, Vector(basis.col(b))), ea)));
    }
  return worst;
}

GradedBasis graded_orthonormal_basis(const MetricLieAlgebra& L, double tol) {
  auto terms = run_series(L, SeriesKind::LowerCentral, tol);
  if (terms.back().dim() != 0) throw Error(Errc::NotNilpotent, "graded basis needs a nilpotent algebra");
  GradedBasis out;
  out.basis = Matrix(L.dim(), 0);
  for (std::size_t p = 0; p + 1 < terms.size(); ++p) {
    Subspace grade = orthogonal_complement(terms[p + 1], L.gram(), tol, &terms[p]);
    Matrix B = metric_orthonormal_basis(grade, L.gram());
    Matrix joined(L.dim(), out.basis.cols() + B.cols());
    joined << out.basis, B;
    out.basis = joined;
    out.grading.push_back(std::move(grade));
  }
  double scale = 1.0;
  for (double v : L.tensor().data()) scale = std::max(scale, std::abs(v));
  if (graded_defect(L, out.basis) > tol * scale * 10)
    throw Error(Errc::VerificationFailed, "graded frame violates g([e_i,e_j],e_i) = 0");
  return out;
}

MetricLieAlgebra restrict_to(const MetricLieAlgebra& L, const Subspace& S, double tol, Matrix* basis_out) {
  const Matrix B = metric_orthonormal_basis(S, L.gram());
  const std::size_t k = S.dim();
  StructureTensor st(k);
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = a + 1; b < k; ++b) {
      const Vector v = L.bracket(Vector(B.col(a)), Vector(B.col(b)));
      const Vector coords = B.transpose() * L.gram() * v;
      if ((B * coords - v).norm() > tol * std::max(1.0, v.norm()))
        throw Error(Errc::VerificationFailed, "subspace is not closed under the bracket");
      for (std::size_t c = 0; c < k; ++c) st.set_bracket(a, b, c, coords(c));
    }
  if (basis_out) *basis_out = B;
  return MetricLieAlgebra(default_labels(k), std::move(st));
}

std::string to_string(SeriesVerdict v) {
  switch (v) {
    case SeriesVerdict::Nilpotent: return "nilpotent";
    case SeriesVerdict::Solvable: return "solvable";
    case SeriesVerdict::Neither: return "neither";
  }
  return "neither";
}

}  // namespace qelie
