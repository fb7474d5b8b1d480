#pragma once

#include <string>
#include <utility>
#include <vector>

#include "qelie/metric_lie_algebra.hpp"
#include "qelie/subspace.hpp"

namespace qelie {

/// Matrix of ad_x in the declared basis: ad_matrix(L, x) * y = [x, y].
Matrix ad_matrix(const MetricLieAlgebra& L, const Vector& x);
Matrix ad_matrix(const MetricLieAlgebra& L, std::size_t i);

/// Largest Jacobi defect over basis triples. Uses the exact tensor when present,
/// in which case the result is exactly 0 whenever Jacobi holds.
double jacobi_residual(const MetricLieAlgebra& L);

/// True iff |tr ad_{e_i}| <= tol for every basis vector. Exact comparison with 0
/// in rational mode.
bool is_unimodular(const MetricLieAlgebra& L, double tol = kDefaultTol);
/// Largest |tr ad_{e_i}|.
double max_ad_trace(const MetricLieAlgebra& L);

enum class SeriesKind { Derived, LowerCentral };
enum class SeriesVerdict { Nilpotent, Solvable, Neither };

struct SeriesReport {
  SeriesKind kind;
  std::vector<Subspace> terms;  // terms[0] is the whole algebra
  SeriesVerdict verdict;
  int length = 0;  // nilpotency step or derived length; 0 for Neither

  std::vector<std::size_t> dims() const;
};

/// [A, B] = span{[a, b]}.
Subspace bracket_span(const MetricLieAlgebra& L, const Subspace& A, const Subspace& B,
                      double tol = kDefaultTol);

SeriesReport series(const MetricLieAlgebra& L, SeriesKind kind, double tol = kDefaultTol);
bool is_nilpotent(const MetricLieAlgebra& L, double tol = kDefaultTol);
bool is_solvable(const MetricLieAlgebra& L, double tol = kDefaultTol);
bool is_abelian(const MetricLieAlgebra& L, double tol = kDefaultTol);

/// {x : ad_x = 0}.
Subspace center(const MetricLieAlgebra& L, double tol = kDefaultTol);

/// Nilradical of a solvable algebra as the set of ad-nilpotent elements.
///
/// x is ad-nilpotent iff tr(ad_x Y) = 0 for every Y in the unital associative
/// algebra generated by ad(L); for solvable L that algebra is triangularizable,
/// so the condition is linear in x. The result is checked to be a nilpotent
/// ideal containing [L, L]; Errc::VerificationFailed otherwise.
/// Throws Errc::NotSolvable when L is not solvable.
Subspace nilradical_solvable(const MetricLieAlgebra& L, double tol = kDefaultTol);

/// B[i][j] = tr(ad_{e_i} ad_{e_j}).
Matrix killing_form(const MetricLieAlgebra& L);

/// H in `a` with g(H, a) = tr ad_a for all a in `a`.
/// Throws Errc::SplitNotOrthogonal unless a and n are g-orthogonal and span L.
Vector mean_curvature_vector(const MetricLieAlgebra& L, const Subspace& a, const Subspace& n,
                             double tol = kDefaultTol);

/// Largest defect of D[x,y] = [Dx,y] + [x,Dy] over basis pairs.
double derivation_defect(const MetricLieAlgebra& L, const Matrix& D);
bool is_derivation(const MetricLieAlgebra& L, const Matrix& D, double tol = kDefaultTol);

/// Adjoint of A for the inner product `gram`: G^{-1} A^T G.
Matrix metric_adjoint(const Matrix& A, const Matrix& gram);
/// (A + A^#) / 2 with the adjoint taken for `gram` (identity by default).
Matrix symmetric_part(const Matrix& A);
Matrix symmetric_part(const Matrix& A, const Matrix& gram);

/// Cholesky change of basis: Q upper triangular with Q^T G Q = I, and the
/// algebra expressed in the orthonormal basis f_a = sum_i Q(i,a) e_i.
struct OrthonormalFrame {
  Matrix Q;
  MetricLieAlgebra algebra;
};
OrthonormalFrame orthonormal_frame(const MetricLieAlgebra& L);

/// Orthonormal basis adapted to the grading n_1 = [n,n]^perp,
/// n_2 = [n,[n,n]]^perp inside [n,n], ... . Columns of `basis` are coordinates
/// in the declared basis, ordered grade by grade.
struct GradedBasis {
  Matrix basis;
  std::vector<Subspace> grading;
  std::vector<std::size_t> grade_dims() const;
};
/// Throws Errc::NotNilpotent, or Errc::VerificationFailed if
/// g([e_i,e_j],e_i) = 0 fails in the constructed frame.
GradedBasis graded_orthonormal_basis(const MetricLieAlgebra& L, double tol = kDefaultTol);

/// max |g([e_i,e_j],e_i)| over the columns of `basis`.
double graded_defect(const MetricLieAlgebra& L, const Matrix& basis);

/// Restricts L to a subalgebra S using a g-orthonormal basis of S.
/// Throws Errc::VerificationFailed if S is not closed under the bracket.
MetricLieAlgebra restrict_to(const MetricLieAlgebra& L, const Subspace& S, double tol = kDefaultTol,
                             Matrix* basis_out = nullptr);

std::string to_string(SeriesVerdict v);

}  // namespace qelie
