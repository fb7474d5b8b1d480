#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qelie/metric_lie_algebra.hpp"
#include "qelie/subspace.hpp"

namespace qelie {

/// A totally left-invariant solution of Ric + 1/2 L_X g - (1/m) X* (x) X* = lambda g.
struct QESolution {
  double lambda = 0.0;
  double m = 1.0;
  Vector X;
  double residual = 0.0;
  bool X_killing = false;
  bool X_central = false;
  bool einstein = false;
};

/// F with g(F x, y) = (1/m) g(X,x) g(X,y); rank at most one.
struct QEOperator {
  Matrix F;
};

struct Check {
  std::string name;
  bool passed = false;
  double residual = 0.0;
  double tolerance = 0.0;
  std::string quantity;
  std::string citation;
};

struct VerdictReport {
  std::string title;
  std::vector<Check> checks;
  std::vector<std::string> notes;

  bool all_passed() const;
  const Check* find(const std::string& name) const;
};

/// -(G ad_X + ad_X^T G): the Lie derivative of g along X as a bilinear form.
Matrix lie_derivative_metric(const MetricLieAlgebra& L, const Vector& X);

/// {x : ad_x + ad_x^# = 0}.
Subspace killing_subalgebra(const MetricLieAlgebra& L, double tol = kDefaultTol);

/// Ric + 1/2 L_X g - (1/m) X* (x) X* with X* = G X. Throws Errc::ZeroM.
Matrix bakry_emery(const MetricLieAlgebra& L, const Vector& X, double m);

/// max |bakry_emery - lambda G|.
double qe_residual(const MetricLieAlgebra& L, const Vector& X, double m, double lambda);

/// All totally left-invariant solutions with X Killing.
///
/// One Ricci eigenvalue cluster gives the Einstein solution X = 0. Clusters of
/// sizes (n-1, 1) with values (lambda, mu) give X = +-sqrt(m (mu - lambda)) u for
/// the unit eigenvector u, kept when m (mu - lambda) >= -tol, u is Killing and the
/// Bakry-Emery residual is within tol. For n = 2 both splittings are tried.
/// Returns an empty list when nothing qualifies. Throws Errc::ZeroM.
std::vector<QESolution> qe_solve(const MetricLieAlgebra& L, double m, double tol = kDefaultTol);

/// First solution with X != 0, if any.
std::optional<QESolution> first_nontrivial(const std::vector<QESolution>& sols);

QEOperator qe_operator(const MetricLieAlgebra& L, const QESolution& sol);

/// Multiplicities (1, n-1), lambda < 0, one-dimensional center, center inside
/// [n,n] and X central, each with its residual.
VerdictReport verify_two_eigenvalue_structure(const MetricLieAlgebra& L, const QESolution& sol,
                                              double tol = kDefaultTol);

/// `basis` columns: x, y, z, w_1..w_t (g-orthonormal, declared coordinates).
/// Checks [x,y] = c z, [x,w_i] = [y,w_i] = 0, [w_i,w_j] in W + z, z central and
/// lambda = -c^2/2 against qe_solve. Throws Errc::BadPartition.
VerdictReport verify_nilpotent_structure_theorem(const MetricLieAlgebra& L, const Matrix& basis,
                                                 double tol = kDefaultTol);

/// Searches the declared basis for a g-orthonormal partition (x, y, z, w...)
/// with z spanning the center, [x,y] a nonzero multiple of z and x, y commuting
/// with every other basis vector. Returns the basis columns in that order.
std::optional<Matrix> find_kirillov_basis(const MetricLieAlgebra& L, double tol = kDefaultTol);

/// Conditions (i)-(iv) for s = a + n with ad_a normal. The quasi-Einstein
/// constant comes from the nilradical's own solution. Throws Errc::AdANotNormal,
/// Errc::SplitInvalid, Errc::NotUnimodular, Errc::PreconditionFailed (flat).
VerdictReport verify_solvable_conditions(const MetricLieAlgebra& L, const Subspace& a, const Subspace& n,
                                         double m, double tol = kDefaultTol);

/// ad_a restricted to a Heisenberg nilradical is diag(t_1, -t_1, ..., t_s, -t_s, 0)
/// in its (reordered) basis {x_i, y_i, z}, and dim a <= s.
/// The columns of `n.basis()` must be a g-orthonormal Heisenberg basis, in any
/// order; Errc::BasisNotHeisenberg otherwise.
VerdictReport verify_heisenberg_extension_form(const MetricLieAlgebra& L, const Subspace& a,
                                               const Matrix& n_basis, double tol = kDefaultTol);

/// g-orthogonal split (a, n) with n the nilradical. Throws Errc::NotSolvable.
struct StandardSplit {
  Subspace a;
  Subspace n;
};
StandardSplit nilradical_split(const MetricLieAlgebra& L, double tol = kDefaultTol);

}  // namespace qelie
