#pragma once

#include <string>
#include <vector>

#include "qelie/metric_lie_algebra.hpp"
#include "qelie/subspace.hpp"

namespace qelie {

/// Levi-Civita coefficients in an orthonormal frame:
/// gamma(i,j,k) = coefficient of e_k in nabla_{e_i} e_j.
class ConnectionCoefficients {
 public:
  explicit ConnectionCoefficients(std::size_t dim) : dim_(dim), g_(dim * dim * dim, 0.0) {}
  std::size_t dim() const { return dim_; }
  double operator()(std::size_t i, std::size_t j, std::size_t k) const { return g_[(i * dim_ + j) * dim_ + k]; }
  double& operator()(std::size_t i, std::size_t j, std::size_t k) { return g_[(i * dim_ + j) * dim_ + k]; }

 private:
  std::size_t dim_;
  std::vector<double> g_;
};

enum class RicciFormula { Oracle, Nilpotent, Solvable, StandardSplit };

struct CurvatureReport {
  Matrix ricci;               // bilinear form Ric(e_i, e_j) in the declared basis
  Vector eigenvalues;         // of the Ricci operator G^{-1} ricci, ascending
  Matrix eigenvectors;        // columns g-orthonormal, declared-basis coordinates
  double scalar = 0.0;        // tr(G^{-1} ricci)
  bool flat = false;
  RicciFormula provenance = RicciFormula::Oracle;
};

/// Koszul formula gamma(i,j,k) = (c_ij^k - c_jk^i + c_ki^j) / 2.
/// `L` must have identity Gram (use orthonormal_frame first).
ConnectionCoefficients connection_coefficients(const MetricLieAlgebra& L);

/// Max |gamma(i,j,k) + gamma(i,k,j)|.
double metric_compatibility_defect(const ConnectionCoefficients& gamma);
/// Max |gamma(i,j,k) - gamma(j,i,k) - c_ij^k|.
double torsion_defect(const ConnectionCoefficients& gamma, const MetricLieAlgebra& L);

/// Frobenius norm of R(e_i,e_j)e_k over an orthonormal frame of L.
double curvature_tensor_norm(const MetricLieAlgebra& L);

/// Ricci tensor from the full Riemann tensor,
/// R(X,Y)Z = nabla_X nabla_Y Z - nabla_Y nabla_X Z - nabla_[X,Y] Z,
/// Ric(u,v) = sum_i g(R(e_i,u)v, e_i).
CurvatureReport ricci_oracle(const MetricLieAlgebra& L, double tol = kDefaultTol);

/// Ric(x,x) = -1/2 sum |g([x,e_k],e_j)|^2 + 1/4 sum g([e_k,e_j],x)^2 for nilpotent
/// algebras; off-diagonal entries by polarization. Throws Errc::NotNilpotent.
CurvatureReport ricci_nilpotent(const MetricLieAlgebra& L, double tol = kDefaultTol);

/// Unimodular solvable formulas on the split [s,s] + [s,s]^perp.
/// Throws Errc::NotUnimodular or Errc::NotSolvable.
CurvatureReport ricci_unimodular_solvable(const MetricLieAlgebra& L, double tol = kDefaultTol);

/// Formulas for s = a + n with n the nilradical and a its orthogonal complement,
/// including the [ad_a, ad_a^t] and mean curvature terms.
/// Throws Errc::SplitInvalid unless a is g-orthogonal to n and n is the nilradical.
CurvatureReport ricci_standard_split(const MetricLieAlgebra& L, const Subspace& a, const Subspace& n,
                                     double tol = kDefaultTol);

struct ScalarFlatness {
  double scalar;
  bool flat;
};
ScalarFlatness scalar_and_flatness(const MetricLieAlgebra& L, double tol = kDefaultTol);

/// Splits ascending eigenvalues into clusters: a new cluster starts whenever the
/// gap to the previous value exceeds 1e-7 * (1 + max |lambda|).
/// Returns the index groups, in ascending order of value.
std::vector<std::vector<std::size_t>> eigenvalue_clusters(const Vector& ascending);

std::string to_string(RicciFormula f);

}  // namespace qelie
