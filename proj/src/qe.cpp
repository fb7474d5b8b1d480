#include "qelie/qe.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "qelie/algebra.hpp"
#include "qelie/coefficient.hpp"
#include "qelie/curvature.hpp"
#include "qelie/error.hpp"

namespace qelie {

namespace {

double max_abs(const Matrix& M) { return M.size() ? M.cwiseAbs().maxCoeff() : 0.0; }

Check make_check(std::string name, bool passed, double residual, double tolerance, std::string quantity,
                 std::string citation) {
  return Check{std::move(name), passed, residual, tolerance, std::move(quantity), std::move(citation)};
}

Check residual_check(std::string name, double residual, double tol, std::string quantity, std::string citation) {
  const bool ok = residual <= tol;
  return make_check(std::move(name), ok, residual, tol, std::move(quantity), std::move(citation));
}

double tensor_scale(const MetricLieAlgebra& L) {
  double s = 1.0;
  for (double v : L.tensor().data()) s = std::max(s, std::abs(v));
  return s;
}

// Flips the sign so the largest-magnitude entry is positive (first one on ties).
Vector sign_normalized(Vector u) {
  Eigen::Index best = 0;
  for (Eigen::Index i = 1; i < u.size(); ++i)
    if (std::abs(u(i)) > std::abs(u(best)) + 1e-12) best = i;
  if (u.size() && u(best) < 0) u = -u;
  return u;
}

}  // namespace

bool VerdictReport::all_passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
}

const Check* VerdictReport::find(const std::string& name) const {
  for (const auto& c : checks)
    if (c.name == name) return &c;
  return nullptr;
}

Matrix lie_derivative_metric(const MetricLieAlgebra& L, const Vector& X) {
  const Matrix ad = ad_matrix(L, X);
  const Matrix& G = L.gram();
  return -(G * ad + ad.transpose() * G);
}

Subspace killing_subalgebra(const MetricLieAlgebra& L, double tol) {
  const std::size_t n = L.dim();
  Matrix A(n * n, n);
  for (std::size_t i = 0; i < n; ++i) {
    const Matrix M = lie_derivative_metric(L, Vector(Vector::Unit(n, i)));
    A.col(i) = Eigen::Map<const Vector>(M.data(), M.size());
  }
  return Subspace::null_space(A, tol);
}

Matrix bakry_emery(const MetricLieAlgebra& L, const Vector& X, double m) {
  if (m == 0.0) throw Error(Errc::ZeroM, "m must be nonzero");
  if (static_cast<std::size_t>(X.size()) != L.dim()) throw Error(Errc::DimensionMismatch, "X has the wrong length");
  const Vector Xb = L.gram() * X;
  Matrix be = ricci_oracle(L).ricci + 0.5 * lie_derivative_metric(L, X) - (Xb * Xb.transpose()) / m;
  return (be + be.transpose()) / 2;
}

double qe_residual(const MetricLieAlgebra& L, const Vector& X, double m, double lambda) {
  return max_abs(bakry_emery(L, X, m) - lambda * L.gram());
}

std::vector<QESolution> qe_solve(const MetricLieAlgebra& L, double m, double tol) {
  if (m == 0.0) throw Error(Errc::ZeroM, "m must be nonzero");
  std::vector<QESolution> out;
  const std::size_t n = L.dim();
  if (n == 0) return out;
  const auto rep = ricci_oracle(L, tol);
  const auto clusters = eigenvalue_clusters(rep.eigenvalues);
  const double accept = tol * (1.0 + max_abs(rep.ricci));
  const Subspace cen = center(L, tol);

  if (clusters.size() == 1) {
    const double lambda = rep.eigenvalues.mean();
    const Vector X = Vector::Zero(n);
    const double res = qe_residual(L, X, m, lambda);
    if (res <= accept) out.push_back({lambda, m, X, res, true, true, true});
    return out;
  }
  if (clusters.size() != 2) return out;

  struct Candidate {
    const std::vector<std::size_t>* big;
    std::size_t single;
  };
  std::vector<Candidate> cands;
  for (int s = 0; s < 2; ++s) {
    const auto& one = clusters[s];
    const auto& rest = clusters[1 - s];
    if (one.size() == 1 && rest.size() == n - 1) cands.push_back({&rest, one.front()});
  }
  if (n == 2 && cands.size() == 2) std::swap(cands[0], cands[1]);  // lower eigenvalue as lambda first

  const Subspace killing = killing_subalgebra(L, tol);
  for (const auto& c : cands) {
    double lambda = 0;
    for (auto i : *c.big) lambda += rep.eigenvalues(i);
    lambda /= static_cast<double>(c.big->size());
    const double mu = rep.eigenvalues(c.single);
    double s = m * (mu - lambda);
    if (s < -tol) continue;
    s = std::max(s, 0.0);
    const Vector u = sign_normalized(rep.eigenvectors.col(c.single));
    if (!killing.contains(u, std::sqrt(tol))) continue;
    const Vector X = std::sqrt(s) * u;
    const double res = qe_residual(L, X, m, lambda);
    if (res > accept) continue;
    const bool central = cen.contains(u, std::sqrt(tol));
    out.push_back({lambda, m, X, res, true, central, false});
    out.push_back({lambda, m, Vector(-X), qe_residual(L, -X, m, lambda), true, central, false});
  }
  return out;
}

std::optional<QESolution> first_nontrivial(const std::vector<QESolution>& sols) {
  for (const auto& s : sols)
    if (s.X.norm() > 0) return s;
  return std::nullopt;
}

QEOperator qe_operator(const MetricLieAlgebra& L, const QESolution& sol) {
  if (sol.m == 0.0) throw Error(Errc::ZeroM, "m must be nonzero");
  return {sol.X * sol.X.transpose() * L.gram() / sol.m};
}

VerdictReport verify_two_eigenvalue_structure(const MetricLieAlgebra& L, const QESolution& sol, double tol) {
  VerdictReport r;
  r.title = "two-eigenvalue structure";
  if (sol.X.norm() == 0.0) {
    r.notes.push_back("X = 0: structure checks are vacuous");
    return r;
  }
  const std::size_t n = L.dim();
  const auto rep = ricci_oracle(L, tol);
  const auto clusters = eigenvalue_clusters(rep.eigenvalues);
  std::vector<std::size_t> sizes;
  for (const auto& c : clusters) sizes.push_back(c.size());
  std::sort(sizes.begin(), sizes.end());
  const bool mult_ok = sizes == std::vector<std::size_t>{1, n - 1} || (n == 2 && sizes == std::vector<std::size_t>{1, 1});
  double spread = 0;
  for (const auto& c : clusters) spread = std::max(spread, rep.eigenvalues(c.back()) - rep.eigenvalues(c.front()));
  {
    std::ostringstream q;
    q << "Ricci eigenvalue multiplicities (";
    for (std::size_t i = 0; i < sizes.size(); ++i) q << (i ? ", " : "") << sizes[i];
    q << ") vs (1, " << n - 1 << ")";
    auto ck = make_check("multiplicities", mult_ok, spread, 1e-7 * (1 + rep.eigenvalues.cwiseAbs().maxCoeff()), q.str(),
                         "one eigenvalue of multiplicity one, another of multiplicity dim - 1");
    r.checks.push_back(ck);
  }
  r.checks.push_back(make_check("lambda-negative", sol.lambda < -tol, sol.lambda, tol, "lambda < 0",
                                "lambda < 0 for non-abelian nilpotent algebras"));
  const Subspace cen = center(L, tol);
  r.checks.push_back(make_check("center-dim-1", cen.dim() == 1, std::abs(double(cen.dim()) - 1.0), 0.0,
                                "dim center = " + std::to_string(cen.dim()), "one-dimensional center"));
  const Subspace whole = Subspace::whole(n);
  const Subspace derived = bracket_span(L, whole, whole, tol);
  double cres = 0;
  for (std::size_t j = 0; j < cen.dim(); ++j) cres = std::max(cres, derived.distance(Vector(cen.basis().col(j))));
  r.checks.push_back(residual_check("center-in-derived", cres, 100 * tol, "distance of center basis from [n,n]",
                                    "center contained in [n,n]"));
  const double xres = cen.distance(sol.X) / sol.X.norm();
  r.checks.push_back(residual_check("X-central", xres, 100 * tol, "relative distance of X from the center",
                                    "X lies in the center"));
  return r;
}

std::optional<Matrix> find_kirillov_basis(const MetricLieAlgebra& L, double tol) {
  const std::size_t n = L.dim();
  if (n < 3 || !L.gram().isIdentity(tol)) return std::nullopt;
  const Subspace cen = center(L, tol);
  if (cen.dim() != 1) return std::nullopt;
  std::size_t iz = n;
  for (std::size_t i = 0; i < n && iz == n; ++i)
    if (cen.contains(Vector(Vector::Unit(n, i)), std::sqrt(tol))) iz = i;
  if (iz == n) return std::nullopt;
  const double scale = tensor_scale(L);
  auto commutes_with_rest = [&](std::size_t i, std::size_t partner) {
    for (std::size_t k = 0; k < n; ++k)
      if (k != i && k != partner && L.bracket(i, k).cwiseAbs().maxCoeff() > tol * scale) return false;
    return true;
  };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      if (i == iz || j == iz) continue;
      Vector b = L.bracket(i, j);
      const double c = b(iz);
      b(iz) = 0;
      if (std::abs(c) <= tol * scale || b.cwiseAbs().maxCoeff() > tol * scale) continue;
      if (!commutes_with_rest(i, j) || !commutes_with_rest(j, i)) continue;
      std::vector<std::size_t> order{c > 0 ? i : j, c > 0 ? j : i, iz};
      for (std::size_t k = 0; k < n; ++k)
        if (k != i && k != j && k != iz) order.push_back(k);
      Matrix B = Matrix::Zero(n, n);
      for (std::size_t col = 0; col < n; ++col) B(order[col], col) = 1.0;
      return B;
    }
  return std::nullopt;
}

VerdictReport verify_nilpotent_structure_theorem(const MetricLieAlgebra& L, const Matrix& basis, double tol) {
  const std::size_t n = L.dim();
  if (static_cast<std::size_t>(basis.rows()) != n || static_cast<std::size_t>(basis.cols()) != n || n < 3)
    throw Error(Errc::BadPartition, "basis must be square with at least the three columns x, y, z");
  if (max_abs(basis.transpose() * L.gram() * basis - Matrix::Identity(n, n)) > std::sqrt(tol))
    throw Error(Errc::BadPartition, "basis columns are not g-orthonormal");
  const double stol = 100 * tol * tensor_scale(L);
  const Vector x = basis.col(0), y = basis.col(1), z = basis.col(2);
  VerdictReport r;
  r.title = "nilpotent structure theorem";

  const Vector xy = L.bracket(x, y);
  const double c = L.inner(xy, z);
  r.checks.push_back(make_check("xy-bracket", (xy - c * z).cwiseAbs().maxCoeff() <= stol && std::abs(c) > stol,
                                (xy - c * z).cwiseAbs().maxCoeff(), stol, "[x,y] - c z with c = " + format_number(c),
                                "[x,y] = c z"));
  double comm = 0, wres = 0;
  for (std::size_t i = 3; i < n; ++i) {
    const Vector w = basis.col(i);
    comm = std::max({comm, L.bracket(x, w).cwiseAbs().maxCoeff(), L.bracket(y, w).cwiseAbs().maxCoeff()});
    for (std::size_t j = i + 1; j < n; ++j) {
      const Vector b = L.bracket(w, Vector(basis.col(j)));
      wres = std::max({wres, std::abs(L.inner(b, x)), std::abs(L.inner(b, y))});
    }
  }
  r.checks.push_back(residual_check("xw-commute", comm, stol, "max |[x,w_i]|, |[y,w_i]|", "[x,w_i] = [y,w_i] = 0"));
  r.checks.push_back(residual_check("w-brackets", wres, stol, "max x/y component of [w_i,w_j]", "[w_i,w_j] in W + z"));
  r.checks.push_back(residual_check("z-central", max_abs(ad_matrix(L, z)), stol, "max |ad_z|", "z spans the center"));

  const auto sols = qe_solve(L, 1.0, tol);
  const auto sol = first_nontrivial(sols);
  const double expected = -0.5 * c * c;
  if (sol) {
    const double res = std::abs(sol->lambda - expected);
    r.checks.push_back(residual_check("lambda", res, stol, "qe_solve lambda " + format_number(sol->lambda) +
                                      " vs -c^2/2 = " + format_number(expected), "lambda = -c^2/2"));
  } else {
    r.checks.push_back(make_check("lambda", false, std::numeric_limits<double>::infinity(), stol,
                                  "qe_solve returned no nontrivial solution; -c^2/2 = " + format_number(expected),
                                  "lambda = -c^2/2"));
  }
  return r;
}

StandardSplit nilradical_split(const MetricLieAlgebra& L, double tol) {
  Subspace n = nilradical_solvable(L, tol);
  Subspace a = orthogonal_complement(n, L.gram(), tol);
  return {std::move(a), std::move(n)};
}

VerdictReport verify_solvable_conditions(const MetricLieAlgebra& L, const Subspace& a, const Subspace& n_sub,
                                         double m, double tol) {
  if (m == 0.0) throw Error(Errc::ZeroM, "m must be nonzero");
  if (!is_unimodular(L, tol)) throw Error(Errc::NotUnimodular, "the solvable structure theorem needs unimodularity");
  try {
    mean_curvature_vector(L, a, n_sub, tol);
  } catch (const Error& e) {
    throw Error(Errc::SplitInvalid, e.what());
  }
  const Subspace nil = nilradical_solvable(L, tol);
  if (!nil.equals(n_sub, std::sqrt(tol))) throw Error(Errc::SplitInvalid, "n is not the nilradical");
  if (curvature_tensor_norm(L) <= tol) throw Error(Errc::PreconditionFailed, "the metric is flat");

  const Matrix& G = L.gram();
  const Matrix A = metric_orthonormal_basis(a, G);
  const Matrix N = metric_orthonormal_basis(n_sub, G);
  const double stol = 100 * tol * tensor_scale(L);
  std::vector<Matrix> D;  // ad_{a_p} restricted to n, orthonormal n coordinates
  for (Eigen::Index p = 0; p < A.cols(); ++p) {
    const Matrix ad = ad_matrix(L, Vector(A.col(p)));
    const Matrix comm = ad * metric_adjoint(ad, G) - metric_adjoint(ad, G) * ad;
    if (max_abs(comm) > stol)
      throw Error(Errc::AdANotNormal, "ad_a is not normal (defect " + format_number(max_abs(comm)) + ")");
    D.push_back(N.transpose() * G * ad * N);
  }

  VerdictReport r;
  r.title = "solvable structure theorem";

  // (i)
  Matrix Nb;
  const MetricLieAlgebra Ln = restrict_to(L, n_sub, std::sqrt(tol), &Nb);
  const auto nsols = qe_solve(Ln, m, tol);
  const auto nsol = first_nontrivial(nsols);
  double lambda = std::numeric_limits<double>::quiet_NaN();
  if (nsol) {
    lambda = nsol->lambda;
    r.checks.push_back(make_check("(i)", true, nsol->residual, tol * (1 + tensor_scale(Ln)),
                                  "nilradical QE residual, lambda = " + format_number(lambda),
                                  "(n, g|n) is quasi-Einstein with the same lambda"));
  } else {
    r.checks.push_back(make_check("(i)", false, std::numeric_limits<double>::infinity(), tol,
                                  "nilradical admits no nontrivial QE solution",
                                  "(n, g|n) is quasi-Einstein with the same lambda"));
  }
  const auto ssol = first_nontrivial(qe_solve(L, m, tol));
  if (ssol) r.notes.push_back("algebra QE lambda = " + format_number(ssol->lambda));
  else r.notes.push_back("algebra admits no nontrivial QE solution");

  // (ii)
  double aa = 0;
  for (Eigen::Index p = 0; p < A.cols(); ++p)
    for (Eigen::Index q = p + 1; q < A.cols(); ++q)
      aa = std::max(aa, L.bracket(Vector(A.col(p)), Vector(A.col(q))).cwiseAbs().maxCoeff());
  r.checks.push_back(residual_check("(ii)", aa, stol, "max |[a_p, a_q]|", "[a, a] = 0"));

  // (iii)
  const Subspace zs = center(L, tol);
  const Subspace zn_local = center(Ln, tol);
  const Subspace zn = Subspace::span(Nb * zn_local.basis(), tol);
  double zres = zs.dim() == zn.dim() ? 0.0 : 1.0;
  for (std::size_t j = 0; j < zn.dim(); ++j) zres = std::max(zres, zs.distance(Vector(zn.basis().col(j))));
  for (std::size_t j = 0; j < zs.dim(); ++j) zres = std::max(zres, zn.distance(Vector(zs.basis().col(j))));
  r.checks.push_back(residual_check("(iii)", zres, 100 * tol,
                                    "center(s) dim " + std::to_string(zs.dim()) + " vs center(n) dim " +
                                        std::to_string(zn.dim()),
                                    "center(s) = center(n)"));

  // (iv)
  double ivres = 0;
  if (A.cols() > 0) {
    if (!nsol || lambda == 0.0) {
      ivres = std::numeric_limits<double>::infinity();
    } else {
      for (Eigen::Index p = 0; p < A.cols(); ++p)
        for (Eigen::Index q = 0; q < A.cols(); ++q) {
          const double rhs = -(symmetric_part(D[p]) * symmetric_part(D[q])).trace() / lambda;
          const double lhs = p == q ? 1.0 : 0.0;  // A is g-orthonormal
          ivres = std::max(ivres, std::abs(lhs - rhs));
        }
    }
  }
  r.checks.push_back(residual_check("(iv)", ivres, 100 * tol, "max |g(a_p,a_q) + tr(S(ad_a_p) S(ad_a_q))/lambda|",
                                    "g(a,a) = -(1/lambda) tr S(ad_a)^2"));
  return r;
}

VerdictReport verify_heisenberg_extension_form(const MetricLieAlgebra& L, const Subspace& a, const Matrix& n_basis,
                                               double tol) {
  const std::size_t n = L.dim();
  const Eigen::Index k = n_basis.cols();
  const Matrix& G = L.gram();
  if (static_cast<std::size_t>(n_basis.rows()) != n || k < 3 || k % 2 == 0)
    throw Error(Errc::BasisNotHeisenberg, "Heisenberg basis needs an odd number >= 3 of columns");
  if (max_abs(n_basis.transpose() * G * n_basis - Matrix::Identity(k, k)) > std::sqrt(tol))
    throw Error(Errc::BasisNotHeisenberg, "basis columns are not g-orthonormal");
  const double stol = 100 * tol * tensor_scale(L);
  // b[p][q] = coordinates of [n_p, n_q] in the given basis.
  std::vector<std::vector<Vector>> b(k, std::vector<Vector>(k));
  for (Eigen::Index p = 0; p < k; ++p)
    for (Eigen::Index q = 0; q < k; ++q)
      b[p][q] = n_basis.transpose() * G * L.bracket(Vector(n_basis.col(p)), Vector(n_basis.col(q)));
  Eigen::Index iz = -1;
  for (Eigen::Index z = 0; z < k && iz < 0; ++z) {
    bool ok = true;
    for (Eigen::Index p = 0; p < k && ok; ++p)
      for (Eigen::Index q = 0; q < k && ok; ++q) {
        Vector v = b[p][q];
        v(z) = 0;
        if (v.cwiseAbs().maxCoeff() > stol || (p == z || q == z ? std::abs(b[p][q](z)) > stol : false)) ok = false;
      }
    if (ok) iz = z;
  }
  if (iz < 0) throw Error(Errc::BasisNotHeisenberg, "no column spans a central direction containing all brackets");
  std::vector<Eigen::Index> order;
  std::vector<bool> used(k, false);
  used[iz] = true;
  double cabs = -1;
  for (Eigen::Index p = 0; p < k; ++p) {
    if (used[p]) continue;
    Eigen::Index partner = -1;
    for (Eigen::Index q = 0; q < k; ++q)
      if (q != p && std::abs(b[p][q](iz)) > stol) {
        if (partner >= 0 || used[q]) throw Error(Errc::BasisNotHeisenberg, "brackets do not pair the basis");
        partner = q;
      }
    if (partner < 0) throw Error(Errc::BasisNotHeisenberg, "basis vector with no bracket partner");
    const double c = b[p][partner](iz);
    if (cabs < 0) cabs = std::abs(c);
    if (std::abs(std::abs(c) - cabs) > stol) throw Error(Errc::BasisNotHeisenberg, "unequal structure constants");
    order.push_back(c > 0 ? p : partner);
    order.push_back(c > 0 ? partner : p);
    used[p] = used[partner] = true;
  }
  order.push_back(iz);
  Matrix B(n, k);
  for (Eigen::Index j = 0; j < k; ++j) B.col(j) = n_basis.col(order[j]);
  const Eigen::Index s = (k - 1) / 2;

  VerdictReport r;
  r.title = "Heisenberg extension form";
  const Matrix A = a.dim() ? metric_orthonormal_basis(a, G) : Matrix(n, 0);
  double offdiag = 0, pattern = 0;
  for (Eigen::Index p = 0; p < A.cols(); ++p) {
    const Matrix D = B.transpose() * G * ad_matrix(L, Vector(A.col(p))) * B;
    for (Eigen::Index i = 0; i < k; ++i)
      for (Eigen::Index j = 0; j < k; ++j)
        if (i != j) offdiag = std::max(offdiag, std::abs(D(i, j)));
    for (Eigen::Index i = 0; i < s; ++i) pattern = std::max(pattern, std::abs(D(2 * i, 2 * i) + D(2 * i + 1, 2 * i + 1)));
    pattern = std::max(pattern, std::abs(D(k - 1, k - 1)));
  }
  r.checks.push_back(residual_check("diagonal", offdiag, stol, "max off-diagonal |ad_a| in (x_1, y_1, ..., z)",
                                    "ad_a restricted to h is diagonal"));
  r.checks.push_back(residual_check("pattern", pattern, stol, "max |t_i + (-t_i)| and |z entry|",
                                    "diagonal pattern (t_1, -t_1, ..., t_s, -t_s, 0)"));
  r.checks.push_back(make_check("dim-bound", static_cast<Eigen::Index>(a.dim()) <= s,
                                static_cast<double>(a.dim()) - static_cast<double>(s), 0.0,
                                "dim a = " + std::to_string(a.dim()) + ", s = " + std::to_string(s), "dim a <= s"));
  return r;
}

}  // namespace qelie
