#include "qelie/curvature.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "qelie/algebra.hpp"
#include "qelie/error.hpp"

namespace qelie {

namespace {

void require_orthonormal(const MetricLieAlgebra& L) {
  if (!L.gram().isIdentity(1e-12))
    throw Error(Errc::PreconditionFailed, "connection coefficients need an orthonormal frame");
}

struct RiemannData {
  Matrix ricci;  // frame coordinates
  double norm = 0;
};

// R(e_i,e_j)e_k = sum_m R_ijk^m e_m in an orthonormal frame.
RiemannData riemann(const MetricLieAlgebra& F) {
  const std::size_t n = F.dim();
  const auto gamma = connection_coefficients(F);
  const auto& c = F.tensor();
  RiemannData out{Matrix::Zero(n, n), 0.0};
  double sq = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t m = 0; m < n; ++m) {
          double r = 0;
          for (std::size_t l = 0; l < n; ++l)
            r += gamma(j, k, l) * gamma(i, l, m) - gamma(i, k, l) * gamma(j, l, m) - c(i, j, l) * gamma(l, k, m);
          sq += r * r;
          if (m == i) out.ricci(j, k) += r;  // Ric(u,v) = sum_i g(R(e_i,u)v, e_i)
        }
  out.norm = std::sqrt(sq);
  out.ricci = (out.ricci + out.ricci.transpose()) / 2;
  return out;
}

CurvatureReport finish(const OrthonormalFrame& frame, const Matrix& frame_ricci, RicciFormula provenance,
                       double curvature_norm, double tol) {
  const std::size_t n = frame.Q.rows();
  CurvatureReport r;
  r.provenance = provenance;
  const Matrix Rs = (frame_ricci + frame_ricci.transpose()) / 2;
  const Matrix Qinv = frame.Q.triangularView<Eigen::Upper>().solve(Matrix::Identity(n, n));
  r.ricci = Qinv.transpose() * Rs * Qinv;
  r.ricci = (r.ricci + r.ricci.transpose()) / 2;
  if (n > 0) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(Rs);
    r.eigenvalues = es.eigenvalues();
    r.eigenvectors = frame.Q * es.eigenvectors();
  } else {
    r.eigenvalues = Vector(0);
    r.eigenvectors = Matrix(0, 0);
  }
  r.scalar = Rs.trace();
  r.flat = curvature_norm <= tol;
  return r;
}

// Polarized symmetric matrix of a quadratic form on R^k.
Matrix polarize(std::size_t k, const std::function<double(const Vector&)>& Q) {
  Matrix M(k, k);
  for (std::size_t a = 0; a < k; ++a) {
    const Vector ea = Vector::Unit(k, a);
    M(a, a) = Q(ea);
    for (std::size_t b = a + 1; b < k; ++b) {
      const Vector eb = Vector::Unit(k, b);
      M(a, b) = M(b, a) = (Q(ea + eb) - Q(ea - eb)) / 4;
    }
  }
  return M;
}

// Brings L into the orthonormal frame given by the g-orthonormal columns of P.
MetricLieAlgebra framed(const MetricLieAlgebra& L, const Matrix& P) {
  const std::size_t n = L.dim();
  return change_basis(L, P).with_gram(Matrix::Identity(n, n));
}

}  // namespace

ConnectionCoefficients connection_coefficients(const MetricLieAlgebra& L) {
  require_orthonormal(L);
  const std::size_t n = L.dim();
  const auto& c = L.tensor();
  ConnectionCoefficients g(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) g(i, j, k) = 0.5 * (c(i, j, k) - c(j, k, i) + c(k, i, j));
  return g;
}

double metric_compatibility_defect(const ConnectionCoefficients& gamma) {
  double worst = 0;
  const std::size_t n = gamma.dim();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) worst = std::max(worst, std::abs(gamma(i, j, k) + gamma(i, k, j)));
  return worst;
}

double torsion_defect(const ConnectionCoefficients& gamma, const MetricLieAlgebra& L) {
  double worst = 0;
  const std::size_t n = gamma.dim();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        worst = std::max(worst, std::abs(gamma(i, j, k) - gamma(j, i, k) - L.tensor()(i, j, k)));
  return worst;
}

double curvature_tensor_norm(const MetricLieAlgebra& L) { return riemann(orthonormal_frame(L).algebra).norm; }

CurvatureReport ricci_oracle(const MetricLieAlgebra& L, double tol) {
  const auto frame = orthonormal_frame(L);
  const auto R = riemann(frame.algebra);
  return finish(frame, R.ricci, RicciFormula::Oracle, R.norm, tol);
}

CurvatureReport ricci_nilpotent(const MetricLieAlgebra& L, double tol) {
  if (!is_nilpotent(L, tol)) throw Error(Errc::NotNilpotent, "nilpotent Ricci formula needs a nilpotent algebra");
  const auto frame = orthonormal_frame(L);
  const auto& F = frame.algebra;
  const std::size_t n = F.dim();
  std::vector<Vector> brackets;  // [e_k, e_j] for all k, j
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t j = 0; j < n; ++j) brackets.push_back(F.bracket(k, j));
  auto Q = [&](const Vector& x) {
    const Matrix ad = ad_matrix(F, x);
    double s = -0.5 * ad.squaredNorm();
    for (const auto& b : brackets) s += 0.25 * std::pow(b.dot(x), 2);
    return s;
  };
  return finish(frame, polarize(n, Q), RicciFormula::Nilpotent, curvature_tensor_norm(L), tol);
}

CurvatureReport ricci_unimodular_solvable(const MetricLieAlgebra& L, double tol) {
  if (!is_unimodular(L, tol)) throw Error(Errc::NotUnimodular, "solvable Ricci formulas need a unimodular algebra");
  if (!is_solvable(L, tol)) throw Error(Errc::NotSolvable, "solvable Ricci formulas need a solvable algebra");
  const auto frame = orthonormal_frame(L);
  const auto& F = frame.algebra;
  const std::size_t n = F.dim();
  const Subspace whole = Subspace::whole(n);
  const Subspace h = bracket_span(F, whole, whole, tol);
  const Subspace f = orthogonal_complement(h, Matrix::Identity(n, n), tol);
  const Matrix& Hb = h.basis();
  const Matrix& Fb = f.basis();
  const std::size_t p = h.dim(), q = f.dim();

  std::vector<Vector> brackets;  // [e_i, e_j], i < j
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) brackets.push_back(F.bracket(i, j));

  auto Qh = [&](const Vector& c) {
    const Vector x = Hb * c;
    const Matrix ad = ad_matrix(F, x);
    double s = -0.5 * (ad.transpose() * ad).trace();
    for (const auto& b : brackets) s += 0.5 * std::pow(b.dot(x), 2);
    return s;
  };
  auto Qf = [&](const Vector& c) {
    const Matrix ad = ad_matrix(F, Vector(Fb * c));
    const Matrix S = ad + ad.transpose();
    return -0.25 * (S * S).trace();
  };
  Matrix block = Matrix::Zero(n, n);
  block.topLeftCorner(p, p) = polarize(p, Qh);
  block.bottomRightCorner(q, q) = polarize(q, Qf);
  for (std::size_t a = 0; a < p; ++a)
    for (std::size_t b = 0; b < q; ++b) {
      const Matrix adh = ad_matrix(F, Vector(Hb.col(a)));
      const Matrix adf = ad_matrix(F, Vector(Fb.col(b)));
      block(a, p + b) = block(p + b, a) = -0.5 * (adh.transpose() * adf).trace();
    }
  Matrix P(n, n);
  P << Hb, Fb;
  const Matrix frame_ricci = P * block * P.transpose();
  return finish(frame, frame_ricci, RicciFormula::Solvable, curvature_tensor_norm(L), tol);
}

CurvatureReport ricci_standard_split(const MetricLieAlgebra& L, const Subspace& a, const Subspace& n_sub,
                                     double tol) {
  const std::size_t n = L.dim();
  Vector Hdecl;
  try {
    Hdecl = mean_curvature_vector(L, a, n_sub, tol);
  } catch (const Error& e) {
    throw Error(Errc::SplitInvalid, e.what());
  }
  Subspace nil;
  try {
    nil = nilradical_solvable(L, tol);
  } catch (const Error& e) {
    throw Error(Errc::SplitInvalid, std::string("nilradical unavailable: ") + e.what());
  }
  if (!nil.equals(n_sub, std::sqrt(tol)))
    throw Error(Errc::SplitInvalid, "n is not the nilradical (dim " + std::to_string(nil.dim()) + " expected)");

  const Matrix A = metric_orthonormal_basis(a, L.gram());
  const Matrix N = metric_orthonormal_basis(n_sub, L.gram());
  const std::size_t q = A.cols(), r = N.cols();
  Matrix P(n, n);
  P << A, N;
  const MetricLieAlgebra F = framed(L, P);

  // Frame coordinates: 0..q-1 span a, q..n-1 span n.
  Vector H = Vector::Zero(n);
  for (std::size_t i = 0; i < q; ++i) H(i) = ad_matrix(F, i).trace();
  auto restricted = [&](const Vector& v) { return Matrix(ad_matrix(F, v).bottomRightCorner(r, r)); };
  std::vector<Matrix> D(q);
  for (std::size_t i = 0; i < q; ++i) D[i] = restricted(Vector::Unit(n, i));
  auto lift_a = [&](const Vector& c) { Vector v = Vector::Zero(n); v.head(q) = c; return v; };
  auto lift_n = [&](const Vector& c) { Vector v = Vector::Zero(n); v.tail(r) = c; return v; };

  auto Qa = [&](const Vector& c) {
    const Vector av = lift_a(c);
    double s = 0;
    for (std::size_t i = 0; i < q; ++i) s -= 0.5 * F.bracket(av, Vector(Vector::Unit(n, i))).squaredNorm();
    const Matrix S = symmetric_part(restricted(av));
    return s - (S * S).trace();
  };
  auto Rax = [&](std::size_t ai, std::size_t xi) {
    const Vector av = Vector::Unit(n, ai), xv = Vector::Unit(n, q + xi);
    double s = 0;
    for (std::size_t i = 0; i < q; ++i) {
      const Vector ei = Vector::Unit(n, i);
      s -= 0.5 * F.bracket(av, ei).dot(F.bracket(xv, ei));
    }
    s -= 0.5 * (restricted(av).transpose() * restricted(xv)).trace();
    s -= 0.5 * F.bracket(H, av).dot(xv);
    return s;
  };
  auto Qx = [&](const Vector& c) {
    const Vector x = lift_n(c);
    double s = 0;
    for (std::size_t i = 0; i < q; ++i)
      for (std::size_t j = 0; j < q; ++j)
        s += 0.25 * std::pow(F.bracket(Vector(Vector::Unit(n, i)), Vector(Vector::Unit(n, j))).dot(x), 2);
    for (std::size_t i = 0; i < q; ++i) {
      const Matrix comm = D[i] * D[i].transpose() - D[i].transpose() * D[i];
      s += 0.5 * c.dot(comm * c);
    }
    for (std::size_t i = 0; i < r; ++i) {
      const Vector xi = Vector::Unit(n, q + i);
      s -= 0.5 * F.bracket(x, xi).tail(r).squaredNorm();
      for (std::size_t j = 0; j < r; ++j)
        s += 0.25 * std::pow(F.bracket(xi, Vector(Vector::Unit(n, q + j))).dot(x), 2);
    }
    s -= F.bracket(H, x).dot(x);
    return s;
  };

  Matrix block = Matrix::Zero(n, n);
  block.topLeftCorner(q, q) = polarize(q, Qa);
  block.bottomRightCorner(r, r) = polarize(r, Qx);
  for (std::size_t i = 0; i < q; ++i)
    for (std::size_t j = 0; j < r; ++j) block(i, q + j) = block(q + j, i) = Rax(i, j);

  // block holds Ric in the frame P; back to declared coordinates.
  const Matrix Pinv = P.fullPivLu().inverse();
  Matrix ric = Pinv.transpose() * block * Pinv;
  ric = (ric + ric.transpose()) / 2;

  CurvatureReport rep;
  rep.provenance = RicciFormula::StandardSplit;
  rep.ricci = ric;
  Eigen::SelfAdjointEigenSolver<Matrix> es(block);
  rep.eigenvalues = es.eigenvalues();
  rep.eigenvectors = P * es.eigenvectors();
  rep.scalar = block.trace();
  rep.flat = curvature_tensor_norm(L) <= tol;
  return rep;
}

ScalarFlatness scalar_and_flatness(const MetricLieAlgebra& L, double tol) {
  const auto r = ricci_oracle(L, tol);
  return {r.scalar, r.flat};
}

std::vector<std::vector<std::size_t>> eigenvalue_clusters(const Vector& ascending) {
  std::vector<std::vector<std::size_t>> out;
  if (ascending.size() == 0) return out;
  const double gap = 1e-7 * (1.0 + ascending.cwiseAbs().maxCoeff());
  out.push_back({0});
  for (Eigen::Index i = 1; i < ascending.size(); ++i) {
    if (ascending(i) - ascending(i - 1) > gap) out.emplace_back();
    out.back().push_back(static_cast<std::size_t>(i));
  }
  return out;
}

std::string to_string(RicciFormula f) {
  switch (f) {
    case RicciFormula::Oracle: return "oracle";
    case RicciFormula::Nilpotent: return "nilpotent-formula";
    case RicciFormula::Solvable: return "solvable-formula";
    case RicciFormula::StandardSplit: return "standard-split";
  }
  return "oracle";
}

}  // namespace qelie
