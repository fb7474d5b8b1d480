#pragma once

#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "qelie/algebra.hpp"
#include "qelie/catalog.hpp"
#include "qelie/metric_lie_algebra.hpp"

namespace qt {

using qelie::Matrix;
using qelie::Vector;

inline double max_abs(const Matrix& M) { return M.size() ? M.cwiseAbs().maxCoeff() : 0.0; }

inline Vector unit(std::size_t n, std::size_t i) { return Vector::Unit(n, i); }

struct Rng {
  std::mt19937_64 gen;
  explicit Rng(std::uint64_t seed) : gen(seed) {}
  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(gen); }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(gen); }
  double sign() { return integer(0, 1) ? 1.0 : -1.0; }
  Vector vec(std::size_t n) {
    Vector v(n);
    for (std::size_t i = 0; i < n; ++i) v(i) = uniform(-1, 1);
    return v;
  }
};

inline Matrix random_orthogonal(std::size_t n, Rng& rng) {
  Matrix A(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) A(i, j) = rng.uniform(-1, 1);
  Eigen::HouseholderQR<Matrix> qr(A);
  return qr.householderQ();
}

/// Q^T D Q with log-uniform D in [1, 1000]: condition number <= 1e3.
inline Matrix random_spd(std::size_t n, Rng& rng) {
  const Matrix Q = random_orthogonal(n, rng);
  Vector d(n);
  for (std::size_t i = 0; i < n; ++i) d(i) = std::pow(10.0, rng.uniform(0, 3));
  Matrix G = Q.transpose() * d.asDiagonal() * Q;
  return (G + G.transpose()) / 2;
}

inline qelie::MetricLieAlgebra abelian(std::size_t n) {
  return qelie::MetricLieAlgebra(qelie::default_labels(n), qelie::StructureTensor(n));
}

/// Builds a float algebra from (i, j, k, value) brackets.
inline qelie::MetricLieAlgebra algebra(std::size_t n, const std::vector<std::tuple<int, int, int, double>>& brackets,
                                       std::vector<std::string> labels = {}) {
  qelie::StructureTensor st(n);
  for (auto [i, j, k, v] : brackets) st.set_bracket(i, j, k, st(i, j, k) + v);
  return qelie::MetricLieAlgebra(labels.empty() ? qelie::default_labels(n) : labels, st);
}

/// [a, x] = x on (a, x).
inline qelie::MetricLieAlgebra affine_line() { return algebra(2, {{0, 1, 1, 1.0}}, {"a", "x"}); }

/// so(3): [e0,e1] = e2 cyclically; the identity metric is bi-invariant.
inline qelie::MetricLieAlgebra so3() { return algebra(3, {{0, 1, 2, 1.0}, {1, 2, 0, 1.0}, {2, 0, 1, 1.0}}); }

/// Random nilpotent catalog instance with a random SPD Gram.
inline qelie::MetricLieAlgebra random_nilpotent(Rng& rng, bool random_gram = true) {
  qelie::CatalogEntry e = [&] {
    switch (rng.integer(0, 2)) {
      case 0: return qelie::make_heisenberg(rng.integer(1, 3), rng.sign() * rng.uniform(0.3, 2.0));
      case 1: {
        const double a = rng.sign() * rng.uniform(0.2, 1.5);
        return qelie::make_n6a(a, rng.sign() * std::abs(a) * rng.uniform(1.75, 3.0));
      }
      default: {
        const double a = rng.sign() * rng.uniform(0.2, 1.5);
        return qelie::make_n7a(a, rng.sign() * std::abs(a) * rng.uniform(1.75, 3.0));
      }
    }
  }();
  if (!random_gram) return e.algebra;
  return e.algebra.with_gram(random_spd(e.algebra.dim(), rng));
}

/// Random Heisenberg extension (one-generator shapes over h3 and h5, and the bi-extension).
inline qelie::CatalogEntry random_extension(Rng& rng) {
  const double c = rng.sign() * rng.uniform(0.4, 2.0);
  switch (rng.integer(0, 2)) {
    case 0: return qelie::make_heisenberg_extension(1, c, {{rng.sign() * rng.uniform(0.3, 2.0)}});
    case 1:
      return qelie::make_heisenberg_extension(2, c, {{rng.uniform(0.3, 2.0), rng.sign() * rng.uniform(0.3, 2.0)}});
    default:
      return qelie::make_heisenberg_extension(2, c, {{rng.uniform(0.3, 2.0), 0}, {0, rng.uniform(0.3, 2.0)}});
  }
}

}  // namespace qt
