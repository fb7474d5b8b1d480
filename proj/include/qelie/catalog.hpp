#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qelie/coefficient.hpp"
#include "qelie/metric_lie_algebra.hpp"

namespace qelie {

struct ExpectedValues {
  std::optional<double> lambda;
  std::optional<int> center_dim;
  std::optional<int> nilpotent_step;
};

struct CatalogEntry {
  std::string name;
  std::string family;
  std::map<std::string, std::string> params;  // canonical Coefficient text
  MetricLieAlgebra algebra;
  ExpectedValues expected;
};

using CoefficientMatrix = std::vector<std::vector<Coefficient>>;

/// h_{2s+1}: basis (x_1, y_1, ..., x_s, y_s, z), [x_i, y_i] = c z, identity Gram.
CatalogEntry make_heisenberg(int s, const Coefficient& c);

/// Sign choices for the +- in the n6a / n7a bracket tables; +1 or -1 each.
using SignFlags = std::array<int, 4>;
inline constexpr SignFlags kPlusSigns{1, 1, 1, 1};

/// n6a: basis (x, y, z, w1, w2, w3),
/// [x,y] = c z, [w1,w2] = a w3 + sqrt((c^2-3a^2)/2) z,
/// [w1,w3] = [w2,w3] = sqrt((c^2+a^2)/2) z.
/// Requires a != 0 and c^2 >= 3a^2. signs = (a, b12, b13, b23).
CatalogEntry make_n6a(const Coefficient& a, const Coefficient& c, SignFlags signs = kPlusSigns);

/// n7a: basis (x, y, z, w1, w2, w3, w4),
/// [x,y] = c z, [w1,w2] = [w1,w3] = sqrt((a^2+c^2)/2) z, [w1,w4] = a z,
/// [w2,w4] = [w3,w4] = sqrt((c^2-3a^2)/2) z + a w1.
/// Requires a != 0 and (c/a)^2 >= 3. signs = (b, a z, d, a w1).
CatalogEntry make_n7a(const Coefficient& a, const Coefficient& c, SignFlags signs = kPlusSigns);

/// R^k + h_{2s+1} with ad_{a_j} = diag(t_j1, -t_j1, ..., t_js, -t_js, 0) on the
/// Heisenberg basis. Basis (a_1..a_k, x_1, y_1, ..., z). Gram: identity on h,
/// (4/c^2) T T^T on the a-block, a orthogonal to h.
CatalogEntry make_heisenberg_extension(int s, const Coefficient& c, const CoefficientMatrix& t_rows);

/// w + R e0 with w abelian and ad_{e0}|w = A. Basis (e0, e1, ..., en).
CatalogEntry make_almost_abelian(const CoefficientMatrix& A);

struct TableRow {
  int table = 1;
  CatalogEntry entry;
  std::optional<double> qe_lambda;  // from qe_solve(m = 1), nontrivial solution
  bool expected_lambda_ok = false;
};

/// Rows of the nilpotent (table 1) and unimodular solvable (table 2) classification, with canonical
/// parameters, each cross-checked by qe_solve.
std::vector<TableRow> tables_report(double tol = kDefaultTol);

}  // namespace qelie
