#include "qelie/catalog.hpp"

#include <cmath>

#include "qelie/algebra.hpp"
#include "qelie/error.hpp"
#include "qelie/qe.hpp"

namespace qelie {

namespace {

// Collects brackets, producing an exact algebra when every constant is exact.
class Builder {
 public:
  explicit Builder(std::vector<std::string> labels) : labels_(std::move(labels)) {}

  void add(std::size_t i, std::size_t j, std::size_t k, const Coefficient& v) {
    entries_.push_back({i, j, k, v});
    exact_ = exact_ && v.is_exact();
  }

  MetricLieAlgebra build(const Matrix& gram) const {
    const std::size_t n = labels_.size();
    if (exact_) {
      ExactStructureTensor st(n);
      for (const auto& e : entries_) st.set_bracket(e.i, e.j, e.k, st(e.i, e.j, e.k) + e.v.exact());
      return MetricLieAlgebra::from_exact(labels_, st, gram);
    }
    StructureTensor st(n);
    for (const auto& e : entries_) st.set_bracket(e.i, e.j, e.k, st(e.i, e.j, e.k) + e.v.to_double());
    return MetricLieAlgebra(labels_, st, gram);
  }
  MetricLieAlgebra build() const { return build(Matrix::Identity(labels_.size(), labels_.size())); }

 private:
  struct Entry {
    std::size_t i, j, k;
    Coefficient v;
  };
  std::vector<std::string> labels_;
  std::vector<Entry> entries_;
  bool exact_ = true;
};

Coefficient mul(const Coefficient& a, const Coefficient& b) {
  if (a.is_exact() && b.is_exact()) return Coefficient(mpq_class(a.exact() * b.exact()));
  return Coefficient(a.to_double() * b.to_double());
}

Coefficient scaled(int sign, const Coefficient& v) { return mul(Coefficient(sign), v); }

bool is_zero(const Coefficient& v) { return v.is_exact() ? v.exact() == 0 : v.to_double() == 0.0; }

// sqrt(num / 2) with num = p c^2 + q a^2; exact when possible. Slightly
// negative float radicands (boundary cases) are clamped to zero.
Coefficient half_root(const Coefficient& a, const Coefficient& c, int p, int q, const char* what) {
  if (a.is_exact() && c.is_exact()) {
    mpq_class r = (p * c.exact() * c.exact() + q * a.exact() * a.exact()) / 2;
    if (r < 0) throw Error(Errc::BadParams, std::string(what) + " radicand is negative");
    mpq_class root;
    if (exact_sqrt(r, root)) return Coefficient(root);
    return Coefficient(std::sqrt(r.get_d()));
  }
  const double av = a.to_double(), cv = c.to_double();
  double r = (p * cv * cv + q * av * av) / 2;
  if (r < 0) {
    if (r < -1e-12 * std::max(1.0, cv * cv)) throw Error(Errc::BadParams, std::string(what) + " radicand is negative");
    r = 0;
  }
  return Coefficient(std::sqrt(r));
}

void check_signs(const SignFlags& signs) {
  for (int s : signs)
    if (s != 1 && s != -1) throw Error(Errc::BadParams, "sign flags must be +1 or -1");
}

std::vector<std::string> heisenberg_labels(int s) {
  if (s == 1) return {"x", "y", "z"};
  std::vector<std::string> out;
  for (int i = 1; i <= s; ++i) {
    out.push_back("x" + std::to_string(i));
    out.push_back("y" + std::to_string(i));
  }
  out.push_back("z");
  return out;
}

std::string matrix_param(const CoefficientMatrix& M) {
  std::string out;
  for (std::size_t i = 0; i < M.size(); ++i) {
    if (i) out += ";";
    for (std::size_t j = 0; j < M[i].size(); ++j) out += (j ? " " : "") + M[i][j].str();
  }
  return out;
}

double half_c2(const Coefficient& c) { return -0.5 * c.to_double() * c.to_double(); }

}  // namespace

CatalogEntry make_heisenberg(int s, const Coefficient& c) {
  if (s < 1) throw Error(Errc::BadParams, "Heisenberg algebra needs s >= 1");
  if (is_zero(c)) throw Error(Errc::BadParams, "Heisenberg algebra needs c != 0");
  Builder b(heisenberg_labels(s));
  const std::size_t z = 2 * s;
  for (int i = 0; i < s; ++i) b.add(2 * i, 2 * i + 1, z, c);
  CatalogEntry e{"h" + std::to_string(2 * s + 1), "heisenberg",
                 {{"s", std::to_string(s)}, {"c", c.str()}}, b.build(), {}};
  e.expected = {half_c2(c), 1, 2};
  return e;
}

CatalogEntry make_n6a(const Coefficient& a, const Coefficient& c, SignFlags signs) {
  check_signs(signs);
  if (is_zero(a)) throw Error(Errc::BadParams, "n6a needs a != 0 (a = 0 gives a two-dimensional center)");
  if (is_zero(c)) throw Error(Errc::BadParams, "n6a needs c != 0");
  const Coefficient b12 = half_root(a, c, 1, -3, "c^2 - 3a^2");
  const Coefficient b = half_root(a, c, 1, 1, "c^2 + a^2");
  enum { x, y, z, w1, w2, w3 };
  Builder bl({"x", "y", "z", "w1", "w2", "w3"});
  bl.add(x, y, z, c);
  bl.add(w1, w2, w3, scaled(signs[0], a));
  bl.add(w1, w2, z, scaled(signs[1], b12));
  bl.add(w1, w3, z, scaled(signs[2], b));
  bl.add(w2, w3, z, scaled(signs[3], b));
  CatalogEntry e{"n6a", "n6a", {{"a", a.str()}, {"c", c.str()}}, bl.build(), {}};
  e.expected = {half_c2(c), 1, 3};
  return e;
}

CatalogEntry make_n7a(const Coefficient& a, const Coefficient& c, SignFlags signs) {
  check_signs(signs);
  if (is_zero(a)) throw Error(Errc::BadParams, "n7a needs a != 0");
  if (is_zero(c)) throw Error(Errc::BadParams, "n7a needs c != 0");
  const Coefficient b = half_root(a, c, 1, 1, "a^2 + c^2");
  const Coefficient d = half_root(a, c, 1, -3, "c^2 - 3a^2");
  enum { x, y, z, w1, w2, w3, w4 };
  Builder bl({"x", "y", "z", "w1", "w2", "w3", "w4"});
  bl.add(x, y, z, c);
  bl.add(w1, w2, z, scaled(signs[0], b));
  bl.add(w1, w3, z, scaled(signs[0], b));
  bl.add(w1, w4, z, scaled(signs[1], a));
  bl.add(w2, w4, z, scaled(signs[2], d));
  bl.add(w3, w4, z, scaled(signs[2], d));
  bl.add(w2, w4, w1, scaled(signs[3], a));
  bl.add(w3, w4, w1, scaled(signs[3], a));
  CatalogEntry e{"n7a", "n7a", {{"a", a.str()}, {"c", c.str()}}, bl.build(), {}};
  e.expected = {half_c2(c), 2, 3};
  return e;
}

CatalogEntry make_heisenberg_extension(int s, const Coefficient& c, const CoefficientMatrix& t_rows) {
  if (s < 1) throw Error(Errc::BadParams, "extension needs s >= 1");
  if (is_zero(c)) throw Error(Errc::BadParams, "extension needs c != 0");
  const std::size_t k = t_rows.size();
  if (k < 1 || k > static_cast<std::size_t>(s)) throw Error(Errc::BadParams, "extension needs 1 <= k <= s rows");
  Matrix T(k, s);
  for (std::size_t j = 0; j < k; ++j) {
    if (t_rows[j].size() != static_cast<std::size_t>(s)) throw Error(Errc::BadParams, "each row needs s entries");
    for (int i = 0; i < s; ++i) T(j, i) = t_rows[j][i].to_double();
  }
  if (Eigen::FullPivLU<Matrix>(T).rank() != static_cast<Eigen::Index>(k))
    throw Error(Errc::BadParams, "rows of t must be linearly independent");

  std::vector<std::string> labels;
  if (k == 1) labels.push_back("a");
  else
    for (std::size_t j = 1; j <= k; ++j) labels.push_back("a" + std::to_string(j));
  for (auto& l : heisenberg_labels(s)) labels.push_back(l);
  Builder bl(labels);
  const std::size_t z = k + 2 * s;
  for (int i = 0; i < s; ++i) bl.add(k + 2 * i, k + 2 * i + 1, z, c);
  for (std::size_t j = 0; j < k; ++j)
    for (int i = 0; i < s; ++i) {
      if (is_zero(t_rows[j][i])) continue;
      bl.add(j, k + 2 * i, k + 2 * i, t_rows[j][i]);
      bl.add(j, k + 2 * i + 1, k + 2 * i + 1, scaled(-1, t_rows[j][i]));
    }
  const std::size_t n = k + 2 * s + 1;
  Matrix G = Matrix::Identity(n, n);
  const double cv = c.to_double();
  G.topLeftCorner(k, k) = (4.0 / (cv * cv)) * T * T.transpose();
  MetricLieAlgebra L = bl.build(G);

  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i + 1; j < k; ++j) {
      const Matrix ai = ad_matrix(L, i), aj = ad_matrix(L, j);
      if ((ai * aj - aj * ai).cwiseAbs().maxCoeff() > 1e-12 || L.bracket(i, j).cwiseAbs().maxCoeff() > 0)
        throw Error(Errc::ActionsDoNotCommute, "a-actions do not commute");
    }
  std::string name = (k == 1 ? "R" : "R" + std::to_string(k)) + "+h" + std::to_string(2 * s + 1);
  CatalogEntry e{name, "extension",
                 {{"s", std::to_string(s)}, {"c", c.str()}, {"t", matrix_param(t_rows)}}, std::move(L), {}};
  e.expected = {half_c2(c), 1, std::nullopt};
  return e;
}

CatalogEntry make_almost_abelian(const CoefficientMatrix& A) {
  const std::size_t n = A.size();
  for (const auto& row : A)
    if (row.size() != n) throw Error(Errc::BadParams, "A must be square");
  std::vector<std::string> labels;
  for (std::size_t i = 0; i <= n; ++i) labels.push_back("e" + std::to_string(i));
  Builder bl(labels);
  bool exact = true;
  mpq_class tr_exact = 0;
  double tr = 0;
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i)
      if (!is_zero(A[i][j])) bl.add(0, j + 1, i + 1, A[i][j]);
  for (std::size_t i = 0; i < n; ++i) {
    exact = exact && A[i][i].is_exact();
    tr += A[i][i].to_double();
    if (A[i][i].is_exact()) tr_exact += A[i][i].exact();
  }
  const Coefficient trace = exact ? Coefficient(tr_exact) : Coefficient(tr);
  return CatalogEntry{"almost-abelian", "almost-abelian", {{"A", matrix_param(A)}, {"trace", trace.str()}}, bl.build(),
                      {}};
}

std::vector<TableRow> tables_report(double tol) {
  auto row = [tol](int table, CatalogEntry e) {
    TableRow r{table, std::move(e), std::nullopt, false};
    if (auto sol = first_nontrivial(qe_solve(r.entry.algebra, 1.0, tol))) r.qe_lambda = sol->lambda;
    r.expected_lambda_ok = r.qe_lambda && r.entry.expected.lambda &&
                           std::abs(*r.qe_lambda - *r.entry.expected.lambda) <= 1e-8;
    return r;
  };
  std::vector<TableRow> out;
  out.push_back(row(1, make_heisenberg(1, 1)));
  out.push_back(row(1, make_heisenberg(2, 1)));
  out.push_back(row(1, make_n6a(1, 2)));
  out.push_back(row(2, make_heisenberg(1, 1)));
  out.push_back(row(2, make_heisenberg_extension(1, 1, {{1}})));
  out.push_back(row(2, make_heisenberg(2, 1)));
  out.push_back(row(2, make_heisenberg_extension(2, 1, {{1, 1}})));
  out.push_back(row(2, make_n6a(1, 2)));
  return out;
}

}  // namespace qelie
