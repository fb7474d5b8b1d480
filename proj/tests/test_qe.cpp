#include <doctest.h>

#include <cmath>

#include "qelie/algebra.hpp"
#include "qelie/catalog.hpp"
#include "qelie/curvature.hpp"
#include "qelie/error.hpp"
#include "qelie/qe.hpp"
#include "support.hpp"

using namespace qelie;
using qt::max_abs;
using qt::unit;

namespace {

Subspace span_units(std::size_t n, std::initializer_list<std::size_t> idx) {
  Matrix M(n, idx.size());
  Eigen::Index c = 0;
  for (auto i : idx) M.col(c++) = unit(n, i);
  return Subspace::span(M, 1e-12);
}

Matrix columns(std::size_t n, std::initializer_list<std::size_t> idx) {
  Matrix M(n, idx.size());
  Eigen::Index c = 0;
  for (auto i : idx) M.col(c++) = unit(n, i);
  return M;
}

bool passed(const VerdictReport& r, const std::string& name) {
  const Check* c = r.find(name);
  REQUIRE(c != nullptr);
  return c->passed;
}

}  // namespace

TEST_SUITE("lie_derivative_metric") {
  TEST_CASE("central and zero X") {
    const auto L = make_heisenberg(2, 1).algebra;
    CHECK(max_abs(lie_derivative_metric(L, unit(5, 4))) == 0.0);
    CHECK(max_abs(lie_derivative_metric(L, Vector::Zero(5))) == 0.0);
  }
  TEST_CASE("[a,x] = x along a") {
    const Matrix M = lie_derivative_metric(qt::affine_line(), unit(2, 0));
    CHECK(M(1, 1) == -2.0);
    CHECK(M(0, 0) == 0.0);
    CHECK(M(0, 1) == 0.0);
  }
}

TEST_SUITE("killing_subalgebra") {
  TEST_CASE("nilpotent: equals the center") {
    for (const auto& L : {make_heisenberg(2, 1).algebra, make_n6a(1, 2).algebra, make_n7a(1, 2).algebra}) {
      CHECK(killing_subalgebra(L).equals(center(L), 1e-9));
    }
  }
  TEST_CASE("bi-invariant metric: everything") { CHECK(killing_subalgebra(qt::so3()).dim() == 3); }
  TEST_CASE("R + h3: span of z") {
    const auto k = killing_subalgebra(make_heisenberg_extension(1, 1, {{1}}).algebra);
    CHECK(k.dim() == 1);
    CHECK(k.contains(Vector(unit(4, 3)), 1e-12));
  }
}

TEST_SUITE("bakry_emery") {
  TEST_CASE("X = 0 is Ricci") {
    const auto L = make_n7a(1, 2).algebra;
    CHECK(max_abs(bakry_emery(L, Vector::Zero(7), 1) - ricci_oracle(L).ricci) == 0.0);
  }
  TEST_CASE("H3, m = 2, X = sqrt(2) z") {
    const auto L = make_heisenberg(1, 1).algebra;
    const Matrix T = bakry_emery(L, std::sqrt(2.0) * unit(3, 2), 2);
    CHECK(max_abs(T + 0.5 * Matrix::Identity(3, 3)) <= 1e-15);
    CHECK(qe_residual(L, std::sqrt(2.0) * unit(3, 2), 2, -0.5) <= 1e-15);
  }
  TEST_CASE("abelian gives -X* X*") {
    const auto L = qt::abelian(3).with_gram(Vector(Eigen::Vector3d(1, 2, 3)).asDiagonal());
    const Vector X = Eigen::Vector3d(1, -1, 0.5);
    const Vector Xf = L.gram() * X;
    CHECK(max_abs(bakry_emery(L, X, 1) + Xf * Xf.transpose()) <= 1e-15);
  }
  TEST_CASE("m = 0") { CHECK_THROWS_AS(bakry_emery(qt::abelian(2), Vector::Zero(2), 0), Error); }
}

TEST_SUITE("qe_solve") {
  TEST_CASE("H5, m = 3") {
    const auto sols = qe_solve(make_heisenberg(2, 1).algebra, 3);
    REQUIRE(sols.size() == 2);
    for (const auto& s : sols) {
      CHECK(s.lambda == doctest::Approx(-0.5));
      CHECK(std::abs(s.X(4)) == doctest::Approx(std::sqrt(4.5)));
      CHECK(s.X.head(4).norm() <= 1e-12);
      CHECK(s.residual <= 1e-12);
      CHECK(s.X_killing);
      CHECK(s.X_central);
      CHECK_FALSE(s.einstein);
    }
    CHECK(sols[0].X(4) > 0);
    CHECK(max_abs(sols[0].X + sols[1].X) == 0.0);
  }
  TEST_CASE("Heisenberg closed form for c, s, m") {
    for (int s = 1; s <= 3; ++s)
      for (double m : {1.0, 2.0, 5.0}) {
        const double c = 0.8;
        const auto sols = qe_solve(make_heisenberg(s, c).algebra, m);
        REQUIRE(sols.size() == 2);
        CHECK(sols[0].lambda == doctest::Approx(-c * c / 2));
        CHECK(sols[0].X.norm() == doctest::Approx(c * std::sqrt(m * (s + 1) / 2)));
      }
  }
  TEST_CASE("abelian is Einstein with lambda = 0") {
    for (double m : {1.0, -2.0, 0.5}) {
      const auto sols = qe_solve(qt::abelian(4), m);
      REQUIRE(sols.size() == 1);
      CHECK(sols[0].lambda == 0.0);
      CHECK(sols[0].X.norm() == 0.0);
      CHECK(sols[0].einstein);
    }
  }
  TEST_CASE("almost-abelian sol3 + R has none") {
    const auto L = make_almost_abelian({{1, 0, 0}, {0, -1, 0}, {0, 0, 0}}).algebra;
    CHECK(is_unimodular(L));
    for (double m : {1.0, -1.0, 2.0, -2.0, 5.0}) CHECK(qe_solve(L, m).empty());
  }
  TEST_CASE("negative m on H3 gives none") {
    CHECK(qe_solve(make_heisenberg(1, 1).algebra, -1).empty());
  }
  TEST_CASE("N6a and N7a Ricci spectra are not (n-1, 1)") {
    // The Ricci tensor of these metrics has off-diagonal entries; five or more
    // distinct eigenvalues leave no room for a rank-one correction.
    const auto r6 = ricci_oracle(make_n6a(1, 2).algebra);
    CHECK(eigenvalue_clusters(r6.eigenvalues).size() == 5);
    CHECK(qe_solve(make_n6a(1, 2).algebra, 1).empty());
    const auto r7 = ricci_oracle(make_n7a(1, 2).algebra);
    CHECK(eigenvalue_clusters(r7.eigenvalues).size() == 6);
    CHECK(qe_solve(make_n7a(1, 2).algebra, 1).empty());
  }
  TEST_CASE("no sign choice makes N6a or N7a quasi-Einstein") {
    for (int bits = 0; bits < 16; ++bits) {
      const SignFlags s{bits & 1 ? -1 : 1, bits & 2 ? -1 : 1, bits & 4 ? -1 : 1, bits & 8 ? -1 : 1};
      for (auto [a, c] : {std::pair{1.0, 2.0}, {1.0, 3.0}, {0.5, 0.9}}) {
        CHECK(qe_solve(make_n6a(a, c, s).algebra, 1).empty());
        CHECK(qe_solve(make_n7a(a, c, s).algebra, 1).empty());
      }
    }
  }
  TEST_CASE("R + h3 solution lies in the center") {
    const auto L = make_heisenberg_extension(1, 1.5, {{0.7}}).algebra;
    const auto sols = qe_solve(L, 1);
    REQUIRE(sols.size() == 2);
    CHECK(sols[0].lambda == doctest::Approx(-1.125));
    CHECK(center(L).contains(sols[0].X, 1e-9));
    CHECK(sols[0].X_central);
  }
  TEST_CASE("n = 2 affine line") {
    // Ric = -G: Einstein, one cluster.
    const auto sols = qe_solve(qt::affine_line(), 1);
    REQUIRE(sols.size() == 1);
    CHECK(sols[0].lambda == doctest::Approx(-1.0));
    CHECK(sols[0].einstein);
  }
  TEST_CASE("m = 0") { CHECK_THROWS_AS(qe_solve(qt::abelian(2), 0), Error); }
  TEST_CASE("first_nontrivial") {
    CHECK_FALSE(first_nontrivial(qe_solve(qt::abelian(3), 1)).has_value());
    CHECK(first_nontrivial(qe_solve(make_heisenberg(1, 1).algebra, 1)).has_value());
  }
}

TEST_SUITE("qe_operator") {
  TEST_CASE("H3: rank one onto z and not a derivation") {
    const auto L = make_heisenberg(1, 1).algebra;
    const auto sol = *first_nontrivial(qe_solve(L, 2));
    const Matrix F = qe_operator(L, sol).F;
    Matrix expected = Matrix::Zero(3, 3);
    expected(2, 2) = 1.0;  // g(X,X)/m = 2/2
    CHECK(max_abs(F - expected) <= 1e-12);
    CHECK_FALSE(is_derivation(L, F));
  }
  TEST_CASE("Ricci operator is lambda I + F") {
    const auto L = make_heisenberg_extension(2, 1, {{1, 0.5}}).algebra;
    const auto sol = *first_nontrivial(qe_solve(L, 1));
    const Matrix r = L.gram().ldlt().solve(ricci_oracle(L).ricci);
    CHECK(max_abs(r - sol.lambda * Matrix::Identity(6, 6) - qe_operator(L, sol).F) <= 1e-10);
  }
}

TEST_SUITE("verify_two_eigenvalue_structure") {
  TEST_CASE("H7 passes") {
    const auto L = make_heisenberg(3, 1).algebra;
    const auto sol = *first_nontrivial(qe_solve(L, 1));
    const auto r = verify_two_eigenvalue_structure(L, sol);
    CHECK(r.all_passed());
    for (const char* n : {"multiplicities", "lambda-negative", "center-dim-1", "center-in-derived"}) CHECK(passed(r, n));
  }
  TEST_CASE("abelian notes vacuity") {
    const auto L = qt::abelian(3);
    const auto r = verify_two_eigenvalue_structure(L, qe_solve(L, 1).front());
    CHECK_FALSE(r.notes.empty());
  }
  TEST_CASE("N6a with the candidate built from the top eigenvalue fails") {
    const auto L = make_n6a(1, 2).algebra;
    const auto rep = ricci_oracle(L);
    QESolution cand;
    cand.lambda = -2.0;
    cand.X = std::sqrt(rep.eigenvalues(5) + 2.0) * rep.eigenvectors.col(5);
    const auto r = verify_two_eigenvalue_structure(L, cand);
    CHECK_FALSE(passed(r, "multiplicities"));
    CHECK(passed(r, "lambda-negative"));
    CHECK(passed(r, "center-dim-1"));
    CHECK(passed(r, "center-in-derived"));
  }
  TEST_CASE("every check lists quantity and tolerance") {
    const auto L = make_heisenberg(1, 1).algebra;
    for (const auto& c : verify_two_eigenvalue_structure(L, *first_nontrivial(qe_solve(L, 1))).checks) {
      CHECK_FALSE(c.quantity.empty());
      CHECK(c.tolerance >= 0.0);
    }
  }
}

TEST_SUITE("verify_nilpotent_structure_theorem") {
  TEST_CASE("H5 ordered (x1, y1, z, x2, y2)") {
    const auto L = make_heisenberg(2, 1).algebra;
    const auto r = verify_nilpotent_structure_theorem(L, columns(5, {0, 1, 4, 2, 3}));
    CHECK(r.all_passed());
  }
  TEST_CASE("N6a with the declared basis") {
    const auto L = make_n6a(1, 2).algebra;
    const auto r = verify_nilpotent_structure_theorem(L, columns(6, {0, 1, 2, 3, 4, 5}));
    for (const char* n : {"xy-bracket", "xw-commute", "w-brackets", "z-central"}) CHECK(passed(r, n));
    // No totally left-invariant solution exists for this metric.
    CHECK_FALSE(passed(r, "lambda"));
  }
  TEST_CASE("perturbed H5 with [x1, x2] = z") {
    const auto L = qt::algebra(5, {{0, 1, 4, 1.0}, {2, 3, 4, 1.0}, {0, 2, 4, 1.0}});
    const auto r = verify_nilpotent_structure_theorem(L, columns(5, {0, 1, 4, 2, 3}));
    CHECK_FALSE(passed(r, "xw-commute"));
    CHECK(passed(r, "xy-bracket"));
  }
  TEST_CASE("bad partition") {
    const auto L = make_heisenberg(1, 1).algebra;
    CHECK_THROWS_AS(verify_nilpotent_structure_theorem(L, columns(3, {0, 1})), Error);
  }
  TEST_CASE("find_kirillov_basis") {
    const auto B = find_kirillov_basis(make_n6a(1, 2).algebra);
    REQUIRE(B.has_value());
    CHECK((*B).col(2) == unit(6, 2));
    // w2 - w3 is central in N7a, so no one-dimensional center to anchor z.
    CHECK(center(make_n7a(1, 2).algebra).dim() == 2);
    CHECK_FALSE(find_kirillov_basis(make_n7a(1, 2).algebra).has_value());
    CHECK_FALSE(find_kirillov_basis(qt::abelian(3)).has_value());
  }
}

TEST_SUITE("verify_solvable_conditions") {
  TEST_CASE("R + h3") {
    const double alpha = 0.9, c = 1.4;
    const auto L = make_heisenberg_extension(1, c, {{alpha}}).algebra;
    CHECK(L.gram()(0, 0) == doctest::Approx(4 * alpha * alpha / (c * c)));
    const auto r = verify_solvable_conditions(L, span_units(4, {0}), span_units(4, {1, 2, 3}), 1);
    CHECK(r.all_passed());
  }
  TEST_CASE("bi-extension R2 + h5") {
    const auto L = make_heisenberg_extension(2, 1, {{1.2, 0}, {0, 0.7}}).algebra;
    const auto r = verify_solvable_conditions(L, span_units(7, {0, 1}), span_units(7, {2, 3, 4, 5, 6}), 1);
    CHECK(r.all_passed());
  }
  TEST_CASE("g(a,a) perturbed by 10%") {
    auto L = make_heisenberg_extension(1, 1, {{1}}).algebra;
    Matrix G = L.gram();
    G(0, 0) *= 1.1;
    const auto r = verify_solvable_conditions(L.with_gram(G), span_units(4, {0}), span_units(4, {1, 2, 3}), 1);
    CHECK(passed(r, "(i)"));
    CHECK(passed(r, "(ii)"));
    CHECK(passed(r, "(iii)"));
    CHECK_FALSE(passed(r, "(iv)"));
  }
  TEST_CASE("non-normal ad_a") {
    const auto L = qt::algebra(4, {{0, 1, 1, 1.0}, {0, 1, 2, 0.0}, {0, 2, 1, 1.0}, {0, 2, 2, -1.0}, {1, 2, 3, 1.0}});
    CHECK(is_unimodular(L));
    CHECK_THROWS_AS(verify_solvable_conditions(L, span_units(4, {0}), span_units(4, {1, 2, 3}), 1), Error);
  }
  TEST_CASE("m = 0 and non-unimodular") {
    const auto L = make_heisenberg_extension(1, 1, {{1}}).algebra;
    CHECK_THROWS_AS(verify_solvable_conditions(L, span_units(4, {0}), span_units(4, {1, 2, 3}), 0), Error);
    CHECK_THROWS_AS(verify_solvable_conditions(qt::affine_line(), span_units(2, {0}), span_units(2, {1}), 1), Error);
  }
}

TEST_SUITE("verify_heisenberg_extension_form") {
  TEST_CASE("R + h5 with the basis listed as (x1, x2, y1, y2, z)") {
    const auto L = make_heisenberg_extension(2, 1, {{1, 2}}).algebra;
    const auto r = verify_heisenberg_extension_form(L, span_units(6, {0}), columns(6, {1, 3, 2, 4, 5}));
    CHECK(r.all_passed());
  }
  TEST_CASE("nonzero z-column") {
    // ad_a = diag(1, 0, 1) on (x, y, z); [a, z] = z.
    const auto L = qt::algebra(4, {{0, 1, 1, 1.0}, {0, 3, 3, 1.0}, {1, 2, 3, 1.0}});
    const auto r = verify_heisenberg_extension_form(L, span_units(4, {0}), columns(4, {1, 2, 3}));
    CHECK_FALSE(passed(r, "pattern"));
  }
  TEST_CASE("dim a exceeds s") {
    // R2 + h3 with a2 central.
    const auto L = qt::algebra(5, {{0, 2, 2, 1.0}, {0, 3, 3, -1.0}, {2, 3, 4, 1.0}});
    const auto r = verify_heisenberg_extension_form(L, span_units(5, {0, 1}), columns(5, {2, 3, 4}));
    CHECK_FALSE(passed(r, "dim-bound"));
  }
  TEST_CASE("not a Heisenberg basis") {
    const auto L = make_heisenberg_extension(1, 1, {{1}}).algebra;
    CHECK_THROWS_AS(verify_heisenberg_extension_form(L, span_units(4, {0}), columns(4, {0, 1, 2})), Error);
  }
}

TEST_SUITE("nilradical_split") {
  TEST_CASE("R + h5") {
    const auto L = make_heisenberg_extension(2, 1, {{1, 1}}).algebra;
    const auto s = nilradical_split(L);
    CHECK(s.a.dim() == 1);
    CHECK(s.n.dim() == 5);
    CHECK(s.a.contains(Vector(unit(6, 0)), 1e-10));
  }
}
