#include "qelie/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "qelie/error.hpp"

namespace qelie {

namespace {

using i128 = __int128;

std::int64_t isqrt(std::int64_t v) {
  auto r = static_cast<std::int64_t>(std::sqrt(static_cast<long double>(v)));
  while (r > 0 && static_cast<i128>(r) * r > v) --r;
  while (static_cast<i128>(r + 1) * (r + 1) <= v) ++r;
  return r;
}

int v3(std::int64_t k) {
  int v = 0;
  while (k != 0 && k % 3 == 0) k /= 3, ++v;
  return v;
}

std::vector<int> square_residues_mod3() {
  std::set<int> s;
  for (int k = 0; k < 3; ++k) s.insert(k * k % 3);
  return {s.begin(), s.end()};
}

std::vector<std::array<int, 2>> admissible_xz_mod3() {
  std::vector<std::array<int, 2>> out;
  for (int x = 0; x < 3; ++x)
    for (int z = 0; z < 3; ++z)
      if ((x * x - 2 * z * z) % 3 == 0) out.push_back({x, z});
  return out;
}

// After x = 3x', z = 3z': 9x'^2 + 3y^2 = 18z'^2, so 9 | 3y^2.
std::vector<int> admissible_y_mod3() {
  std::vector<int> out;
  for (int y = 0; y < 9; ++y)
    if ((3 * y * y) % 9 == 0 && std::find(out.begin(), out.end(), y % 3) == out.end()) out.push_back(y % 3);
  return out;
}

void require_rational(const Coefficient& a, const Coefficient& c) {
  if (!a.is_exact() || !c.is_exact()) throw Error(Errc::BadParams, "lattice obstruction needs rational a and c");
  if (c.exact() == 0) throw Error(Errc::BadParams, "c must be nonzero");
  if (c.exact() * c.exact() < 3 * a.exact() * a.exact()) throw Error(Errc::BadParams, "c^2 < 3a^2");
}

RationalityReport obstruction_report(const mpq_class& u2, const mpq_class& b2, const mpq_class& c2,
                                     const std::string& uname, std::int64_t bound) {
  RationalityReport r;
  r.all_rational = false;
  r.verdict = LatticeVerdict::Obstructed;
  const bool identity = u2 + 3 * b2 == 2 * c2;
  r.details.push_back(uname + "^2 = " + u2.get_str() + ", b^2 = " + b2.get_str() + ", c^2 = " + c2.get_str());
  r.details.push_back(uname + "^2 + 3 b^2 = 2 c^2 " + std::string(identity ? "holds exactly" : "FAILS"));
  if (!identity) {
    r.verdict = LatticeVerdict::Unknown;
    return r;
  }
  Obstruction ob;
  ob.bound = bound;
  ob.solutions_found = diophantine_search(1, 3, 2, bound).size();
  ob.reduction = "rational " + uname + ", b, c with c != 0 clear denominators to a nonzero integer solution of "
                 "x^2 + 3y^2 = 2z^2";
  ob.certificate = mod3_descent_certificate(1, 3, 2);
  if (ob.solutions_found != 0 || !ob.certificate->valid) r.verdict = LatticeVerdict::Unknown;
  r.obstruction = ob;
  return r;
}

}  // namespace

mpq_class best_rational_approximation(double x, std::int64_t bound) {
  if (bound < 1) throw Error(Errc::BadParams, "denominator bound must be positive");
  const mpq_class target(x);
  mpq_class rem = target;
  mpz_class h1 = 1, h2 = 0, k1 = 0, k2 = 1;
  const mpz_class B(static_cast<long>(bound));
  mpq_class best = mpq_class(mpz_class(floor(target.get_d())));
  for (int it = 0; it < 200; ++it) {
    mpz_class a;
    mpz_fdiv_q(a.get_mpz_t(), rem.get_num_mpz_t(), rem.get_den_mpz_t());
    mpz_class h = a * h1 + h2, k = a * k1 + k2;
    if (k > B) {
      // best semiconvergent within the bound
      mpz_class t = (B - k2) / k1;
      if (t > 0) {
        mpq_class semi(t * h1 + h2, t * k1 + k2);
        semi.canonicalize();
        if (abs(semi - target) < abs(best - target)) best = semi;
      }
      break;
    }
    best = mpq_class(h, k);
    best.canonicalize();
    h2 = h1, h1 = h, k2 = k1, k1 = k;
    mpq_class frac = rem - mpq_class(a);
    if (frac == 0) break;
    rem = 1 / frac;
  }
  return best;
}

double rational_tolerance(double x, std::int64_t bound) {
  const double b = static_cast<double>(bound);
  const double eps = std::numeric_limits<double>::epsilon();
  return std::max(8 * eps * std::max(1.0, std::abs(x)), std::min(1e-12, 1.0 / (1000.0 * b * b)));
}

RationalityReport rational_structure_check(const MetricLieAlgebra& L, std::int64_t denominator_bound) {
  RationalityReport r;
  const std::size_t n = L.dim();
  if (L.is_exact()) {
    r.all_rational = true;
    r.verdict = LatticeVerdict::Rational;
    r.witness_basis = Matrix::Identity(n, n);
    r.details.push_back("exact rational structure constants in the declared basis");
    return r;
  }
  r.all_rational = true;
  for (std::size_t i = 0; i < n && r.all_rational; ++i)
    for (std::size_t j = i + 1; j < n && r.all_rational; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        const double v = L.tensor()(i, j, k);
        if (v == 0.0) continue;
        const mpq_class q = best_rational_approximation(v, denominator_bound);
        const double err = std::abs(v - q.get_d());
        const std::string where = "[" + L.labels()[i] + "," + L.labels()[j] + "]_" + L.labels()[k];
        if (err > rational_tolerance(v, denominator_bound)) {
          r.all_rational = false;
          r.details.push_back(where + " = " + format_number(v) + " is not within tolerance of a rational with "
                              "denominator <= " + std::to_string(denominator_bound) + " (closest " + q.get_str() +
                              ", error " + format_number(err) + ")");
          break;
        }
        r.details.push_back(where + " = " + q.get_str());
      }
  if (r.all_rational) {
    r.verdict = LatticeVerdict::Rational;
    r.witness_basis = Matrix::Identity(n, n);
  } else {
    r.verdict = LatticeVerdict::Unknown;
  }
  return r;
}

std::vector<Triple> diophantine_search(std::int64_t p, std::int64_t q, std::int64_t r, std::int64_t bound) {
  if (p < 1 || q < 1 || r < 1) throw Error(Errc::BadParams, "coefficients must be positive");
  if (bound < 1) throw Error(Errc::BadParams, "bound must be at least 1");
  const i128 limit = static_cast<i128>(std::numeric_limits<std::int64_t>::max()) / 4;
  const i128 b2 = static_cast<i128>(bound) * bound;
  if (b2 * std::max({p, q, r}) > limit) throw Error(Errc::BadParams, "bound too large for exact 64-bit search");

  std::vector<Triple> out;
  for (std::int64_t y = 0; y <= bound; ++y)
    for (std::int64_t z = 0; z <= bound; ++z) {
      const std::int64_t rhs = r * z * z - q * y * y;
      if (rhs < 0 || rhs % p != 0) continue;
      const std::int64_t x2 = rhs / p;
      const std::int64_t x = isqrt(x2);
      if (x * x != x2 || x > bound || (x == 0 && y == 0 && z == 0)) continue;
      for (int sx : {-1, 1})
        for (int sy : {-1, 1})
          for (int sz : {-1, 1}) {
            if ((x == 0 && sx < 0) || (y == 0 && sy < 0) || (z == 0 && sz < 0)) continue;
            out.push_back({sx * x, sy * y, sz * z});
          }
    }
  std::sort(out.begin(), out.end());
  return out;
}

Mod3Certificate mod3_descent_certificate(std::int64_t p, std::int64_t q, std::int64_t r) {
  if (p != 1 || q != 3 || r != 2)
    throw Error(Errc::NotApplicable, "mod-3 descent certificate only covers x^2 + 3y^2 = 2z^2");
  Mod3Certificate c;
  c.square_residues = square_residues_mod3();
  c.admissible_xz = admissible_xz_mod3();
  c.admissible_y_after_division = admissible_y_mod3();
  c.valuation_odd = {false, true, false};
  c.valid = validate_certificate(c);
  return c;
}

bool validate_certificate(const Mod3Certificate& c) {
  if (c.coefficients != std::array<std::int64_t, 3>{1, 3, 2}) return false;
  if (c.square_residues != square_residues_mod3() || c.square_residues != std::vector<int>{0, 1}) return false;
  // x^2 = 2z^2 (mod 3) must force 3 | x and 3 | z.
  if (c.admissible_xz != admissible_xz_mod3() || c.admissible_xz != std::vector<std::array<int, 2>>{{0, 0}})
    return false;
  if (c.admissible_y_after_division != admissible_y_mod3() || c.admissible_y_after_division != std::vector<int>{0})
    return false;
  // Parity of the 3-adic valuations of x^2, 3y^2, 2z^2 for nonzero arguments.
  for (std::int64_t k = 1; k <= 3000; ++k) {
    const bool odd[3] = {v3(k * k) % 2 == 1, v3(3 * k * k) % 2 == 1, v3(2 * k * k) % 2 == 1};
    for (int t = 0; t < 3; ++t)
      if (odd[t] != c.valuation_odd[t]) return false;
  }
  return true;
}

RationalityReport n6a_lattice_obstruction(const Coefficient& a, const Coefficient& c, std::int64_t bound) {
  require_rational(a, c);
  const mpq_class a2 = a.exact() * a.exact(), c2 = c.exact() * c.exact();
  return obstruction_report((c2 - 3 * a2) / 2, (c2 + a2) / 2, c2, "b12", bound);
}

RationalityReport n7a_lattice_obstruction(const Coefficient& a, const Coefficient& c, std::int64_t bound) {
  require_rational(a, c);
  if (a.exact() == 0) throw Error(Errc::BadParams, "n7a needs a != 0");
  const mpq_class a2 = a.exact() * a.exact(), c2 = c.exact() * c.exact();
  return obstruction_report((c2 - 3 * a2) / 2, (a2 + c2) / 2, c2, "d", bound);
}

std::string to_string(LatticeVerdict v) {
  switch (v) {
    case LatticeVerdict::Rational: return "rational";
    case LatticeVerdict::Obstructed: return "obstructed";
    case LatticeVerdict::Unknown: return "unknown";
  }
  return "unknown";
}

}  // namespace qelie
