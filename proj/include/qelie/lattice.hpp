#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qelie/coefficient.hpp"
#include "qelie/metric_lie_algebra.hpp"

namespace qelie {

using Triple = std::array<std::int64_t, 3>;

/// Machine-checked infinite-descent argument for x^2 + 3y^2 = 2z^2.
struct Mod3Certificate {
  std::array<std::int64_t, 3> coefficients{1, 3, 2};
  std::vector<int> square_residues;                 // {k^2 mod 3}
  std::vector<std::array<int, 2>> admissible_xz;    // (x, z) mod 3 with x^2 = 2 z^2
  std::vector<int> admissible_y_after_division;     // y mod 3 with 9 | 3 y^2
  // 3-adic valuation parities of x^2, 3y^2, 2z^2: true = odd.
  std::array<bool, 3> valuation_odd{false, true, false};
  bool valid = false;
};

enum class LatticeVerdict { Rational, Obstructed, Unknown };

struct Obstruction {
  Triple equation{1, 3, 2};  // p x^2 + q y^2 = r z^2
  std::string verdict = "no-nonzero-solution-up-to-bound";
  std::int64_t bound = 0;
  std::size_t solutions_found = 0;
  std::string reduction;
  std::optional<Mod3Certificate> certificate;
};

struct RationalityReport {
  bool all_rational = false;
  LatticeVerdict verdict = LatticeVerdict::Unknown;
  std::optional<Matrix> witness_basis;
  std::optional<Obstruction> obstruction;
  std::vector<std::string> details;
};

/// Rationality of the declared structure constants. Exact mode: true iff the
/// algebra carries an exact tensor. Float mode: each constant must lie within
/// an effective tolerance of p/q with q <= denominator_bound (see .cpp).
RationalityReport rational_structure_check(const MetricLieAlgebra& L, std::int64_t denominator_bound);

/// Best rational approximation with denominator <= bound (continued fractions).
mpq_class best_rational_approximation(double x, std::int64_t bound);
/// Tolerance used by rational_structure_check for a value x.
double rational_tolerance(double x, std::int64_t bound);

/// All (x,y,z) with 0 < max(|x|,|y|,|z|) <= bound and p x^2 + q y^2 = r z^2,
/// lexicographically sorted. Exact 64-bit arithmetic; throws Errc::BadParams if
/// the bound could overflow.
std::vector<Triple> diophantine_search(std::int64_t p, std::int64_t q, std::int64_t r, std::int64_t bound);

/// Throws Errc::NotApplicable unless (p,q,r) = (1,3,2).
Mod3Certificate mod3_descent_certificate(std::int64_t p, std::int64_t q, std::int64_t r);
/// Re-derives every claim of a certificate by enumeration.
bool validate_certificate(const Mod3Certificate& cert);

/// Simultaneous rationality of sqrt((c^2-3a^2)/2) and sqrt((c^2+a^2)/2) would give
/// a rational point on x^2 + 3y^2 = 2z^2. Throws Errc::BadParams for float
/// inputs or c^2 < 3a^2.
RationalityReport n6a_lattice_obstruction(const Coefficient& a, const Coefficient& c,
                                          std::int64_t bound = 1000);
/// Same reduction for n7a via d^2 + 3b^2 = 2c^2.
RationalityReport n7a_lattice_obstruction(const Coefficient& a, const Coefficient& c,
                                          std::int64_t bound = 1000);

std::string to_string(LatticeVerdict v);

}  // namespace qelie
