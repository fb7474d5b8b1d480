#include "qelie/coefficient.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <string>

#include "qelie/error.hpp"

namespace qelie {

std::string_view to_string(Errc code) {
  switch (code) {
    case Errc::DimensionMismatch: return "DimensionMismatch";
    case Errc::InvalidTensor: return "InvalidTensor";
    case Errc::GramNotPositiveDefinite: return "GramNotPositiveDefinite";
    case Errc::NotSolvable: return "NotSolvable";
    case Errc::NotNilpotent: return "NotNilpotent";
    case Errc::NotUnimodular: return "NotUnimodular";
    case Errc::VerificationFailed: return "VerificationFailed";
    case Errc::SplitNotOrthogonal: return "SplitNotOrthogonal";
    case Errc::SplitInvalid: return "SplitInvalid";
    case Errc::PreconditionFailed: return "PreconditionFailed";
    case Errc::ZeroM: return "ZeroM";
    case Errc::BadPartition: return "BadPartition";
    case Errc::AdANotNormal: return "AdANotNormal";
    case Errc::BasisNotHeisenberg: return "BasisNotHeisenberg";
    case Errc::BadParams: return "BadParams";
    case Errc::ActionsDoNotCommute: return "ActionsDoNotCommute";
    case Errc::NotApplicable: return "NotApplicable";
    case Errc::ParseError: return "ParseError";
    case Errc::ValidationError: return "ValidationError";
    case Errc::FileNotFound: return "FileNotFound";
    case Errc::BadFlags: return "BadFlags";
  }
  return "Unknown";
}

namespace {

bool is_integer_literal(std::string_view s) {
  if (!s.empty() && (s[0] == '-' || s[0] == '+')) s.remove_prefix(1);
  if (s.empty()) return false;
  for (char ch : s)
    if (ch < '0' || ch > '9') return false;
  return true;
}

std::string trim(std::string_view s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

}  // namespace

Coefficient Coefficient::parse(std::string_view text) {
  std::string s = trim(text);
  auto slash = s.find('/');
  if (slash != std::string::npos) {
    std::string num = s.substr(0, slash), den = s.substr(slash + 1);
    if (!is_integer_literal(num) || !is_integer_literal(den) || den[0] == '-' || den[0] == '+')
      throw Error(Errc::ParseError, "bad rational literal '" + s + "'");
    if (num[0] == '+') num.erase(0, 1);
    mpz_class d(den);
    if (d == 0) throw Error(Errc::ParseError, "zero denominator in '" + s + "'");
    return Coefficient(mpq_class(mpz_class(num), d));
  }
  if (is_integer_literal(s)) {
    if (s[0] == '+') s.erase(0, 1);
    return Coefficient(mpq_class(mpz_class(s)));
  }
  std::size_t used = 0;
  double v = 0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw Error(Errc::ParseError, "bad number '" + s + "'");
  }
  if (used != s.size() || !std::isfinite(v)) throw Error(Errc::ParseError, "bad number '" + s + "'");
  return Coefficient(v);
}

double Coefficient::to_double() const {
  if (is_exact()) return exact().get_d();
  return std::get<double>(value_);
}

std::string Coefficient::str() const {
  if (is_exact()) return exact().get_str();
  std::string s = format_number(std::get<double>(value_));
  if (s.find_first_of(".eEn") == std::string::npos) s += ".0";
  return s;
}

bool operator==(const Coefficient& a, const Coefficient& b) {
  if (a.is_exact() != b.is_exact()) return false;
  if (a.is_exact()) return a.exact() == b.exact();
  return std::get<double>(a.value_) == std::get<double>(b.value_);
}

bool exact_sqrt(const mpq_class& q, mpq_class& root) {
  if (sgn(q) < 0) return false;
  mpz_class n = q.get_num(), d = q.get_den();
  if (!mpz_perfect_square_p(n.get_mpz_t()) || !mpz_perfect_square_p(d.get_mpz_t())) return false;
  mpz_class rn, rd;
  mpz_sqrt(rn.get_mpz_t(), n.get_mpz_t());
  mpz_sqrt(rd.get_mpz_t(), d.get_mpz_t());
  root = mpq_class(rn, rd);
  root.canonicalize();
  return true;
}

std::string format_number(double v) {
  if (v == 0.0) v = 0.0;  // no "-0"
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.15g", v);
  std::string s(buf);
  if (s == "-0") s = "0";
  return s;
}

double round15(double v) {
  if (!std::isfinite(v)) return v;
  return std::stod(format_number(v));
}

}  // namespace qelie
