#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>
#include <variant>

namespace qelie {

/// A structure constant or parameter that is either an exact rational or a
/// binary float. Rational literals ("3", "-3/2") parse exactly; anything with a
/// decimal point or exponent parses as a float.
class Coefficient {
 public:
  Coefficient() : value_(mpq_class(0)) {}
  Coefficient(int v) : value_(mpq_class(v)) {}
  Coefficient(long v) : value_(mpq_class(v)) {}
  Coefficient(const mpq_class& v) : value_(v) { std::get<mpq_class>(value_).canonicalize(); }
  Coefficient(double v) : value_(v) {}

  static Coefficient parse(std::string_view text);

  bool is_exact() const { return std::holds_alternative<mpq_class>(value_); }
  const mpq_class& exact() const { return std::get<mpq_class>(value_); }
  double to_double() const;

  /// Canonical text form: "p" or "p/q" for exact values, a float literal that
  /// always carries a '.' or exponent otherwise (15 significant digits).
  std::string str() const;

  friend bool operator==(const Coefficient& a, const Coefficient& b);

 private:
  std::variant<mpq_class, double> value_;
};

/// Exact square root of a non-negative rational, when it is rational.
bool exact_sqrt(const mpq_class& q, mpq_class& root);

/// Formats with 15 significant digits ("%.15g").
std::string format_number(double v);

/// Rounds to 15 significant digits, so JSON output matches text output.
double round15(double v);

}  // namespace qelie
