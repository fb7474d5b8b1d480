#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qelie/catalog.hpp"
#include "qelie/coefficient.hpp"
#include "qelie/metric_lie_algebra.hpp"

namespace qelie {

struct BracketEntry {
  std::string i, j, k;
  Coefficient coeff;
};

struct MetricEntry {
  std::string i, j;
  double value = 0.0;
};

struct FamilyTag {
  std::string name;
  std::map<std::string, std::string> params;
};

/// JSON algebra file:
///   {"name": "h3", "dim": 3, "basis": ["x","y","z"],
///    "brackets": [["x","y","z","1"]],
///    "metric": [["x","x",4]],                       (optional, identity default)
///    "family": {"name": "heisenberg", "params": {"s":"1","c":"1"}}}   (optional)
/// Coefficients are strings: rational literals are exact, decimals are floats.
struct AlgebraDocument {
  std::string name;
  std::vector<std::string> basis;
  std::vector<BracketEntry> brackets;  // canonical: i < j in basis order, then k
  std::vector<MetricEntry> metric;     // canonical: i <= j, entries differing from identity
  std::optional<FamilyTag> family;
  MetricLieAlgebra algebra;
};

/// Throws Errc::ParseError (with line and column) or Errc::ValidationError.
AlgebraDocument parse_algebra(std::string_view text);
/// Reads a file; Errc::FileNotFound when it cannot be opened.
AlgebraDocument load_algebra(const std::string& path);

AlgebraDocument document_from_algebra(const std::string& name, const MetricLieAlgebra& L,
                                      std::optional<FamilyTag> family = std::nullopt);
AlgebraDocument document_from_entry(const CatalogEntry& entry);

/// Canonical, byte-deterministic JSON text (two-space indent, trailing newline).
std::string emit_algebra(const AlgebraDocument& doc);

/// Same labels, same exactness, structure constants and Gram equal (exactly in
/// rational mode, within tol otherwise).
bool structurally_equal(const MetricLieAlgebra& a, const MetricLieAlgebra& b, double tol = 1e-12);

}  // namespace qelie
