#pragma once

#include <cstdint>
#include <string>

#include <json.hpp>

#include "qelie/metric_lie_algebra.hpp"

namespace qelie {

struct CommandOptions {
  double tol = kDefaultTol;
  std::string formula = "oracle";  // oracle | nilpotent | solvable | standard
  double m = 1.0;
  std::string family;
  std::string params;  // "k=v,k=v"; matrices as "1 0;0 1"
  std::string emit;
  std::int64_t bound = 1000;
  std::int64_t denominator_bound = 1000000;
};

struct CommandResult {
  int exit_code = 0;
  std::string text;
  nlohmann::ordered_json json;
};

/// QELIE_TOL when set and valid, else 1e-9.
double default_tolerance();

CommandResult cmd_check(const std::string& path, const CommandOptions& opts);
CommandResult cmd_ricci(const std::string& path, const CommandOptions& opts);
CommandResult cmd_qe(const std::string& path, const CommandOptions& opts);
CommandResult cmd_catalog(const CommandOptions& opts);
CommandResult cmd_lattice(const std::string& path, const CommandOptions& opts);

/// Exit code for an error escaping a command: 2 for usage and input problems,
/// 1 for domain failures.
int exit_code_for(const std::exception& e);

}  // namespace qelie
