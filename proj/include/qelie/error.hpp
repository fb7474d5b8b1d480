#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace qelie {

enum class Errc {
  DimensionMismatch,
  InvalidTensor,
  GramNotPositiveDefinite,
  NotSolvable,
  NotNilpotent,
  NotUnimodular,
  VerificationFailed,
  SplitNotOrthogonal,
  SplitInvalid,
  PreconditionFailed,
  ZeroM,
  BadPartition,
  AdANotNormal,
  BasisNotHeisenberg,
  BadParams,
  ActionsDoNotCommute,
  NotApplicable,
  ParseError,
  ValidationError,
  FileNotFound,
  BadFlags,
};

std::string_view to_string(Errc code);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace qelie
