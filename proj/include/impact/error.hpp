#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace impact {

enum class ErrorCode {
  InvalidArgument,
  LagMismatch,
  SingularityRisk,
  DegenerateKernel,
  NonsingularityViolation,
  WrongArity,
  Domain,
  SingularFlow,
  Scale,
  NoLinearSolution,
  DegenerateSchedule,
  ShermanMorrisonDegeneracy,
  NotPositiveDefinite,
  Parse,
  Io,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Every failure raised by the library carries a machine-checkable code so
/// callers (and tests) can distinguish e.g. a singular flow from a bad grid.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace impact
