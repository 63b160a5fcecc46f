#pragma once

#include <stdexcept>
#include <string>

namespace fadecap {

enum class Errc {
  // channel validation
  LengthMismatch,
  InvalidPmf,
  NonPositiveParameter,
  StronglyDegraded,
  DegenerateFading,
  // root isolation
  PoleEvaluation,
  DegreeCollapse,
  RootCountMismatch,
  // bound evaluation
  AlphaInfeasible,
  NonPositiveLogArgument,
  BetaOutOfRange,
  GapNegative,
  GapExceedsBound,
  // numerical oracles
  NonPositiveVariance,
  NonConvergence,
  ConcavityViolated,
  EpiViolated,
  QuadratureNonConvergence,
  // front-end
  ConfigError,
};

/// Stable machine-readable identifier, e.g. "invalid_pmf".
const char* errc_name(Errc code);

/// Process exit code the CLI maps this error class to (2, 3 or 4).
int errc_exit_code(Errc code);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  Errc code() const { return code_; }
  const char* code_name() const { return errc_name(code_); }

 private:
  Errc code_;
};

}  // namespace fadecap
