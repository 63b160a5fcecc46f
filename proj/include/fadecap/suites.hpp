#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fadecap/analysis.hpp"
#include "fadecap/exec.hpp"

namespace fadecap {

struct SuiteResult {
  std::string name;
  std::size_t trials = 0;
  std::size_t failures = 0;
  double worst_residual = 0.0;  // largest deviation seen, passing or not
  std::string detail;           // first failure's message, empty when clean
};

struct VerifySummary {
  std::vector<SuiteResult> suites;
  bool all_passed = true;
};

/// Runs the six verification suites (root structure, alpha feasibility,
/// oracle equivalence, entropy-power combination, Costa concavity, beta
/// endpoints) on `trials` randomized instances each. Trial t draws its
/// own generator from (seed, suite, t), so results do not depend on the
/// execution policy or thread count.
VerifySummary run_all_suites_random(std::size_t trials, std::uint64_t seed,
                                    Exec exec = Exec::Serial);

/// Same suites pinned to one channel; the randomized inputs the EPI and
/// concavity suites need are drawn from a fixed seed.
VerifySummary run_all_suites_config(const ChannelSpec& spec,
                                    Exec exec = Exec::Serial);

}  // namespace fadecap
