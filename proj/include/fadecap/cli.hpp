#pragma once

#include <iosfwd>
#include <string>

#include "fadecap/channel.hpp"

namespace fadecap {

/// Loaded CLI configuration: the raw channel plus tolerance overrides.
struct LoadedConfig {
  RawChannel raw;
  Tolerances tol;
};

/// Reads and strictly validates a JSON config file: required keys h, p,
/// g, q; optional tolerances {state_merge, pmf_sum, root_residual};
/// anything else is rejected (ConfigError).
LoadedConfig load_config(const std::string& path);

/// Full command-line entry point (analyze / sweep / verify). Writes
/// reports to `out` and one-line error objects to `err`; returns the
/// process exit code: 0 success, 2 validation, 3 degraded/degenerate
/// channel, 4 numerical failure, and 1 for verification-suite failures.
int run_cli(int argc, const char* const* argv, std::ostream& out,
            std::ostream& err);

}  // namespace fadecap
