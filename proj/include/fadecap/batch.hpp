#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fadecap/analysis.hpp"
#include "fadecap/exec.hpp"

namespace fadecap {

/// One sweep row: either a full analysis at q, or the error code that
/// stopped it. Rows fail independently; a sweep never aborts midway.
struct SweepRow {
  double q = 0.0;
  std::optional<AnalysisRecord> record;
  std::string error;  // error code name, empty on success
};

/// Power grid, ascending, with exact endpoints. Throws ConfigError unless
/// 0 < q_min < q_max and points >= 2.
std::vector<double> make_q_grid(double q_min, double q_max,
                                std::size_t points, bool log_spacing);

/// Analyzes the base channel at every power in qs. Rows are independent,
/// so the parallel policy assigns whole rows to threads and the output is
/// identical to the serial one.
std::vector<SweepRow> run_sweep(const ChannelSpec& base,
                                const std::vector<double>& qs,
                                Exec exec = Exec::Serial);

}  // namespace fadecap
