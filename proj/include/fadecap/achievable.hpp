#pragma once

#include "fadecap/bounds.hpp"

namespace fadecap {

/// Superposition split: a fraction beta of the power carries the message
/// for the constant-gain user, the rest the faded user's message.
struct AchievableReport {
  double beta_star = 1.0;  // maximizing power split, always 0 or 1
  double sr_ach = 0.0;     // achieved sum rate at beta_star, bits
  double r_at_zero = 0.0;  // sum rate with all power on the faded user
  double r_at_one = 0.0;   // sum rate with all power on the constant user
};

enum class GapSetting {
  Case1Bound,   // interior x*: log-ratio bound at x*
  Case3Bound,   // mirrored x*: log-ratio bound at -x*
  Setting1_B1,  // bounds coincide at the q corner
  Setting2_B2,  // bounds coincide at the zero corner
  Setting3_B3,  // bounds coincide at the q corner
};

const char* to_string(GapSetting s);

struct GapReport {
  double gap = 0.0;        // sr_upper - sr_ach, bits
  double gap_bound = 0.0;  // certified ceiling on the gap, bits
  GapSetting setting = GapSetting::Case1Bound;
  /// r(0) - r(1): positive when the faded user alone achieves more than
  /// the constant-gain user alone. Fixed in sign by the channel, not q.
  double beta_preference = 0.0;
};

/// Sum rate of the superposition scheme at power split beta in [0, 1].
double r_ach(const ChannelSpec& spec, double beta);

/// The split objective is quasiconvex in beta, so the maximum sits at an
/// endpoint; ties within 1e-12 resolve to beta = 1.
AchievableReport maximize_r_ach(const ChannelSpec& spec);

/// Gap between the bounds plus the case-dependent ceiling certified for
/// it. Throws GapNegative if the "upper" bound falls below the achieved
/// rate, GapExceedsBound if the measured gap breaks its own ceiling --
/// either one means a computation upstream is wrong.
GapReport gap_analysis(const ChannelSpec& spec, const UpperBoundReport& ub,
                       const AchievableReport& ach);

}  // namespace fadecap
