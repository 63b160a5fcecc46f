#include "fadecap/achievable.hpp"

#include <cmath>
#include <sstream>

namespace fadecap {

const char* to_string(GapSetting s) {
  switch (s) {
    case GapSetting::Case1Bound:
      return "Case1Bound";
    case GapSetting::Case3Bound:
      return "Case3Bound";
    case GapSetting::Setting1_B1:
      return "Setting1_B1";
    case GapSetting::Setting2_B2:
      return "Setting2_B2";
    case GapSetting::Setting3_B3:
      return "Setting3_B3";
  }
  return "unknown";
}

double r_ach(const ChannelSpec& spec, double beta) {
  if (!(beta >= 0.0 && beta <= 1.0)) {
    std::ostringstream os;
    os << "power split beta = " << beta << " outside [0, 1]";
    throw Error(Errc::BetaOutOfRange, os.str());
  }
  const double q = spec.q;
  double r = 0.5 * std::log2(1.0 + beta * spec.g * spec.g * q);
  for (std::size_t i = 0; i < spec.size(); ++i) {
    const double h2q = spec.h[i] * spec.h[i] * q;
    r += spec.p[i] * 0.5 * std::log2((1.0 + h2q) / (1.0 + beta * h2q));
  }
  return r;
}

AchievableReport maximize_r_ach(const ChannelSpec& spec) {
  AchievableReport rep;
  rep.r_at_zero = r_ach(spec, 0.0);
  rep.r_at_one = r_ach(spec, 1.0);
  if (rep.r_at_zero > rep.r_at_one + 1e-12) {
    rep.beta_star = 0.0;
    rep.sr_ach = rep.r_at_zero;
  } else {
    rep.beta_star = 1.0;
    rep.sr_ach = rep.r_at_one;
  }
  return rep;
}

GapReport gap_analysis(const ChannelSpec& spec, const UpperBoundReport& ub,
                       const AchievableReport& ach) {
  GapReport rep;
  rep.gap = ub.sr_upper - ach.sr_ach;
  rep.beta_preference = ach.r_at_zero - ach.r_at_one;

  const double x = ub.root.x_star;
  const double g2 = spec.g * spec.g;
  switch (ub.case_label) {
    case CaseLabel::Case1: {
      rep.setting = GapSetting::Case1Bound;
      double b = -0.5 * std::log2(1.0 + g2 * x);
      for (std::size_t i = 0; i < spec.size(); ++i) {
        b += spec.p[i] * 0.5 *
             std::log2(1.0 + spec.h[i] * spec.h[i] * x);
      }
      rep.gap_bound = b;
      break;
    }
    case CaseLabel::Case3: {
      rep.setting = GapSetting::Case3Bound;
      double b = -0.5 * std::log2(-g2 * x - 1.0);
      for (std::size_t i = 0; i < spec.size(); ++i) {
        b += spec.p[i] * 0.5 *
             std::log2(-spec.h[i] * spec.h[i] * x - 1.0);
      }
      rep.gap_bound = b;
      break;
    }
    case CaseLabel::Case2_B1:
      rep.setting = GapSetting::Setting1_B1;
      rep.gap_bound = 0.0;
      break;
    case CaseLabel::Case2_B2:
      rep.setting = GapSetting::Setting2_B2;
      rep.gap_bound = 0.0;
      break;
    case CaseLabel::Case2_B3:
      rep.setting = GapSetting::Setting3_B3;
      rep.gap_bound = 0.0;
      break;
  }

  if (rep.gap < -1e-9) {
    std::ostringstream os;
    os << "upper bound " << ub.sr_upper << " lies below the achieved rate "
       << ach.sr_ach;
    throw Error(Errc::GapNegative, os.str());
  }
  if (rep.gap > rep.gap_bound + 1e-9) {
    std::ostringstream os;
    os << "gap " << rep.gap << " exceeds its certified ceiling "
       << rep.gap_bound;
    throw Error(Errc::GapExceedsBound, os.str());
  }
  return rep;
}

}  // namespace fadecap
