#pragma once

#include <string>
#include <vector>

#include "fadecap/achievable.hpp"

namespace fadecap {

/// Flat summary of one full channel analysis, ready for serialization.
/// All rates and entropies are in bits; x_star and alpha are unitless.
struct AnalysisRecord {
  std::vector<double> h;
  std::vector<double> p;
  double g = 0.0;
  double q = 0.0;

  double x_star = 0.0;
  std::string case_label;
  std::vector<double> alpha;
  double d_value = 0.0;
  bool d_is_exact = true;
  double c_value = 0.0;
  double sr_upper = 0.0;

  double beta_star = 1.0;
  double sr_ach = 0.0;

  double gap = 0.0;
  double gap_bound = 0.0;
  std::string setting;
  double beta_preference = 0.0;

  bool near_degenerate = false;
};

/// Runs the upper bound, the achievable rate, and the gap analysis on a
/// validated channel.
AnalysisRecord analyze(const ChannelSpec& spec, const Tolerances& tol = {});

}  // namespace fadecap
