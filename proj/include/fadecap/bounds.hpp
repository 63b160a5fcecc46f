#pragma once

#include <string>
#include <vector>

#include "fadecap/tfunction.hpp"

namespace fadecap {

/// Position of the outside root x* relative to [0, q] and the mirrored
/// interval [-q - 2 a_1, -a_1]. The case decides which closed form the
/// bound takes and whether it is exact or only an upper estimate.
enum class CaseLabel {
  Case1,     // x* in [0, q]: interior optimum, exact
  Case2_B1,  // x* <= -q - 2 a_1: optimum pinned at the q corner, exact
  Case2_B2,  // x* in [-a_n, 0]: optimum pinned at the zero corner, exact
  Case2_B3,  // x* >= q: optimum pinned at the q corner, exact
  Case3,     // x* in [-q - 2 a_1, -a_1]: mirror-point estimate, bound only
};

const char* to_string(CaseLabel c);

/// Mixing weights alpha_i = p_i (x* + b) / (x* + a_i). At a root of T they
/// satisfy sum alpha = 1 and sum alpha_i a_i = b, and are strictly positive
/// whenever x* lies outside the fade interval.
struct AlphaWeights {
  std::vector<double> alpha;
};

struct DValue {
  double value = 0.0;
  bool is_exact = true;  // false in Case3, where only a one-sided bound holds
};

/// The full upper-bound computation: sr_upper = d.value + c_value, in bits.
struct UpperBoundReport {
  RootAnalysis root;
  CaseLabel case_label = CaseLabel::Case1;
  AlphaWeights weights;
  DValue d;
  double c_value = 0.0;
  double sr_upper = 0.0;
};

/// Ties resolve in favor of Case1, then the Case2 corners, then Case3.
CaseLabel classify_case(double x_star, double q, const InverseGains& ig);

/// Throws AlphaInfeasible if any weight is below -1e-12 or the two moment
/// identities miss by more than 1e-9 relative.
AlphaWeights compute_alpha(const ChannelSpec& spec, const InverseGains& ig,
                           double x_star);

/// Case-dependent closed form for the entropy-difference term D.
DValue compute_D(const ChannelSpec& spec, const InverseGains& ig,
                 double x_star, CaseLabel c);

/// C = (1/2) log2(q + b) - sum_i (p_i/2) log2(a_i).
double compute_C(const ChannelSpec& spec, const InverseGains& ig);

UpperBoundReport upper_bound(const ChannelSpec& spec,
                             const Tolerances& tol = {});

}  // namespace fadecap
