#include "fadecap/analysis.hpp"

namespace fadecap {

AnalysisRecord analyze(const ChannelSpec& spec, const Tolerances& tol) {
  const UpperBoundReport ub = upper_bound(spec, tol);
  const AchievableReport ach = maximize_r_ach(spec);
  const GapReport gap = gap_analysis(spec, ub, ach);

  AnalysisRecord rec;
  rec.h = spec.h;
  rec.p = spec.p;
  rec.g = spec.g;
  rec.q = spec.q;

  rec.x_star = ub.root.x_star;
  rec.case_label = to_string(ub.case_label);
  rec.alpha = ub.weights.alpha;
  rec.d_value = ub.d.value;
  rec.d_is_exact = ub.d.is_exact;
  rec.c_value = ub.c_value;
  rec.sr_upper = ub.sr_upper;

  rec.beta_star = ach.beta_star;
  rec.sr_ach = ach.sr_ach;

  rec.gap = gap.gap;
  rec.gap_bound = gap.gap_bound;
  rec.setting = to_string(gap.setting);
  rec.beta_preference = gap.beta_preference;

  rec.near_degenerate = spec.g_near_interior_state(1e-9);
  return rec;
}

}  // namespace fadecap
