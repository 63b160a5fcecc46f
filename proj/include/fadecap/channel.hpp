#pragma once

#include <cstddef>
#include <vector>

#include "fadecap/errors.hpp"

namespace fadecap {

/// As-given channel description, prior to validation. h and p are parallel
/// arrays of fade magnitudes and their probabilities; g is the constant
/// gain of the non-fading user; q is the transmit power budget in units of
/// the (unit) noise variance.
struct RawChannel {
  std::vector<double> h;
  std::vector<double> p;
  double g = 0.0;
  double q = 0.0;
};

/// Validated channel in canonical form: h strictly increasing, p a strictly
/// positive pmf summing to 1, and h.front() < g < h.back(). Every other
/// module assumes this ordering.
struct ChannelSpec {
  std::vector<double> h;
  std::vector<double> p;
  double g = 0.0;
  double q = 0.0;

  std::size_t size() const { return h.size(); }

  /// True when g coincides with an interior fade magnitude to within rel.
  /// Accepted, but reported as a near-degenerate configuration.
  bool g_near_interior_state(double rel = 1e-12) const;

  /// Same channel with a different power budget.
  ChannelSpec with_power(double new_q) const;
};

/// Inverse-square gains: a[i] = 1/h[i]^2 (strictly decreasing) and
/// b = 1/g^2 with a.back() < b < a.front(). These are the pole offsets of
/// the balance function and the variance floor of each fade branch.
struct InverseGains {
  std::vector<double> a;
  double b = 0.0;
};

struct Tolerances {
  double state_merge = 1e-12;    // relative gap below which fades merge
  double pmf_sum = 1e-9;         // allowed |sum(p) - 1| on input
  double root_residual = 1e-9;   // |T(x*)| relative to the local term scale
};

/// Sorts fades ascending, merges duplicates by summing probabilities,
/// renormalizes the pmf, and checks every invariant. Idempotent: feeding the
/// result back in reproduces it exactly.
ChannelSpec validate_and_normalize(const RawChannel& raw,
                                   const Tolerances& tol = {});

InverseGains inverse_gains(const ChannelSpec& spec);

}  // namespace fadecap
