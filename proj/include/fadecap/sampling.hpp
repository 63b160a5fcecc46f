#pragma once

#include <cstdint>
#include <random>

#include "fadecap/bounds.hpp"
#include "fadecap/verify.hpp"

namespace fadecap {

/// Engine for one (seed, salt, trial) triple. Trials seeded this way are
/// independent of execution order, so parallel suite runs reproduce the
/// serial results byte for byte.
std::mt19937_64 make_trial_rng(std::uint64_t seed, std::uint64_t salt,
                               std::uint64_t trial);

/// Random accepted channel with n fade states. Fade magnitudes start in
/// [0.5, 1] and grow by ratios in [1.3, 1.75], so pole gaps stay wide
/// enough for offset-based sign probes; g is placed uniformly inside the
/// fade range, rejecting placements too close to a fade state or to the
/// degree-collapse manifold. q is log-uniform over [0.01, 100].
ChannelSpec random_channel(std::mt19937_64& rng, std::size_t n);

/// Random accepted channel whose analysis lands in the requested case.
/// The gain window fixes which side of the fade interval x* falls on and
/// its sign; q is then chosen inside the window the case demands.
ChannelSpec random_channel_in_case(std::mt19937_64& rng, std::size_t n,
                                   CaseLabel target);

/// Random conditionally Gaussian input with m states: weights are a
/// normalized positive vector, variances uniform on [0, 4] (zero variance
/// states are legal and exercised).
ConditionalGaussianInput random_gaussian_input(std::mt19937_64& rng,
                                               std::size_t m);

}  // namespace fadecap
