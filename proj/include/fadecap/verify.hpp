#pragma once

#include <cstddef>
#include <vector>

#include "fadecap/bounds.hpp"
#include "fadecap/exec.hpp"

namespace fadecap {

/// Program whose optimum reproduces the D term:
///   maximize  sum_i p_i/2 log2(v_i) - 1/2 log2(sum_i alpha_i v_i)
///   over      v = box_lo + x 1,  x in [0, min_i(box_hi_i - box_lo_i)],
/// with box bounds [a_i, q + a_i]. The coordinates are entropy powers of
/// one input distribution observed at the n noise levels a_i, so they move
/// together: adding auxiliary power x shifts every coordinate equally.
/// Optimizing the coordinates independently over the full box would be
/// unsound: the objective is invariant under v -> c v (both terms shift by
/// the same amount), and in the corner regimes the box max sits on a ray
/// through a mixed corner that no single distribution realizes, strictly
/// above D.
struct ConcaveProgram {
  std::vector<double> alpha;
  std::vector<double> p;
  std::vector<double> box_lo;
  std::vector<double> box_hi;
};

/// X that is Gaussian given a finite U: weights over the U-states and the
/// conditional variance of X in each.
struct ConditionalGaussianInput {
  std::vector<double> weights;
  std::vector<double> variances;
};

struct MaximizeResult {
  std::vector<double> v;
  double value = 0.0;          // bits
  int iterations = 0;          // projected-gradient steps over all starts
  double certificate_gap = 0;  // proven distance to the true optimum, bits
  bool interior = false;       // no box face active at the reported point
};

struct ConcavityReport {
  double max_violation = 0.0;  // worst (secant - curve) / local scale
  double worst_t = 0.0;
};

struct EpiReport {
  double lhs = 0.0;     // entropy power at the combined noise level b
  double rhs = 0.0;     // alpha-mixture of the per-state entropy powers
  double margin = 0.0;  // lhs - rhs, nonnegative when the inequality holds
};

struct BetaGridResult {
  double beta_best = 0.0;
  double value = 0.0;  // bits
};

ConcaveProgram make_program(const ChannelSpec& spec,
                            const AlphaWeights& weights);

/// Objective in bits. v must be strictly positive (NonPositiveVariance).
double eval_objective(const std::vector<double>& v,
                      const ConcaveProgram& prog);

/// Maximizes the objective along the common-power slice by projected
/// gradient ascent with Armijo backtracking, a Newton step where the slice
/// curvature is negative, and five deterministic starts. The slice
/// objective is unimodal (its derivative is the balance function, which
/// has at most one root right of the poles), so the starts agree at the
/// optimum; certificate_gap combines the multi-start spread with the
/// first-order residual and is required to be <= 1e-8 bits. Throws
/// NonConvergence if the iteration cap is hit with a projected gradient
/// above 1e-6 or the certificate cannot be established.
MaximizeResult maximize_objective(const ConcaveProgram& prog);

/// 2^{2 h(X + sqrt(t) Z | U)} for standard Gaussian Z independent of
/// (X, U): equals 2*pi*e times the weighted geometric mean of
/// (variance_u + t). Zero when some state has variance_u + t = 0.
double conditional_entropy_power(const ConditionalGaussianInput& input,
                                 double t);

/// Checks concavity of t -> conditional_entropy_power on a sorted grid of
/// at least three points by the secant test at every interior point.
/// Throws ConcavityViolated beyond 1e-9 of the local scale.
ConcavityReport check_costa_concavity(const ConditionalGaussianInput& input,
                                      const std::vector<double>& t_grid);

/// Checks the entropy-power combination the converse rests on:
///   N(X + Z/g | U)  >=  sum_i alpha_i N(X + Z/h_i | U),
/// which is Jensen applied to the concave map of check_costa_concavity at
/// the alpha-mean b of the a_i. Alpha must be feasible for the channel
/// (AlphaInfeasible); violations beyond -1e-9 relative throw EpiViolated.
EpiReport check_epi_combination(const ConditionalGaussianInput& input,
                                const ChannelSpec& spec,
                                const AlphaWeights& weights);

/// Exhaustive maximum of r_ach over the uniform grid {0, 1/(r-1), ..., 1}.
/// Ties resolve to the smallest beta.
BetaGridResult beta_grid_oracle(const ChannelSpec& spec,
                                std::size_t resolution,
                                Exec exec = Exec::Serial);

/// Differential entropy (bits) of X + sqrt(t) Z for the Gaussian-mixture X
/// above, by adaptive Simpson quadrature to 1e-8 bits absolute. The slow
/// second tier behind conditional_entropy_power's closed form.
double mixture_entropy_quadrature(const ConditionalGaussianInput& input,
                                  double t);

}  // namespace fadecap
