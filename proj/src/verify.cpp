#include "fadecap/verify.hpp"

#include "fadecap/achievable.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <numeric>
#include <sstream>

namespace fadecap {

namespace {

constexpr double kTwoPiE = 2.0 * std::numbers::pi * std::numbers::e;
constexpr double kLn2 = std::numbers::ln2;

void check_pmf(const std::vector<double>& w, const char* what) {
  double sum = 0.0;
  for (double x : w) {
    if (!std::isfinite(x) || x < 0.0) {
      std::ostringstream os;
      os << what << " weights must be nonnegative and finite";
      throw Error(Errc::InvalidPmf, os.str());
    }
    sum += x;
  }
  if (std::abs(sum - 1.0) > 1e-9) {
    std::ostringstream os;
    os << what << " weights sum to " << sum;
    throw Error(Errc::InvalidPmf, os.str());
  }
}

// Slice objective in doubled-nat units (2 ln 2 times the value in bits):
//   U(x) = sum_i p_i ln(lo_i + x) - ln(sum_i alpha_i (lo_i + x)).
// Its derivative is the balance function of the channel, so U is unimodal
// on [0, X]: ascent cannot stall at a spurious optimum.
struct SliceObjective {
  const ConcaveProgram* prog;

  double value(double x) const {
    double lin = 0.0;
    double s = 0.0;
    for (std::size_t i = 0; i < prog->p.size(); ++i) {
      lin += prog->p[i] * std::log(prog->box_lo[i] + x);
      s += prog->alpha[i] * (prog->box_lo[i] + x);
    }
    return lin - std::log(s);
  }

  double deriv(double x) const {
    double d = 0.0;
    double s = 0.0;
    double a = 0.0;
    for (std::size_t i = 0; i < prog->p.size(); ++i) {
      d += prog->p[i] / (prog->box_lo[i] + x);
      s += prog->alpha[i] * (prog->box_lo[i] + x);
      a += prog->alpha[i];
    }
    return d - a / s;
  }

  double deriv2(double x) const {
    double c = 0.0;
    double s = 0.0;
    double a = 0.0;
    for (std::size_t i = 0; i < prog->p.size(); ++i) {
      const double w = prog->box_lo[i] + x;
      c += prog->p[i] / (w * w);
      s += prog->alpha[i] * w;
      a += prog->alpha[i];
    }
    return -c + (a * a) / (s * s);
  }
};

struct AscentOutcome {
  double x = 0.0;
  double value = 0.0;  // doubled-nat units
  int iterations = 0;
  double pg = 0.0;     // projected gradient at the final point
};

AscentOutcome ascend(double x, double x_max, const SliceObjective& obj) {
  AscentOutcome out;
  double value = obj.value(x);
  double grad = 0.0;

  auto projected_gradient = [&] {
    return std::clamp(x + grad, 0.0, x_max) - x;
  };

  // One ascent step, Armijo-backtracked. Candidate steps: Newton where the
  // local curvature is negative (quadratic convergence at the interior
  // optimum), then a full-range gradient sweep so corner solutions are
  // reached in logarithmically many halvings.
  auto step = [&]() -> bool {
    const double curv = obj.deriv2(x);
    for (int pass = 0; pass < 2; ++pass) {
      double d;
      if (pass == 0) {
        if (!(curv < 0.0)) continue;
        d = -grad / curv;
      } else {
        d = (grad > 0.0 ? x_max : -x_max);
      }
      double tau = 1.0;
      for (int bt = 0; bt < 60; ++bt) {
        const double xt = std::clamp(x + tau * d, 0.0, x_max);
        const double expected = grad * (xt - x);
        if (expected > 0.0) {
          const double tv = obj.value(xt);
          if (tv >= value + 1e-4 * expected) {
            x = xt;
            value = tv;
            return true;
          }
        }
        tau *= 0.5;
      }
    }
    return false;  // line search exhausted: at the numerical optimum
  };

  constexpr int kMaxIter = 10000;
  const double tol = 1e-12 * std::max(1.0, x_max);
  int iter = 0;
  for (; iter < kMaxIter; ++iter) {
    grad = obj.deriv(x);
    out.pg = projected_gradient();
    if (std::abs(out.pg) < tol) break;
    if (!step()) break;
  }

  // Derivative-only Newton polish for interior optima. Near a flat peak the
  // value gain per step sinks below the roundoff of the log evaluations, so
  // Armijo comparisons go blind while the derivative (differences of
  // reciprocals) still resolves the stationary point sharply. Iterate until
  // the step stagnates at machine precision.
  if (x > 0.0 && x < x_max) {
    double prev_dx = std::numeric_limits<double>::infinity();
    for (int polish = 0; polish < 60 && iter < kMaxIter; ++polish, ++iter) {
      const double curv = obj.deriv2(x);
      if (!(curv < 0.0)) break;
      const double dx = -obj.deriv(x) / curv;
      const double xt = std::clamp(x + dx, 0.0, x_max);
      if (xt == x) break;
      x = xt;
      const double adx = std::abs(dx);
      if (adx >= prev_dx || adx <= 4.0 * 1e-16 * (1.0 + std::abs(x))) break;
      prev_dx = adx;
    }
    value = obj.value(x);
    grad = obj.deriv(x);
    out.pg = projected_gradient();
  }

  out.x = x;
  out.value = value;
  out.iterations = iter;
  return out;
}

}  // namespace

ConcaveProgram make_program(const ChannelSpec& spec,
                            const AlphaWeights& weights) {
  const InverseGains ig = inverse_gains(spec);
  ConcaveProgram prog;
  prog.alpha = weights.alpha;
  prog.p = spec.p;
  prog.box_lo = ig.a;
  prog.box_hi.resize(ig.a.size());
  for (std::size_t i = 0; i < ig.a.size(); ++i) {
    prog.box_hi[i] = spec.q + ig.a[i];
  }
  check_pmf(prog.alpha, "alpha");
  return prog;
}

double eval_objective(const std::vector<double>& v,
                      const ConcaveProgram& prog) {
  if (v.size() != prog.p.size()) {
    throw Error(Errc::LengthMismatch,
                "variance vector length does not match the program");
  }
  double lin = 0.0;
  double s = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!(v[i] > 0.0) || !std::isfinite(v[i])) {
      std::ostringstream os;
      os << "variance v[" << i << "] = " << v[i] << " must be positive";
      throw Error(Errc::NonPositiveVariance, os.str());
    }
    lin += prog.p[i] * 0.5 * std::log2(v[i]);
    s += prog.alpha[i] * v[i];
  }
  return lin - 0.5 * std::log2(s);
}

MaximizeResult maximize_objective(const ConcaveProgram& prog) {
  const std::size_t n = prog.p.size();
  if (prog.alpha.size() != n || prog.box_lo.size() != n ||
      prog.box_hi.size() != n) {
    throw Error(Errc::LengthMismatch, "inconsistent program dimensions");
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!(prog.box_lo[i] > 0.0) || !(prog.box_hi[i] > prog.box_lo[i])) {
      throw Error(Errc::NonPositiveVariance,
                  "box bounds must satisfy 0 < lower < upper");
    }
  }
  check_pmf(prog.alpha, "alpha");
  check_pmf(prog.p, "p");

  // Extent of the common-power slice: the tightest coordinate width (for
  // programs built by make_program every width is the power budget).
  double x_max = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) {
    x_max = std::min(x_max, prog.box_hi[i] - prog.box_lo[i]);
  }

  const SliceObjective obj{&prog};

  // Five deterministic starts: both ends, the centre, and two blends.
  const double blends[5] = {0.0, 1.0, 0.5, 0.25, 0.75};
  AscentOutcome best;
  best.value = -std::numeric_limits<double>::infinity();
  double lowest = std::numeric_limits<double>::infinity();
  int total_iters = 0;
  double worst_pg = 0.0;
  for (double lam : blends) {
    AscentOutcome run = ascend(lam * x_max, x_max, obj);
    total_iters += run.iterations;
    worst_pg = std::max(worst_pg, std::abs(run.pg));
    lowest = std::min(lowest, run.value);
    if (run.value > best.value) best = run;
  }

  if (worst_pg > 1e-6 * std::max(1.0, x_max)) {
    std::ostringstream os;
    os << "projected gradient stalled at norm " << worst_pg;
    throw Error(Errc::NonConvergence, os.str());
  }

  // Certificate: unimodality makes every start land on the same optimum, so
  // the spread between starts plus the first-order term over the feasible
  // directions bounds the distance to the true maximum. At an end point
  // with outward slope that term is zero -- the slope sign alone proves the
  // end point optimal for a unimodal function -- and at an interior
  // stationary point the Newton polish has driven the slope to roundoff.
  constexpr double kToBits = 0.5 / kLn2;  // doubled-nat units -> bits
  const double spread = best.value - lowest;
  const double slope = obj.deriv(best.x);
  const double residual =
      std::max({0.0, slope * (x_max - best.x), slope * (0.0 - best.x)});
  MaximizeResult res;
  res.certificate_gap = (spread + residual) * kToBits;
  if (!(res.certificate_gap <= 1e-8)) {
    std::ostringstream os;
    os << "optimality certificate too weak: gap " << res.certificate_gap
       << " bits";
    throw Error(Errc::NonConvergence, os.str());
  }

  std::vector<double> v(n);
  for (std::size_t i = 0; i < n; ++i) {
    v[i] = std::clamp(prog.box_lo[i] + best.x, prog.box_lo[i],
                      prog.box_hi[i]);
  }

  res.v = v;
  res.value = eval_objective(v, prog);
  res.iterations = total_iters;
  const double margin = 1e-9 * x_max;
  res.interior = best.x > margin && best.x < x_max - margin;
  return res;
}

double conditional_entropy_power(const ConditionalGaussianInput& input,
                                 double t) {
  if (input.weights.size() != input.variances.size()) {
    throw Error(Errc::LengthMismatch,
                "weights and variances differ in length");
  }
  check_pmf(input.weights, "conditional input");
  if (!(t >= 0.0)) {
    std::ostringstream os;
    os << "noise scale t = " << t << " must be nonnegative";
    throw Error(Errc::NonPositiveVariance, os.str());
  }
  // 2^{2h} = 2 pi e * prod_u (sigma_u^2 + t)^{w_u}; accumulate in log
  // space, short-circuiting to zero if any active state is deterministic.
  double log_gm = 0.0;
  for (std::size_t u = 0; u < input.weights.size(); ++u) {
    if (input.variances[u] < 0.0 || !std::isfinite(input.variances[u])) {
      std::ostringstream os;
      os << "conditional variance " << input.variances[u]
         << " invalid at state " << u;
      throw Error(Errc::NonPositiveVariance, os.str());
    }
    if (input.weights[u] == 0.0) continue;
    const double s = input.variances[u] + t;
    if (s == 0.0) return 0.0;
    log_gm += input.weights[u] * std::log(s);
  }
  return kTwoPiE * std::exp(log_gm);
}

ConcavityReport check_costa_concavity(const ConditionalGaussianInput& input,
                                      const std::vector<double>& t_grid) {
  if (t_grid.size() < 3) {
    throw Error(Errc::LengthMismatch,
                "concavity check needs at least three grid points");
  }
  if (!std::is_sorted(t_grid.begin(), t_grid.end())) {
    throw Error(Errc::ConfigError, "t grid must be sorted ascending");
  }

  std::vector<double> npow(t_grid.size());
  for (std::size_t k = 0; k < t_grid.size(); ++k) {
    npow[k] = conditional_entropy_power(input, t_grid[k]);
  }

  ConcavityReport rep;
  rep.max_violation = -std::numeric_limits<double>::infinity();
  for (std::size_t k = 1; k + 1 < t_grid.size(); ++k) {
    const double t0 = t_grid[k - 1], t1 = t_grid[k], t2 = t_grid[k + 1];
    if (!(t0 < t1 && t1 < t2)) {
      throw Error(Errc::ConfigError, "t grid has repeated points");
    }
    // Concavity puts the curve above its secant; a positive normalized
    // defect (secant minus curve) is a violation.
    const double lam = (t1 - t0) / (t2 - t0);
    const double secant = (1.0 - lam) * npow[k - 1] + lam * npow[k + 1];
    const double scale =
        std::max({1.0, std::abs(npow[k - 1]), std::abs(npow[k]),
                  std::abs(npow[k + 1])});
    const double defect = (secant - npow[k]) / scale;
    if (defect > rep.max_violation) {
      rep.max_violation = defect;
      rep.worst_t = t1;
    }
  }
  if (rep.max_violation > 1e-9) {
    std::ostringstream os;
    os << "entropy power fails the secant test at t = " << rep.worst_t
       << " with normalized defect " << rep.max_violation;
    throw Error(Errc::ConcavityViolated, os.str());
  }
  return rep;
}

EpiReport check_epi_combination(const ConditionalGaussianInput& input,
                                const ChannelSpec& spec,
                                const AlphaWeights& weights) {
  const InverseGains ig = inverse_gains(spec);
  if (weights.alpha.size() != ig.a.size()) {
    throw Error(Errc::LengthMismatch,
                "alpha length does not match the channel");
  }
  double sum = 0.0;
  double moment = 0.0;
  for (std::size_t i = 0; i < weights.alpha.size(); ++i) {
    if (weights.alpha[i] < 0.0) {
      throw Error(Errc::AlphaInfeasible, "negative alpha weight");
    }
    sum += weights.alpha[i];
    moment += weights.alpha[i] * ig.a[i];
  }
  if (std::abs(sum - 1.0) > 1e-9 ||
      std::abs(moment - ig.b) > 1e-9 * std::max(1.0, ig.b)) {
    std::ostringstream os;
    os << "alpha infeasible: sum = " << sum << ", a-mean = " << moment
       << " vs b = " << ig.b;
    throw Error(Errc::AlphaInfeasible, os.str());
  }

  EpiReport rep;
  rep.lhs = conditional_entropy_power(input, ig.b);
  rep.rhs = 0.0;
  for (std::size_t i = 0; i < ig.a.size(); ++i) {
    rep.rhs += weights.alpha[i] * conditional_entropy_power(input, ig.a[i]);
  }
  rep.margin = rep.lhs - rep.rhs;
  if (rep.margin < -1e-9 * std::max(1.0, std::abs(rep.lhs))) {
    std::ostringstream os;
    os << "entropy-power combination violated: lhs " << rep.lhs << " < rhs "
       << rep.rhs;
    throw Error(Errc::EpiViolated, os.str());
  }
  return rep;
}

BetaGridResult beta_grid_oracle(const ChannelSpec& spec,
                                std::size_t resolution, Exec exec) {
  if (resolution < 2) {
    throw Error(Errc::ConfigError, "grid resolution must be at least 2");
  }
  const std::int64_t r = static_cast<std::int64_t>(resolution);
  double best_val = -std::numeric_limits<double>::infinity();
  std::int64_t best_k = 0;

  // Ties resolve to the smallest index in both policies, which keeps the
  // result independent of thread count and schedule.
#ifdef _OPENMP
  if (exec == Exec::Parallel) {
#pragma omp parallel
    {
      double loc_val = -std::numeric_limits<double>::infinity();
      std::int64_t loc_k = 0;
#pragma omp for nowait
      for (std::int64_t k = 0; k < r; ++k) {
        const double beta = static_cast<double>(k) / (r - 1);
        const double val = r_ach(spec, beta);
        if (val > loc_val || (val == loc_val && k < loc_k)) {
          loc_val = val;
          loc_k = k;
        }
      }
#pragma omp critical
      {
        if (loc_val > best_val || (loc_val == best_val && loc_k < best_k)) {
          best_val = loc_val;
          best_k = loc_k;
        }
      }
    }
  } else
#endif
  {
    (void)exec;
    for (std::int64_t k = 0; k < r; ++k) {
      const double beta = static_cast<double>(k) / (r - 1);
      const double val = r_ach(spec, beta);
      if (val > best_val) {
        best_val = val;
        best_k = k;
      }
    }
  }

  BetaGridResult res;
  res.beta_best = static_cast<double>(best_k) / (r - 1);
  res.value = best_val;
  return res;
}

namespace {

struct MixtureDensity {
  const ConditionalGaussianInput* input;
  double t;

  double operator()(double z) const {
    double f = 0.0;
    for (std::size_t u = 0; u < input->weights.size(); ++u) {
      const double s = input->variances[u] + t;
      f += input->weights[u] * std::exp(-0.5 * z * z / s) /
           std::sqrt(2.0 * std::numbers::pi * s);
    }
    return f;
  }
};

// Integrand -f ln f, zero where the density underflows.
double neg_f_ln_f(const MixtureDensity& dens, double z) {
  const double f = dens(z);
  if (f <= 1e-300) return 0.0;
  return -f * std::log(f);
}

double adaptive_simpson(const MixtureDensity& dens, double a, double b,
                        double fa, double fm, double fb, double whole,
                        double eps, int depth) {
  if (depth > 60) {
    throw Error(Errc::QuadratureNonConvergence,
                "adaptive quadrature exceeded the recursion limit");
  }
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = neg_f_ln_f(dens, lm);
  const double frm = neg_f_ln_f(dens, rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (std::abs(delta) <= 15.0 * eps) {
    return left + right + delta / 15.0;
  }
  return adaptive_simpson(dens, a, m, fa, flm, fm, left, 0.5 * eps,
                          depth + 1) +
         adaptive_simpson(dens, m, b, fm, frm, fb, right, 0.5 * eps,
                          depth + 1);
}

}  // namespace

double mixture_entropy_quadrature(const ConditionalGaussianInput& input,
                                  double t) {
  if (input.weights.size() != input.variances.size()) {
    throw Error(Errc::LengthMismatch,
                "weights and variances differ in length");
  }
  check_pmf(input.weights, "mixture");
  if (!(t >= 0.0)) {
    throw Error(Errc::NonPositiveVariance, "noise scale t must be >= 0");
  }
  double max_s = 0.0;
  for (std::size_t u = 0; u < input.variances.size(); ++u) {
    const double s = input.variances[u] + t;
    if (input.weights[u] > 0.0 && s <= 0.0) {
      throw Error(Errc::NonPositiveVariance,
                  "mixture density degenerates: a state has zero variance");
    }
    max_s = std::max(max_s, s);
  }

  const MixtureDensity dens{&input, t};
  const double half_width = 12.0 * std::sqrt(max_s);
  // The density is even (all components zero-mean), so integrate half the
  // line and double. Target 1e-8 bits => just under 7e-9 nats.
  const double eps = 3e-9 * kLn2;
  const double a = 0.0, b = half_width;
  const double fa = neg_f_ln_f(dens, a);
  const double fb = neg_f_ln_f(dens, b);
  const double fm = neg_f_ln_f(dens, 0.5 * (a + b));
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  const double nats =
      2.0 * adaptive_simpson(dens, a, b, fa, fm, fb, whole, eps, 0);
  return nats / kLn2;
}

}  // namespace fadecap
