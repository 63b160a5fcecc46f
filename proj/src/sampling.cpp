#include "fadecap/sampling.hpp"

#include <cmath>
#include <numeric>
#include <sstream>

#include "fadecap/tfunction.hpp"

namespace fadecap {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

struct Fades {
  std::vector<double> h;
  std::vector<double> p;
};

Fades random_fades(std::mt19937_64& rng, std::size_t n) {
  Fades f;
  f.h.resize(n);
  f.p.resize(n);
  f.h[0] = uniform(rng, 0.5, 1.0);
  for (std::size_t i = 1; i < n; ++i) {
    f.h[i] = f.h[i - 1] * uniform(rng, 1.3, 1.75);
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    f.p[i] = uniform(rng, 0.5, 1.0);
    sum += f.p[i];
  }
  for (std::size_t i = 0; i < n; ++i) f.p[i] /= sum;
  return f;
}

// Gain acceptable when 1/g^2 keeps a healthy distance from every pole
// offset (sign-probe dominance) and from the p-mean of the offsets (the
// degree-collapse manifold, where x* escapes to infinity).
bool gain_ok(double g, const Fades& f) {
  const double b = 1.0 / (g * g);
  double abar = 0.0;
  for (std::size_t i = 0; i < f.h.size(); ++i) {
    const double a = 1.0 / (f.h[i] * f.h[i]);
    if (std::abs(b - a) < 1e-3) return false;
    abar += f.p[i] * a;
  }
  return std::abs(b - abar) > 1e-5;
}

ChannelSpec assemble(const Fades& f, double g, double q) {
  RawChannel raw;
  raw.h = f.h;
  raw.p = f.p;
  raw.g = g;
  raw.q = q;
  return validate_and_normalize(raw);
}

constexpr int kMaxAttempts = 1000;

[[noreturn]] void sampling_failed(const char* what) {
  std::ostringstream os;
  os << "channel sampling failed to produce " << what << " within "
     << kMaxAttempts << " attempts";
  throw Error(Errc::NonConvergence, os.str());
}

}  // namespace

std::mt19937_64 make_trial_rng(std::uint64_t seed, std::uint64_t salt,
                               std::uint64_t trial) {
  return std::mt19937_64(
      splitmix64(splitmix64(splitmix64(seed) ^ salt) ^ trial));
}

ChannelSpec random_channel(std::mt19937_64& rng, std::size_t n) {
  for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
    const Fades f = random_fades(rng, n);
    const double g = uniform(rng, f.h.front(), f.h.back());
    if (g <= f.h.front() || g >= f.h.back() || !gain_ok(g, f)) continue;
    const double q =
        std::exp(uniform(rng, std::log(0.01), std::log(100.0)));
    return assemble(f, g, q);
  }
  sampling_failed("an accepted channel");
}

ChannelSpec random_channel_in_case(std::mt19937_64& rng, std::size_t n,
                                   CaseLabel target) {
  for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
    const Fades f = random_fades(rng, n);

    // The two gain thresholds: below sqrt(A*) = rms fade the root is
    // positive; above it but inside the fade range the root sits in
    // (-a_n, 0); below the harmonic point H* the root crosses to the left
    // of the fade interval.
    double abar = 0.0;  // p-mean of 1/h^2
    double msq = 0.0;   // p-mean of h^2
    for (std::size_t i = 0; i < n; ++i) {
      abar += f.p[i] / (f.h[i] * f.h[i]);
      msq += f.p[i] * f.h[i] * f.h[i];
    }
    const double h_star = 1.0 / std::sqrt(abar);  // in (h_1, rms)
    const double rms = std::sqrt(msq);

    double g = 0.0;
    switch (target) {
      case CaseLabel::Case1:
      case CaseLabel::Case2_B3:
        g = uniform(rng, h_star, rms);  // x* > 0
        break;
      case CaseLabel::Case2_B2:
        g = uniform(rng, rms, f.h.back());  // x* in (-a_n, 0)
        break;
      case CaseLabel::Case2_B1:
      case CaseLabel::Case3:
        g = uniform(rng, f.h.front(), h_star);  // x* < -a_1
        break;
    }
    if (!gain_ok(g, f)) continue;

    // Provisional q: only the root location matters for x*, so compute it
    // once and place q afterwards.
    ChannelSpec spec = assemble(f, g, 1.0);
    double x_star;
    try {
      x_star = find_x_star(spec).x_star;
    } catch (const Error&) {
      continue;
    }

    const double a1 = 1.0 / (spec.h.front() * spec.h.front());
    double q = 0.0;
    switch (target) {
      case CaseLabel::Case1:
        if (x_star <= 0.0) continue;
        q = x_star * std::exp(uniform(rng, std::log(1.05), std::log(20.0)));
        break;
      case CaseLabel::Case2_B3:
        if (x_star <= 0.0) continue;
        q = x_star * uniform(rng, 0.05, 0.95);
        break;
      case CaseLabel::Case2_B2:
        if (x_star >= 0.0) continue;
        q = std::exp(uniform(rng, std::log(0.01), std::log(100.0)));
        break;
      case CaseLabel::Case2_B1: {
        const double room = -x_star - 2.0 * a1;
        if (room <= 1e-6) continue;  // root not deep enough for any q
        q = room * uniform(rng, 0.05, 0.95);
        break;
      }
      case CaseLabel::Case3: {
        const double room = -x_star - 2.0 * a1;
        q = (room > 0.0) ? room * uniform(rng, 1.1, 4.0)
                         : std::exp(uniform(rng, std::log(0.01),
                                            std::log(100.0)));
        break;
      }
    }
    if (!(q > 0.0) || !std::isfinite(q)) continue;

    spec = spec.with_power(q);
    const InverseGains ig = inverse_gains(spec);
    if (classify_case(x_star, spec.q, ig) != target) continue;
    return spec;
  }
  sampling_failed("the requested case");
}

ConditionalGaussianInput random_gaussian_input(std::mt19937_64& rng,
                                               std::size_t m) {
  ConditionalGaussianInput in;
  in.weights.resize(m);
  in.variances.resize(m);
  double sum = 0.0;
  for (std::size_t u = 0; u < m; ++u) {
    in.weights[u] = uniform(rng, 0.5, 1.0);
    sum += in.weights[u];
    // One in eight states is deterministic to exercise the zero branch.
    const double roll = uniform(rng, 0.0, 1.0);
    in.variances[u] = (roll < 0.125) ? 0.0 : uniform(rng, 0.05, 4.0);
  }
  for (std::size_t u = 0; u < m; ++u) in.weights[u] /= sum;
  return in;
}

}  // namespace fadecap
