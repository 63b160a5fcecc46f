#include "fadecap/channel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

namespace fadecap {

namespace {

void require_finite_positive(double v, const char* what, Errc code) {
  if (!std::isfinite(v) || v <= 0.0) {
    std::ostringstream os;
    os << what << " must be finite and positive, got " << v;
    throw Error(code, os.str());
  }
}

}  // namespace

bool ChannelSpec::g_near_interior_state(double rel) const {
  for (std::size_t i = 1; i + 1 < h.size(); ++i) {
    if (std::abs(g - h[i]) <= rel * std::max(std::abs(g), std::abs(h[i]))) {
      return true;
    }
  }
  return false;
}

ChannelSpec ChannelSpec::with_power(double new_q) const {
  ChannelSpec out = *this;
  require_finite_positive(new_q, "power budget q", Errc::NonPositiveParameter);
  out.q = new_q;
  return out;
}

ChannelSpec validate_and_normalize(const RawChannel& raw,
                                   const Tolerances& tol) {
  if (raw.h.size() != raw.p.size()) {
    std::ostringstream os;
    os << "h has " << raw.h.size() << " entries but p has " << raw.p.size();
    throw Error(Errc::LengthMismatch, os.str());
  }
  if (raw.h.empty()) {
    throw Error(Errc::LengthMismatch, "channel needs at least one fade state");
  }

  for (double hv : raw.h) {
    require_finite_positive(hv, "fade magnitude h[i]",
                            Errc::NonPositiveParameter);
  }
  require_finite_positive(raw.g, "gain g", Errc::NonPositiveParameter);
  require_finite_positive(raw.q, "power budget q", Errc::NonPositiveParameter);

  for (double pv : raw.p) {
    if (!std::isfinite(pv) || pv <= 0.0) {
      std::ostringstream os;
      os << "probability p[i] must be finite and positive, got " << pv;
      throw Error(Errc::InvalidPmf, os.str());
    }
  }
  const double psum = std::accumulate(raw.p.begin(), raw.p.end(), 0.0);
  if (std::abs(psum - 1.0) > tol.pmf_sum) {
    std::ostringstream os;
    os << "probabilities sum to " << psum << ", not 1 within " << tol.pmf_sum;
    throw Error(Errc::InvalidPmf, os.str());
  }

  // Sort states by fade magnitude, keeping the pairing with p.
  std::vector<std::size_t> order(raw.h.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
    return raw.h[i] < raw.h[j];
  });

  // Merge fades that agree to within the merge tolerance; the merged state
  // keeps the smallest magnitude of its cluster and the summed probability.
  std::vector<double> h;
  std::vector<double> p;
  h.reserve(raw.h.size());
  p.reserve(raw.p.size());
  for (std::size_t k : order) {
    const double hv = raw.h[k];
    const double pv = raw.p[k];
    if (!h.empty() &&
        hv - h.back() <= tol.state_merge * std::max(hv, h.back())) {
      p.back() += pv;
    } else {
      h.push_back(hv);
      p.push_back(pv);
    }
  }

  if (h.size() < 2) {
    throw Error(Errc::DegenerateFading,
                "all fade states coincide; the channel does not fade");
  }

  // Renormalize, but leave an already-exact pmf untouched so that
  // validating twice is bitwise idempotent.
  double merged_sum = std::accumulate(p.begin(), p.end(), 0.0);
  if (std::abs(merged_sum - 1.0) > 4.0 *
          std::numeric_limits<double>::epsilon() * p.size()) {
    for (double& pv : p) pv /= merged_sum;
  }

  if (raw.g <= h.front() || raw.g >= h.back()) {
    std::ostringstream os;
    os << "gain g = " << raw.g << " lies outside the open fade range ("
       << h.front() << ", " << h.back()
       << "); the channel is degraded in one direction";
    throw Error(Errc::StronglyDegraded, os.str());
  }

  ChannelSpec spec;
  spec.h = std::move(h);
  spec.p = std::move(p);
  spec.g = raw.g;
  spec.q = raw.q;
  return spec;
}

InverseGains inverse_gains(const ChannelSpec& spec) {
  InverseGains ig;
  ig.a.resize(spec.size());
  for (std::size_t i = 0; i < spec.size(); ++i) {
    ig.a[i] = 1.0 / (spec.h[i] * spec.h[i]);
  }
  ig.b = 1.0 / (spec.g * spec.g);
  return ig;
}

}  // namespace fadecap
