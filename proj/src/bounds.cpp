#include "fadecap/bounds.hpp"

#include <cmath>
#include <sstream>

namespace fadecap {

namespace {

double half_log2_checked(double arg, const char* what) {
  if (!(arg > 0.0)) {
    std::ostringstream os;
    os << what << " requires a positive log argument, got " << arg;
    throw Error(Errc::NonPositiveLogArgument, os.str());
  }
  return 0.5 * std::log2(arg);
}

}  // namespace

const char* to_string(CaseLabel c) {
  switch (c) {
    case CaseLabel::Case1:
      return "Case1";
    case CaseLabel::Case2_B1:
      return "Case2_B1";
    case CaseLabel::Case2_B2:
      return "Case2_B2";
    case CaseLabel::Case2_B3:
      return "Case2_B3";
    case CaseLabel::Case3:
      return "Case3";
  }
  return "unknown";
}

CaseLabel classify_case(double x_star, double q, const InverseGains& ig) {
  const double a1 = ig.a.front();
  const double an = ig.a.back();
  if (x_star >= 0.0 && x_star <= q) return CaseLabel::Case1;
  if (x_star <= -q - 2.0 * a1) return CaseLabel::Case2_B1;
  if (x_star >= -an && x_star <= 0.0) return CaseLabel::Case2_B2;
  if (x_star >= q) return CaseLabel::Case2_B3;
  return CaseLabel::Case3;  // x* in (-q - 2 a_1, -a_1)
}

AlphaWeights compute_alpha(const ChannelSpec& spec, const InverseGains& ig,
                           double x_star) {
  const std::size_t n = spec.size();
  AlphaWeights w;
  w.alpha.resize(n);
  double sum = 0.0;
  double moment = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double ai = ig.a[i];
    const double v = spec.p[i] * (x_star + ig.b) / (x_star + ai);
    if (v < -1e-12) {
      std::ostringstream os;
      os << "alpha[" << i << "] = " << v << " is negative";
      throw Error(Errc::AlphaInfeasible, os.str());
    }
    w.alpha[i] = std::max(v, 0.0);
    sum += w.alpha[i];
    moment += w.alpha[i] * ai;
  }
  if (std::abs(sum - 1.0) > 1e-9 ||
      std::abs(moment - ig.b) > 1e-9 * std::max(1.0, ig.b)) {
    std::ostringstream os;
    os << "alpha identities violated: sum = " << sum << ", mean of a = "
       << moment << " vs b = " << ig.b << " (is x* really a root?)";
    throw Error(Errc::AlphaInfeasible, os.str());
  }
  return w;
}

DValue compute_D(const ChannelSpec& spec, const InverseGains& ig,
                 double x_star, CaseLabel c) {
  const std::size_t n = spec.size();
  DValue d;
  switch (c) {
    case CaseLabel::Case1: {
      for (std::size_t i = 0; i < n; ++i) {
        d.value += spec.p[i] * half_log2_checked(x_star + ig.a[i], "D case1");
      }
      d.value -= half_log2_checked(x_star + ig.b, "D case1");
      break;
    }
    case CaseLabel::Case2_B1:
    case CaseLabel::Case2_B3: {
      for (std::size_t i = 0; i < n; ++i) {
        d.value +=
            spec.p[i] * half_log2_checked(spec.q + ig.a[i], "D q-corner");
      }
      d.value -= half_log2_checked(spec.q + ig.b, "D q-corner");
      break;
    }
    case CaseLabel::Case2_B2: {
      for (std::size_t i = 0; i < n; ++i) {
        d.value += spec.p[i] * half_log2_checked(ig.a[i], "D zero-corner");
      }
      d.value -= half_log2_checked(ig.b, "D zero-corner");
      break;
    }
    case CaseLabel::Case3: {
      for (std::size_t i = 0; i < n; ++i) {
        d.value +=
            spec.p[i] * half_log2_checked(-x_star - ig.a[i], "D mirror");
      }
      d.value -= half_log2_checked(-x_star - ig.b, "D mirror");
      d.is_exact = false;
      break;
    }
  }
  return d;
}

double compute_C(const ChannelSpec& spec, const InverseGains& ig) {
  double c = half_log2_checked(spec.q + ig.b, "C");
  for (std::size_t i = 0; i < spec.size(); ++i) {
    c -= spec.p[i] * half_log2_checked(ig.a[i], "C");
  }
  return c;
}

UpperBoundReport upper_bound(const ChannelSpec& spec, const Tolerances& tol) {
  UpperBoundReport r;
  r.root = find_x_star(spec, tol);
  const InverseGains ig = inverse_gains(spec);
  r.case_label = classify_case(r.root.x_star, spec.q, ig);
  r.weights = compute_alpha(spec, ig, r.root.x_star);
  r.d = compute_D(spec, ig, r.root.x_star, r.case_label);
  r.c_value = compute_C(spec, ig);
  r.sr_upper = r.d.value + r.c_value;
  return r;
}

}  // namespace fadecap
