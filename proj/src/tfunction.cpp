#include "fadecap/tfunction.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <optional>
#include <sstream>

#include <Eigen/Eigenvalues>

namespace fadecap {

namespace {

double t_prime(double x, const ChannelSpec& spec, const InverseGains& ig) {
  double d = 0.0;
  for (std::size_t i = 0; i < ig.a.size(); ++i) {
    const double s = x + ig.a[i];
    d -= spec.p[i] / (s * s);
  }
  const double sb = x + ig.b;
  d += 1.0 / (sb * sb);
  return d;
}

// Multiply an ascending-coefficient polynomial by (x + c) in place.
void mul_linear(std::vector<double>& poly, double c) {
  poly.push_back(0.0);
  for (std::size_t k = poly.size() - 1; k > 0; --k) {
    poly[k] = poly[k - 1] + c * poly[k];
  }
  poly[0] *= c;
}

double eval_poly(const std::vector<double>& coeffs, double x) {
  double v = 0.0;
  for (std::size_t k = coeffs.size(); k-- > 0;) v = v * x + coeffs[k];
  return v;
}

double eval_poly_deriv(const std::vector<double>& coeffs, double x) {
  double v = 0.0;
  for (std::size_t k = coeffs.size(); k-- > 1;) {
    v = v * x + static_cast<double>(k) * coeffs[k];
  }
  return v;
}

// Bisection on [lo, hi] given T(lo) = flo and a sign change across the
// interval. Poles never lie inside the bracket by construction.
double bisect_t(double lo, double hi, double flo, const ChannelSpec& spec,
                const InverseGains& ig) {
  for (int iter = 0; iter < 200; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    const double fm = t_eval(mid, spec, ig);
    if (fm == 0.0) return mid;
    if ((fm > 0.0) == (flo > 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

// Newton on T inside the guard bracket [lo, hi], with bisection steps when
// Newton leaves the bracket. Iterates until the step stagnates at machine
// precision (the residual tolerance is only verified at the end: for roots
// far from the poles it is a much weaker condition than step stagnation).
double polish_t_root(double x, double lo, double hi, const ChannelSpec& spec,
                     const InverseGains& ig, double rel_tol) {
  constexpr double kEps = std::numeric_limits<double>::epsilon();
  double flo = t_eval(lo, spec, ig);
  for (int iter = 0; iter < 300; ++iter) {
    const double f = t_eval(x, spec, ig);
    if (f == 0.0) break;
    if ((f > 0.0) == (flo > 0.0)) {
      lo = x;
      flo = f;
    } else {
      hi = x;
    }
    const double fp = t_prime(x, spec, ig);
    double next = x - f / fp;
    if (!std::isfinite(next) || next <= lo || next >= hi) {
      next = 0.5 * (lo + hi);
    }
    const double step = std::abs(next - x);
    x = next;
    if (step <= 4.0 * kEps * std::max(1.0, std::abs(x)) ||
        hi - lo <= 4.0 * kEps * std::max(1.0, std::abs(x))) {
      break;
    }
  }
  if (std::abs(t_eval(x, spec, ig)) <=
      rel_tol * t_local_scale(x, spec, ig)) {
    return x;
  }
  std::ostringstream os;
  os << "root refinement stalled at x = " << x << " with residual "
     << t_eval(x, spec, ig);
  throw Error(Errc::NonConvergence, os.str());
}

std::vector<double> sorted_poles(const InverseGains& ig) {
  std::vector<double> poles;
  poles.reserve(ig.a.size() + 1);
  for (double a : ig.a) poles.push_back(-a);
  poles.push_back(-ig.b);
  std::sort(poles.begin(), poles.end());
  return poles;
}

std::vector<double> cluster_real_roots(std::vector<double> roots,
                                       double cluster_width) {
  std::sort(roots.begin(), roots.end());
  std::vector<double> out;
  std::size_t i = 0;
  while (i < roots.size()) {
    std::size_t j = i + 1;
    double sum = roots[i];
    while (j < roots.size() && roots[j] - roots[j - 1] <= cluster_width) {
      sum += roots[j];
      ++j;
    }
    out.push_back(sum / static_cast<double>(j - i));
    i = j;
  }
  return out;
}

// Refines the outside root. Sign structure on the outside regions is
// fixed: left of the fade interval T is positive below x* and negative
// above it; right of the interval, positive below and negative above as
// well (T falls from +inf at the pole to a negative tail). So a bracket is
// two probes plus doubling.
double refine_x_star(double x0, const ChannelSpec& spec,
                     const InverseGains& ig, const Tolerances& tol) {
  const double left_wall = -ig.a.front();
  const double right_wall = -ig.a.back();
  double lo, hi;
  if (x0 < left_wall) {
    hi = x0 + 0.5 * (left_wall - x0);
    double w = std::max(1e-6, 1e-6 * std::abs(x0));
    lo = x0 - w;
    while (t_eval(lo, spec, ig) <= 0.0) {
      w *= 4.0;
      lo = x0 - w;
      if (w > 1e18) {
        throw Error(Errc::NonConvergence,
                    "failed to bracket the outside root from below");
      }
    }
    while (t_eval(hi, spec, ig) > 0.0) {
      hi = 0.5 * (hi + left_wall);
      if (left_wall - hi < 1e-300) {
        throw Error(Errc::NonConvergence,
                    "failed to bracket the outside root from above");
      }
    }
  } else {
    lo = x0 - 0.5 * (x0 - right_wall);
    while (t_eval(lo, spec, ig) <= 0.0) {
      lo = 0.5 * (lo + right_wall);
      if (lo - right_wall < 1e-300) {
        throw Error(Errc::NonConvergence,
                    "failed to bracket the outside root from below");
      }
    }
    double w = std::max(1e-6, 1e-6 * std::abs(x0));
    hi = x0 + w;
    while (t_eval(hi, spec, ig) > 0.0) {
      w *= 4.0;
      hi = x0 + w;
      if (w > 1e18) {
        throw Error(Errc::NonConvergence,
                    "failed to bracket the outside root from above");
      }
    }
  }
  const double x1 = std::clamp(x0, lo, hi);
  return polish_t_root(x1, lo, hi, spec, ig, tol.root_residual);
}

RootAnalysis finish_analysis(std::vector<double> coeffs,
                             std::vector<double> inside, double x_star,
                             const ChannelSpec& spec, const InverseGains& ig,
                             const Tolerances& tol) {
  RootAnalysis ra;
  ra.x_star = refine_x_star(x_star, spec, ig, tol);
  ra.numerator_coeffs = std::move(coeffs);
  ra.poles = sorted_poles(ig);
  std::sort(inside.begin(), inside.end());
  ra.inside_roots = std::move(inside);
  return ra;
}

}  // namespace

double t_eval(double x, const ChannelSpec& spec, const InverseGains& ig) {
  constexpr double kPoleTol = 1e-14;
  auto on_pole = [&](double a) {
    return std::abs(x + a) <= kPoleTol * std::max(std::abs(x), std::abs(a));
  };
  double s = 0.0;
  for (std::size_t i = 0; i < ig.a.size(); ++i) {
    if (on_pole(ig.a[i])) {
      std::ostringstream os;
      os << "T evaluated at x = " << x << ", a pole at " << -ig.a[i];
      throw Error(Errc::PoleEvaluation, os.str());
    }
    s += spec.p[i] / (x + ig.a[i]);
  }
  if (on_pole(ig.b)) {
    std::ostringstream os;
    os << "T evaluated at x = " << x << ", a pole at " << -ig.b;
    throw Error(Errc::PoleEvaluation, os.str());
  }
  s -= 1.0 / (x + ig.b);
  return s;
}

double t_local_scale(double x, const ChannelSpec& spec,
                     const InverseGains& ig) {
  double s = 0.0;
  for (std::size_t i = 0; i < ig.a.size(); ++i) {
    s += spec.p[i] / std::abs(x + ig.a[i]);
  }
  s += 1.0 / std::abs(x + ig.b);
  return s;
}

std::vector<double> numerator_polynomial(const ChannelSpec& spec,
                                         const InverseGains& ig) {
  const std::size_t n = ig.a.size();

  std::vector<double> full{1.0};  // prod_j (x + a_j)
  for (double a : ig.a) mul_linear(full, a);

  std::vector<double> weighted(n, 0.0);  // sum_i p_i prod_{j!=i} (x + a_j)
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<double> part{1.0};
    for (std::size_t j = 0; j < n; ++j) {
      if (j != i) mul_linear(part, ig.a[j]);
    }
    for (std::size_t k = 0; k < part.size(); ++k) {
      weighted[k] += spec.p[i] * part[k];
    }
  }

  // l(x) = weighted(x) (x + b) - full(x).
  std::vector<double> l = weighted;
  mul_linear(l, ig.b);
  for (std::size_t k = 0; k < full.size(); ++k) l[k] -= full[k];

  double max_abs = 0.0;
  for (double c : l) max_abs = std::max(max_abs, std::abs(c));

  // The x^n coefficient is sum(p) - 1, identically zero for a valid pmf.
  if (std::abs(l[n]) > 1e-9 * (1.0 + max_abs)) {
    std::ostringstream os;
    os << "x^" << n << " coefficient " << l[n]
       << " failed to cancel; pmf is not normalized";
    throw Error(Errc::InvalidPmf, os.str());
  }
  l.resize(n);  // degrees 0 .. n-1

  if (std::abs(l[n - 1]) < 1e-12 * std::max(1.0, max_abs)) {
    std::ostringstream os;
    os << "numerator degree collapsed: leading coefficient " << l[n - 1]
       << " vanishes (b equals the p-mean of a), no outside root exists";
    throw Error(Errc::DegreeCollapse, os.str());
  }
  return l;
}

std::vector<double> polynomial_real_roots(const std::vector<double>& coeffs) {
  std::vector<double> c = coeffs;
  double max_abs = 0.0;
  for (double v : c) max_abs = std::max(max_abs, std::abs(v));
  while (c.size() > 1 && std::abs(c.back()) <= 1e-300 * max_abs) c.pop_back();

  const std::size_t deg = c.size() - 1;
  if (deg == 0) return {};
  if (deg == 1) return {-c[0] / c[1]};

  Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(
      static_cast<Eigen::Index>(deg), static_cast<Eigen::Index>(deg));
  for (std::size_t k = 0; k + 1 < deg; ++k) {
    companion(static_cast<Eigen::Index>(k + 1),
              static_cast<Eigen::Index>(k)) = 1.0;
  }
  for (std::size_t k = 0; k < deg; ++k) {
    companion(static_cast<Eigen::Index>(k),
              static_cast<Eigen::Index>(deg - 1)) = -c[k] / c[deg];
  }

  Eigen::EigenSolver<Eigen::MatrixXd> solver(companion,
                                             /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success) {
    throw Error(Errc::NonConvergence,
                "companion eigensolver did not converge");
  }

  std::vector<double> roots;
  const auto& ev = solver.eigenvalues();
  for (Eigen::Index k = 0; k < ev.size(); ++k) {
    const std::complex<double> z = ev[k];
    if (std::abs(z.imag()) > 1e-6 * std::max(1.0, std::abs(z))) continue;
    double x = z.real();
    for (int it = 0; it < 50; ++it) {
      const double fp = eval_poly_deriv(c, x);
      if (fp == 0.0) break;
      const double step = eval_poly(c, x) / fp;
      x -= step;
      if (std::abs(step) <= 1e-15 * std::max(1.0, std::abs(x))) break;
    }
    roots.push_back(x);
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

RootAnalysis find_x_star(const ChannelSpec& spec, const Tolerances& tol) {
  const InverseGains ig = inverse_gains(spec);
  std::vector<double> coeffs = numerator_polynomial(spec, ig);
  try {
    std::vector<double> roots = cluster_real_roots(
        polynomial_real_roots(coeffs), 1e-7 * (ig.a.front() - ig.a.back()));

    const double left_wall = -ig.a.front();
    const double right_wall = -ig.a.back();
    const double boundary_tol = 1e-10 * std::max(1.0, ig.a.front());
    std::vector<double> inside;
    std::optional<double> outside;
    for (double r : roots) {
      if (std::abs(r - left_wall) <= boundary_tol ||
          std::abs(r - right_wall) <= boundary_tol) {
        std::ostringstream os;
        os << "root " << r << " is indistinguishable from a fade-interval "
           << "boundary";
        throw Error(Errc::RootCountMismatch, os.str());
      }
      if (r > left_wall && r < right_wall) {
        inside.push_back(r);
      } else if (outside) {
        throw Error(Errc::RootCountMismatch,
                    "more than one root outside the fade interval");
      } else {
        outside = r;
      }
    }
    if (!outside) {
      throw Error(Errc::RootCountMismatch,
                  "no real root outside the fade interval");
    }
    return finish_analysis(std::move(coeffs), std::move(inside), *outside,
                           spec, ig, tol);
  } catch (const Error& e) {
    if (e.code() != Errc::RootCountMismatch &&
        e.code() != Errc::NonConvergence) {
      throw;
    }
    return find_x_star_bisect(spec, tol);
  }
}

RootAnalysis find_x_star_bisect(const ChannelSpec& spec,
                                const Tolerances& tol) {
  const InverseGains ig = inverse_gains(spec);
  const std::size_t n = ig.a.size();
  const double span = ig.a.front() - ig.a.back();
  const double off = std::max(1e-12, 1e-9 * span);
  auto sample = [&](double x) { return t_eval(x, spec, ig); };

  // Each gap between adjacent fade poles sees T run from +inf down to
  // -inf, one sign change, hence one root -- except the gap holding -b,
  // whose two half-gaps run +inf..+inf and -inf..-inf and hold no roots
  // for a channel with the expected structure. A fine scan of those halves
  // still runs so that a violation surfaces as a count mismatch rather
  // than a wrong answer.
  std::vector<double> inside;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double lo_wall = -ig.a[i];      // a sorted descending in -a terms
    const double hi_wall = -ig.a[i + 1];  // lo_wall < hi_wall
    double lo = lo_wall + off;
    double hi = hi_wall - off;
    if (lo >= hi) {
      throw Error(Errc::RootCountMismatch,
                  "fade poles too close to isolate gap roots");
    }
    const bool b_here = (-ig.b > lo && -ig.b < hi);
    if (!b_here) {
      const double flo = sample(lo);
      const double fhi = sample(hi);
      if ((flo > 0.0) == (fhi > 0.0)) {
        throw Error(Errc::RootCountMismatch,
                    "missing sign change across a fade pole gap");
      }
      inside.push_back(bisect_t(lo, hi, flo, spec, ig));
    } else {
      const double halves[2][2] = {{lo, -ig.b - off}, {-ig.b + off, hi}};
      for (const auto& half : halves) {
        if (half[0] >= half[1]) continue;
        constexpr int kSteps = 512;
        double px = half[0];
        double pf = sample(px);
        for (int s = 1; s <= kSteps; ++s) {
          const double x = half[0] + (half[1] - half[0]) * s / kSteps;
          const double f = sample(x);
          if ((f > 0.0) != (pf > 0.0)) {
            inside.push_back(bisect_t(px, x, pf, spec, ig));
          }
          px = x;
          pf = f;
        }
      }
    }
  }

  if (inside.size() != n - 2) {
    std::ostringstream os;
    os << "found " << inside.size()
       << " roots between the fade poles, expected " << (n - 2);
    throw Error(Errc::RootCountMismatch, os.str());
  }

  // The outside root lives left of -a_1 when b exceeds the p-mean of a
  // (T tends to 0^+ at -inf but dives to -inf at the wall) and right of
  // -a_n otherwise. Probe both sides with a doubling bracket.
  std::optional<double> x_star;
  {
    const double hi = -ig.a.front() - off;
    const double fhi = sample(hi);
    double w = std::max(1.0, std::abs(hi));
    while (std::abs(hi - w) < 1e12) {
      const double lo = hi - w;
      const double flo = sample(lo);
      if ((flo > 0.0) != (fhi > 0.0)) {
        x_star = bisect_t(lo, hi, flo, spec, ig);
        break;
      }
      w *= 2.0;
    }
  }
  if (!x_star) {
    const double lo = -ig.a.back() + off;
    const double flo = sample(lo);
    double w = std::max(1.0, std::abs(lo));
    while (std::abs(lo + w) < 1e12) {
      const double hi = lo + w;
      const double fhi = sample(hi);
      if ((fhi > 0.0) != (flo > 0.0)) {
        x_star = bisect_t(lo, hi, flo, spec, ig);
        break;
      }
      w *= 2.0;
    }
  }
  if (!x_star) {
    throw Error(Errc::RootCountMismatch,
                "no root of T outside the fade interval within |x| <= 1e12");
  }

  return finish_analysis(numerator_polynomial(spec, ig), std::move(inside),
                         *x_star, spec, ig, tol);
}

}  // namespace fadecap
