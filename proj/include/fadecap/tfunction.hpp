#pragma once

#include <vector>

#include "fadecap/channel.hpp"

namespace fadecap {

/// Root structure of the rational balance function
///   T(x) = sum_i p_i / (x + a_i)  -  1 / (x + b).
/// T has n + 1 simple poles; its numerator has degree n - 1, with n - 2
/// real roots strictly between -a_1 and -a_n and exactly one root outside
/// that interval. The outside root x* is the quantity the bounds consume.
struct RootAnalysis {
  std::vector<double> numerator_coeffs;  // ascending powers, degree n-1
  std::vector<double> poles;             // all n+1 poles, sorted ascending
  std::vector<double> inside_roots;      // roots in (-a_1, -a_n), sorted
  double x_star = 0.0;                   // the unique outside root
};

/// Evaluates T(x). Throws PoleEvaluation when x is numerically a pole.
double t_eval(double x, const ChannelSpec& spec, const InverseGains& ig);

/// Magnitude scale of T's terms at x, i.e. sum_i p_i/|x+a_i| + 1/|x+b|.
/// Residual checks divide by this so the tolerance tracks conditioning.
double t_local_scale(double x, const ChannelSpec& spec,
                     const InverseGains& ig);

/// Coefficients (ascending) of T's numerator over the common denominator
/// prod_i (x + a_i) * (x + b). The x^n term cancels identically because the
/// p_i sum to one. Throws DegreeCollapse when the x^{n-1} coefficient
/// (b minus the p-mean of a) vanishes: the outside root then escapes to
/// infinity and the analysis below does not apply.
std::vector<double> numerator_polynomial(const ChannelSpec& spec,
                                         const InverseGains& ig);

/// Real roots of a real polynomial (ascending coefficients), sorted. Uses
/// the companion-matrix eigenproblem with a Newton polish; eigenvalues with
/// a non-negligible imaginary part are dropped.
std::vector<double> polynomial_real_roots(const std::vector<double>& coeffs);

/// Finds x* and the inside roots. Primary path: companion matrix on the
/// numerator. Fallback: pole-gap bisection (find_x_star_bisect). Either
/// way x* is refined until |T(x*)| <= tol.root_residual * t_local_scale.
RootAnalysis find_x_star(const ChannelSpec& spec, const Tolerances& tol = {});

/// Bracketing-only variant: one bisection per pole gap plus an outward
/// doubling scan for x*. Independent of the eigensolver; used as the
/// fallback path and as a cross-check in tests.
RootAnalysis find_x_star_bisect(const ChannelSpec& spec,
                                const Tolerances& tol = {});

}  // namespace fadecap
