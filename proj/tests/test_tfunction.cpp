#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "fadecap/sampling.hpp"
#include "fadecap/tfunction.hpp"

using namespace fadecap;

namespace {

ChannelSpec two_state(double g_squared, double q = 1.0) {
  RawChannel raw;
  raw.h = {1.0, 2.0};
  raw.p = {0.5, 0.5};
  raw.g = std::sqrt(g_squared);
  raw.q = q;
  return validate_and_normalize(raw);
}

// Closed form for the outside root when n = 2, used as an independent
// oracle against the polynomial and bisection paths.
double x_star_two_state(const ChannelSpec& spec) {
  const InverseGains ig = inverse_gains(spec);
  const double a1 = ig.a[0], a2 = ig.a[1], b = ig.b;
  const double m = spec.p[0] * a2 + spec.p[1] * a1;
  return (a1 * a2 - b * m) / (m + b - a1 - a2);
}

}  // namespace

TEST_CASE("t_eval matches hand-computed fractions") {
  const ChannelSpec spec = two_state(2.0);  // a = (1, 1/4), b = 1/2
  const InverseGains ig = inverse_gains(spec);
  // T(1) = 1/4 + 2/5 - 2/3 = -1/60
  CHECK(t_eval(1.0, spec, ig) ==
        doctest::Approx(-1.0 / 60.0).epsilon(1e-14));
  // T(3) = 1/8 + 2/13 - 2/7 = -5/728
  CHECK(t_eval(3.0, spec, ig) ==
        doctest::Approx(-5.0 / 728.0).epsilon(1e-14));
  CHECK(t_eval(0.5, spec, ig) == doctest::Approx(0.0).epsilon(1e-14));

  const ChannelSpec b2 = two_state(10.0 / 3.0);  // b = 3/10
  const InverseGains ig2 = inverse_gains(b2);
  // T(0) = 1/2 + 2 - 10/3 = -5/6
  CHECK(t_eval(0.0, b2, ig2) == doctest::Approx(-5.0 / 6.0).epsilon(1e-14));
}

TEST_CASE("evaluating at a pole raises instead of overflowing") {
  const ChannelSpec spec = two_state(2.0);
  const InverseGains ig = inverse_gains(spec);
  for (double pole : {-1.0, -0.5, -0.25}) {
    try {
      t_eval(pole, spec, ig);
      FAIL("expected an error at x = ", pole);
    } catch (const Error& e) {
      CHECK(e.code() == Errc::PoleEvaluation);
    }
  }
}

TEST_CASE("local scale is the sum of term magnitudes") {
  const ChannelSpec spec = two_state(2.0);
  const InverseGains ig = inverse_gains(spec);
  // At x = 1: 1/4 + 2/5 + 2/3
  CHECK(t_local_scale(1.0, spec, ig) ==
        doctest::Approx(0.25 + 0.4 + 2.0 / 3.0).epsilon(1e-15));
}

TEST_CASE("two-state numerator is the expected linear polynomial") {
  const ChannelSpec spec = two_state(2.0);
  const std::vector<double> c = numerator_polynomial(spec, inverse_gains(spec));
  REQUIRE(c.size() == 2);  // degree n - 1 = 1
  CHECK(c[0] == doctest::Approx(0.0625).epsilon(1e-14));
  CHECK(c[1] == doctest::Approx(-0.125).epsilon(1e-14));  // b - mean(a)
}

TEST_CASE("numerator degree is n - 1 and leading term is b - mean(a)") {
  std::mt19937_64 rng = make_trial_rng(11, 0, 0);
  for (std::size_t n = 2; n <= 6; ++n) {
    const ChannelSpec spec = random_channel(rng, n);
    const InverseGains ig = inverse_gains(spec);
    const std::vector<double> c = numerator_polynomial(spec, ig);
    REQUIRE(c.size() == n);
    double abar = 0.0;
    for (std::size_t i = 0; i < n; ++i) abar += spec.p[i] * ig.a[i];
    CHECK(c.back() == doctest::Approx(ig.b - abar).epsilon(1e-9));
  }
}

TEST_CASE("numerator over denominator reproduces T at random points") {
  std::mt19937_64 rng = make_trial_rng(12, 0, 0);
  std::uniform_real_distribution<double> point(1e-3, 50.0);
  for (std::size_t n = 2; n <= 6; ++n) {
    const ChannelSpec spec = random_channel(rng, n);
    const InverseGains ig = inverse_gains(spec);
    const std::vector<double> c = numerator_polynomial(spec, ig);
    for (int k = 0; k < 8; ++k) {
      const double x = point(rng);  // positive, safely away from all poles
      double num = 0.0;
      for (std::size_t j = c.size(); j-- > 0;) num = num * x + c[j];
      double den = x + ig.b;
      for (double a : ig.a) den *= x + a;
      const double direct = t_eval(x, spec, ig);
      CHECK(std::abs(num / den - direct) <=
            1e-9 * t_local_scale(x, spec, ig));
    }
  }
}

TEST_CASE("gain on the mean of the inverse gains collapses the degree") {
  RawChannel raw;
  raw.h = {1.0, 2.0};
  raw.p = {0.5, 0.5};
  raw.g = 1.0 / std::sqrt(0.625);  // b = mean(a) exactly
  raw.q = 1.0;
  const ChannelSpec spec = validate_and_normalize(raw);
  const InverseGains ig = inverse_gains(spec);
  CHECK_THROWS_AS(numerator_polynomial(spec, ig), Error);
  try {
    find_x_star(spec);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::DegreeCollapse);
    CHECK(errc_exit_code(e.code()) == 4);
  }
}

TEST_CASE("near-collapse gains push the root far out but stay solvable") {
  RawChannel raw;
  raw.h = {1.0, 2.0};
  raw.p = {0.5, 0.5};
  raw.g = 1.0 / std::sqrt(0.625 + 1e-6);
  raw.q = 1.0;
  const ChannelSpec spec = validate_and_normalize(raw);
  const RootAnalysis root = find_x_star(spec);
  CHECK(root.x_star == doctest::Approx(x_star_two_state(spec)).epsilon(1e-9));
  CHECK(root.x_star < -1e5);
}

TEST_CASE("polynomial_real_roots solves a cubic with known roots") {
  // (x + 2)(x - 1)(x - 3) = x^3 - 2x^2 - 5x + 6
  const std::vector<double> roots =
      polynomial_real_roots({6.0, -5.0, -2.0, 1.0});
  REQUIRE(roots.size() == 3);
  CHECK(roots[0] == doctest::Approx(-2.0).epsilon(1e-12));
  CHECK(roots[1] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(roots[2] == doctest::Approx(3.0).epsilon(1e-12));
}

TEST_CASE("worked two-state channels hit their known outside roots") {
  struct Expect {
    double g_squared;
    double x_star;
  };
  const Expect table[] = {
      {2.0, 0.5},          {10.0 / 3.0, -5.0 / 26.0}, {5.0 / 3.0, 5.0},
      {1.5, -4.0},         {11.0 / 8.0, -2.0},
  };
  for (const Expect& e : table) {
    const ChannelSpec spec = two_state(e.g_squared);
    const RootAnalysis root = find_x_star(spec);
    CHECK(std::abs(root.x_star - e.x_star) <= 1e-9);
    CHECK(std::abs(root.x_star - x_star_two_state(spec)) <= 1e-9);
    CHECK(root.inside_roots.empty());
    REQUIRE(root.poles.size() == 3);
    CHECK(root.poles[0] == -1.0);
  }
}

TEST_CASE("residual at the returned root is small on the local scale") {
  std::mt19937_64 rng = make_trial_rng(13, 0, 0);
  for (int t = 0; t < 40; ++t) {
    const ChannelSpec spec = random_channel(rng, 2 + t % 5);
    const InverseGains ig = inverse_gains(spec);
    const RootAnalysis root = find_x_star(spec);
    CHECK(std::abs(t_eval(root.x_star, spec, ig)) <=
          1e-9 * t_local_scale(root.x_star, spec, ig));
    CHECK(root.inside_roots.size() == spec.size() - 2);
  }
}

TEST_CASE("eigen and bisection paths agree on the outside root") {
  std::mt19937_64 rng = make_trial_rng(14, 0, 0);
  for (int t = 0; t < 40; ++t) {
    const ChannelSpec spec = random_channel(rng, 2 + t % 5);
    const RootAnalysis a = find_x_star(spec);
    const RootAnalysis b = find_x_star_bisect(spec);
    CHECK(std::abs(a.x_star - b.x_star) <=
          1e-7 * std::max(1.0, std::abs(a.x_star)));
    REQUIRE(a.inside_roots.size() == b.inside_roots.size());
    for (std::size_t i = 0; i < a.inside_roots.size(); ++i) {
      CHECK(a.inside_roots[i] == doctest::Approx(b.inside_roots[i])
                                     .epsilon(1e-7));
    }
  }
}

TEST_CASE("sign pattern at pole offsets follows the residues") {
  const ChannelSpec spec = two_state(2.0);
  const InverseGains ig = inverse_gains(spec);
  const double off = 1e-6;
  // Fade poles carry positive residue: negative on the left, positive on
  // the right. The gain pole carries negative residue: the reverse.
  for (double a : ig.a) {
    CHECK(t_eval(-a - off, spec, ig) < 0.0);
    CHECK(t_eval(-a + off, spec, ig) > 0.0);
  }
  CHECK(t_eval(-ig.b - off, spec, ig) > 0.0);
  CHECK(t_eval(-ig.b + off, spec, ig) < 0.0);
}

TEST_CASE("the outside root sits on the side the moment comparison picks") {
  std::mt19937_64 rng = make_trial_rng(15, 0, 0);
  for (int t = 0; t < 30; ++t) {
    const ChannelSpec spec = random_channel(rng, 2 + t % 5);
    const InverseGains ig = inverse_gains(spec);
    double abar = 0.0;
    for (std::size_t i = 0; i < spec.size(); ++i) abar += spec.p[i] * ig.a[i];
    const RootAnalysis root = find_x_star(spec);
    if (ig.b > abar) {
      CHECK(root.x_star < -ig.a.front());
    } else {
      CHECK(root.x_star > -ig.a.back());
    }
  }
}
