#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "fadecap/analysis.hpp"
#include "fadecap/bounds.hpp"

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

doctest::Approx near(double v) { return doctest::Approx(v).epsilon(1e-12); }

}  // namespace

TEST_CASE("case classification with tie priorities") {
  InverseGains ig;
  ig.a = {1.0, 0.25};
  ig.b = 0.5;
  const double q = 1.0;

  CHECK(classify_case(0.5, q, ig) == CaseLabel::Case1);
  // Both interval endpoints belong to Case1 even though the corner cases
  // also claim them.
  CHECK(classify_case(0.0, q, ig) == CaseLabel::Case1);
  CHECK(classify_case(q, q, ig) == CaseLabel::Case1);

  CHECK(classify_case(5.0, q, ig) == CaseLabel::Case2_B3);
  CHECK(classify_case(-0.1, q, ig) == CaseLabel::Case2_B2);
  CHECK(classify_case(-0.25, q, ig) == CaseLabel::Case2_B2);
  CHECK(classify_case(-4.0, q, ig) == CaseLabel::Case2_B1);
  CHECK(classify_case(-3.0, q, ig) == CaseLabel::Case2_B1);  // boundary
  CHECK(classify_case(-2.0, q, ig) == CaseLabel::Case3);
  CHECK(classify_case(-1.0, q, ig) == CaseLabel::Case3);

  CHECK(std::string(to_string(CaseLabel::Case1)) == "Case1");
  CHECK(std::string(to_string(CaseLabel::Case2_B1)) == "Case2_B1");
  CHECK(std::string(to_string(CaseLabel::Case2_B2)) == "Case2_B2");
  CHECK(std::string(to_string(CaseLabel::Case2_B3)) == "Case2_B3");
  CHECK(std::string(to_string(CaseLabel::Case3)) == "Case3");
}

TEST_CASE("alpha weights at the root satisfy both moment identities") {
  const ChannelSpec spec = two_state(2.0);
  const InverseGains ig = inverse_gains(spec);
  const AlphaWeights w = compute_alpha(spec, ig, 0.5);
  REQUIRE(w.alpha.size() == 2);
  CHECK(w.alpha[0] == near(1.0 / 3.0));
  CHECK(w.alpha[1] == near(2.0 / 3.0));

  const ChannelSpec b2 = two_state(10.0 / 3.0);
  const AlphaWeights w2 = compute_alpha(b2, inverse_gains(b2), -5.0 / 26.0);
  CHECK(w2.alpha[0] == near(1.0 / 15.0));
  CHECK(w2.alpha[1] == near(14.0 / 15.0));
}

TEST_CASE("alpha away from a root of T is rejected") {
  const ChannelSpec spec = two_state(2.0);
  const InverseGains ig = inverse_gains(spec);
  try {
    compute_alpha(spec, ig, 2.0);  // T(2) != 0: identities cannot hold
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::AlphaInfeasible);
  }
}

TEST_CASE("worked channels reproduce the known bound values") {
  struct Expect {
    double g_squared;
    CaseLabel label;
    double x_star;
    double d;
    bool exact;
    double c;
    double sr;
  };
  const Expect table[] = {
      {2.0, CaseLabel::Case1, 0.5, 0.042481250360578091, true,
       0.79248125036057809, 0.83496250072115618},
      {10.0 / 3.0, CaseLabel::Case2_B2, -5.0 / 26.0, 0.36848279708310308,
       true, 0.68925581162686491, 1.0577386087099680},
      {5.0 / 3.0, CaseLabel::Case2_B3, 5.0, -0.0085539288344782391, true,
       0.83903595255631883, 0.83048202372184059},
      {1.5, CaseLabel::Case2_B1, -4.0, -0.038000773361262496, true,
       0.86848279708310308, 0.83048202372184059},
      {11.0 / 8.0, CaseLabel::Case3, -2.0, 0.027877078804247601, false,
       0.89424794740314412, 0.92212502620739172},
  };
  for (const Expect& e : table) {
    CAPTURE(e.g_squared);
    const ChannelSpec spec = two_state(e.g_squared);
    const UpperBoundReport ub = upper_bound(spec);
    CHECK(ub.case_label == e.label);
    CHECK(std::abs(ub.root.x_star - e.x_star) <= 1e-9);
    CHECK(ub.d.value == near(e.d));
    CHECK(ub.d.is_exact == e.exact);
    CHECK(ub.c_value == near(e.c));
    CHECK(ub.sr_upper == near(e.sr));
    CHECK(ub.sr_upper == ub.d.value + ub.c_value);  // exact by construction
  }
}

TEST_CASE("corner-case bounds equal the direct single-user rates") {
  // In the B1/B3 settings the bound collapses to the faded user's full-power
  // rate; in B2 to the constant user's. Different expressions, same number.
  const ChannelSpec b3 = two_state(5.0 / 3.0);
  double faded = 0.0;
  for (std::size_t i = 0; i < b3.size(); ++i) {
    faded += 0.5 * b3.p[i] * std::log2(1.0 + b3.h[i] * b3.h[i] * b3.q);
  }
  CHECK(upper_bound(b3).sr_upper == near(faded));
  CHECK(upper_bound(two_state(1.5)).sr_upper == near(faded));

  const ChannelSpec b2 = two_state(10.0 / 3.0);
  CHECK(upper_bound(b2).sr_upper ==
        near(0.5 * std::log2(1.0 + b2.g * b2.g * b2.q)));
}

TEST_CASE("compute_D rejects case and root combinations that make no sense") {
  const ChannelSpec spec = two_state(2.0);
  const InverseGains ig = inverse_gains(spec);
  // Case3 formula needs -x* - a_i > 0; x* = 0.5 violates it.
  CHECK_THROWS_AS(compute_D(spec, ig, 0.5, CaseLabel::Case3), Error);
}

TEST_CASE("analysis is invariant under state permutation, bit for bit") {
  RawChannel fwd;
  fwd.h = {0.8, 1.1, 1.9};
  fwd.p = {0.2, 0.3, 0.5};
  fwd.g = 1.3;
  fwd.q = 2.0;
  RawChannel rev;
  rev.h = {1.9, 0.8, 1.1};
  rev.p = {0.5, 0.2, 0.3};
  rev.g = 1.3;
  rev.q = 2.0;
  const AnalysisRecord lhs = analyze(validate_and_normalize(fwd));
  const AnalysisRecord rhs = analyze(validate_and_normalize(rev));
  CHECK(lhs.x_star == rhs.x_star);
  CHECK(lhs.sr_upper == rhs.sr_upper);
  CHECK(lhs.sr_ach == rhs.sr_ach);
  CHECK(lhs.gap == rhs.gap);
  CHECK(lhs.alpha == rhs.alpha);
  CHECK(lhs.case_label == rhs.case_label);
}

TEST_CASE("upper bound dominates the achieved rate across powers") {
  for (double g2 : {2.0, 10.0 / 3.0, 5.0 / 3.0, 1.5, 11.0 / 8.0}) {
    for (double q : {0.05, 0.5, 1.0, 4.0, 50.0}) {
      const ChannelSpec spec = two_state(g2, q);
      const AnalysisRecord rec = analyze(spec);
      CHECK(rec.sr_upper >= rec.sr_ach - 1e-9);
      CHECK(rec.gap <= rec.gap_bound + 1e-9);
    }
  }
}
