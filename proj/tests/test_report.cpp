#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <numbers>

#include "fadecap/analysis.hpp"
#include "fadecap/report.hpp"

using namespace fadecap;

namespace {

AnalysisRecord worked_record(double g_squared = 2.0) {
  RawChannel raw;
  raw.h = {1.0, 2.0};
  raw.p = {0.5, 0.5};
  raw.g = std::sqrt(g_squared);
  raw.q = 1.0;
  return analyze(validate_and_normalize(raw));
}

}  // namespace

TEST_CASE("doubles render with enough digits to round-trip") {
  CHECK(format_double(0.5) == "0.5");
  CHECK(format_double(1.0) == "1");
  CHECK(format_double(-0.0) == "-0");
  for (double v : {0.1 + 0.2, 1.0 / 3.0, 5.0, 1e300, 1e-300,
                   0.042481250360578091}) {
    const std::string text = format_double(v);
    CHECK(std::strtod(text.c_str(), nullptr) == v);
  }
}

TEST_CASE("record serialization round-trips byte for byte") {
  const AnalysisRecord rec = worked_record();
  for (const char* units : {"bits", "nats"}) {
    const std::string once = record_to_json(rec, units);
    const ParsedRecord parsed = record_from_json(once);
    CHECK(parsed.units == units);
    CHECK(record_to_json(parsed.record, parsed.units) == once);
  }
}

TEST_CASE("records carry sorted keys and the expected fields") {
  const std::string text = record_to_json(worked_record(), "bits");
  CHECK(text.front() == '{');
  CHECK(text.back() == '}');
  CHECK(text.find('\n') == std::string::npos);
  const char* keys[] = {"\"alpha\"",    "\"beta_preference\"",
                        "\"beta_star\"", "\"c_value\"",
                        "\"case\"",      "\"d_is_exact\"",
                        "\"d_value\"",   "\"g\"",
                        "\"gap\"",       "\"gap_bound\"",
                        "\"h\"",         "\"near_degenerate\"",
                        "\"p\"",         "\"q\"",
                        "\"setting\"",   "\"sr_ach\"",
                        "\"sr_upper\"",  "\"units\"",
                        "\"x_star\""};
  std::size_t prev = 0;
  for (const char* key : keys) {
    const std::size_t pos = text.find(key);
    REQUIRE(pos != std::string::npos);
    CHECK(pos > prev);  // strictly later than the previous key
    prev = pos;
  }
  CHECK(text.find("\"case\":\"Case1\"") != std::string::npos);
  CHECK(text.find("\"setting\":\"Case1Bound\"") != std::string::npos);
  CHECK(text.find("\"d_is_exact\":true") != std::string::npos);
}

TEST_CASE("nats conversion rescales rates and nothing else") {
  const AnalysisRecord rec = worked_record();
  const AnalysisRecord nats = to_nats(rec);
  constexpr double kLn2 = std::numbers::ln2;
  CHECK(nats.d_value == rec.d_value * kLn2);
  CHECK(nats.c_value == rec.c_value * kLn2);
  CHECK(nats.sr_upper == rec.sr_upper * kLn2);
  CHECK(nats.sr_ach == rec.sr_ach * kLn2);
  CHECK(nats.gap == rec.gap * kLn2);
  CHECK(nats.gap_bound == rec.gap_bound * kLn2);
  CHECK(nats.beta_preference == rec.beta_preference * kLn2);
  // Unit-free quantities stay put.
  CHECK(nats.x_star == rec.x_star);
  CHECK(nats.beta_star == rec.beta_star);
  CHECK(nats.alpha == rec.alpha);
  CHECK(nats.h == rec.h);
  CHECK(nats.p == rec.p);
  CHECK(nats.g == rec.g);
  CHECK(nats.q == rec.q);
}

TEST_CASE("malformed records are rejected with a config error") {
  for (const char* bad : {
           "not json at all",
           "[1,2,3]",
           "{\"alpha\":[0.5,0.5]}",                       // missing fields
           "{\"alpha\":\"zero\",\"beta_preference\":0}",  // wrong type
       }) {
    try {
      record_from_json(bad);
      FAIL("expected an error for: ", bad);
    } catch (const Error& e) {
      CHECK(e.code() == Errc::ConfigError);
    }
  }
}

TEST_CASE("error objects escape their payload") {
  const Error err(Errc::ConfigError, "bad \"key\" \\ path\nline2");
  const std::string text = error_json(err);
  CHECK(text ==
        "{\"code\":\"config_error\",\"message\":\"bad \\\"key\\\" \\\\ "
        "path\\nline2\"}");
}

TEST_CASE("sweep csv has the fixed header and column count") {
  RawChannel raw;
  raw.h = {1.0, 2.0};
  raw.p = {0.5, 0.5};
  raw.g = std::sqrt(2.0);
  raw.q = 1.0;
  const ChannelSpec base = validate_and_normalize(raw);
  const std::vector<SweepRow> rows =
      run_sweep(base, make_q_grid(1.0, 4.0, 3, false));
  const std::string csv = sweep_csv(rows);

  const std::string header =
      "q,x_star,case,d_value,d_is_exact,c_value,sr_upper,beta_star,"
      "sr_ach,gap,gap_bound,error\n";
  REQUIRE(csv.substr(0, header.size()) == header);
  CHECK(csv.back() == '\n');

  std::size_t line_start = header.size();
  int lines = 0;
  while (line_start < csv.size()) {
    const std::size_t line_end = csv.find('\n', line_start);
    REQUIRE(line_end != std::string::npos);
    const std::string line = csv.substr(line_start, line_end - line_start);
    int commas = 0;
    for (char ch : line) commas += ch == ',';
    CHECK(commas == 11);  // 12 fields
    CHECK(line.back() == ',');  // success rows end with the empty error
    ++lines;
    line_start = line_end + 1;
  }
  CHECK(lines == 3);
}

TEST_CASE("summary serialization is canonical json") {
  VerifySummary summary;
  SuiteResult s;
  s.name = "root_structure";
  s.trials = 7;
  s.failures = 1;
  s.worst_residual = 0.25;
  s.detail = "trial 3: sign flip";
  summary.suites.push_back(s);
  summary.all_passed = false;
  CHECK(summary_to_json(summary) ==
        "{\"all_passed\":false,\"suites\":[{\"detail\":\"trial 3: sign "
        "flip\",\"failures\":1,\"name\":\"root_structure\",\"trials\":7,"
        "\"worst_residual\":0.25}]}");
}
