#include "fadecap/report.hpp"

#include <cstdio>
#include <numbers>
#include <sstream>

#include <json.hpp>

namespace fadecap {

namespace {

void append_escaped(std::string& out, const std::string& s) {
  out += '"';
  for (char ch : s) {
    switch (ch) {
      case '"':
        out += "\\\"";
        break;
      case '\\':
        out += "\\\\";
        break;
      case '\n':
        out += "\\n";
        break;
      case '\r':
        out += "\\r";
        break;
      case '\t':
        out += "\\t";
        break;
      default:
        if (static_cast<unsigned char>(ch) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof(buf), "\\u%04x", ch);
          out += buf;
        } else {
          out += ch;
        }
    }
  }
  out += '"';
}

void append_array(std::string& out, const std::vector<double>& v) {
  out += '[';
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ',';
    out += format_double(v[i]);
  }
  out += ']';
}

std::vector<double> number_array(const nlohmann::json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_array()) {
    throw Error(Errc::ConfigError,
                std::string("record field '") + key +
                    "' missing or not an array");
  }
  std::vector<double> out;
  for (const auto& e : j.at(key)) {
    if (!e.is_number()) {
      throw Error(Errc::ConfigError,
                  std::string("record field '") + key +
                      "' has a non-numeric entry");
    }
    out.push_back(e.get<double>());
  }
  return out;
}

double number_field(const nlohmann::json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_number()) {
    throw Error(Errc::ConfigError, std::string("record field '") + key +
                                       "' missing or not a number");
  }
  return j.at(key).get<double>();
}

}  // namespace

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string record_to_json(const AnalysisRecord& rec,
                           const std::string& units) {
  std::string out = "{";
  out += "\"alpha\":";
  append_array(out, rec.alpha);
  out += ",\"beta_preference\":" + format_double(rec.beta_preference);
  out += ",\"beta_star\":" + format_double(rec.beta_star);
  out += ",\"c_value\":" + format_double(rec.c_value);
  out += ",\"case\":";
  append_escaped(out, rec.case_label);
  out += ",\"d_is_exact\":";
  out += rec.d_is_exact ? "true" : "false";
  out += ",\"d_value\":" + format_double(rec.d_value);
  out += ",\"g\":" + format_double(rec.g);
  out += ",\"gap\":" + format_double(rec.gap);
  out += ",\"gap_bound\":" + format_double(rec.gap_bound);
  out += ",\"h\":";
  append_array(out, rec.h);
  out += ",\"near_degenerate\":";
  out += rec.near_degenerate ? "true" : "false";
  out += ",\"p\":";
  append_array(out, rec.p);
  out += ",\"q\":" + format_double(rec.q);
  out += ",\"setting\":";
  append_escaped(out, rec.setting);
  out += ",\"sr_ach\":" + format_double(rec.sr_ach);
  out += ",\"sr_upper\":" + format_double(rec.sr_upper);
  out += ",\"units\":";
  append_escaped(out, units);
  out += ",\"x_star\":" + format_double(rec.x_star);
  out += "}";
  return out;
}

AnalysisRecord to_nats(const AnalysisRecord& rec) {
  constexpr double kLn2 = std::numbers::ln2;
  AnalysisRecord out = rec;
  out.d_value *= kLn2;
  out.c_value *= kLn2;
  out.sr_upper *= kLn2;
  out.sr_ach *= kLn2;
  out.gap *= kLn2;
  out.gap_bound *= kLn2;
  out.beta_preference *= kLn2;
  return out;
}

ParsedRecord record_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::ConfigError,
                std::string("record does not parse as JSON: ") + e.what());
  }
  if (!j.is_object()) {
    throw Error(Errc::ConfigError, "record is not a JSON object");
  }

  ParsedRecord pr;
  AnalysisRecord& r = pr.record;
  r.alpha = number_array(j, "alpha");
  r.beta_preference = number_field(j, "beta_preference");
  r.beta_star = number_field(j, "beta_star");
  r.c_value = number_field(j, "c_value");
  if (!j.contains("case") || !j.at("case").is_string()) {
    throw Error(Errc::ConfigError, "record field 'case' missing");
  }
  r.case_label = j.at("case").get<std::string>();
  if (!j.contains("d_is_exact") || !j.at("d_is_exact").is_boolean()) {
    throw Error(Errc::ConfigError, "record field 'd_is_exact' missing");
  }
  r.d_is_exact = j.at("d_is_exact").get<bool>();
  r.d_value = number_field(j, "d_value");
  r.g = number_field(j, "g");
  r.gap = number_field(j, "gap");
  r.gap_bound = number_field(j, "gap_bound");
  r.h = number_array(j, "h");
  if (!j.contains("near_degenerate") ||
      !j.at("near_degenerate").is_boolean()) {
    throw Error(Errc::ConfigError, "record field 'near_degenerate' missing");
  }
  r.near_degenerate = j.at("near_degenerate").get<bool>();
  r.p = number_array(j, "p");
  r.q = number_field(j, "q");
  if (!j.contains("setting") || !j.at("setting").is_string()) {
    throw Error(Errc::ConfigError, "record field 'setting' missing");
  }
  r.setting = j.at("setting").get<std::string>();
  r.sr_ach = number_field(j, "sr_ach");
  r.sr_upper = number_field(j, "sr_upper");
  if (!j.contains("units") || !j.at("units").is_string()) {
    throw Error(Errc::ConfigError, "record field 'units' missing");
  }
  pr.units = j.at("units").get<std::string>();
  r.x_star = number_field(j, "x_star");
  return pr;
}

std::string error_json(const Error& err) {
  std::string out = "{\"code\":";
  append_escaped(out, err.code_name());
  out += ",\"message\":";
  append_escaped(out, err.what());
  out += "}";
  return out;
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::string out =
      "q,x_star,case,d_value,d_is_exact,c_value,sr_upper,beta_star,"
      "sr_ach,gap,gap_bound,error\n";
  for (const SweepRow& row : rows) {
    out += format_double(row.q);
    if (row.record) {
      const AnalysisRecord& r = *row.record;
      out += ',' + format_double(r.x_star);
      out += ',' + r.case_label;
      out += ',' + format_double(r.d_value);
      out += r.d_is_exact ? ",true" : ",false";
      out += ',' + format_double(r.c_value);
      out += ',' + format_double(r.sr_upper);
      out += ',' + format_double(r.beta_star);
      out += ',' + format_double(r.sr_ach);
      out += ',' + format_double(r.gap);
      out += ',' + format_double(r.gap_bound);
      out += ',';
    } else {
      out += ",,,,,,,,,,," + row.error;
    }
    out += '\n';
  }
  return out;
}

std::string summary_to_json(const VerifySummary& summary) {
  std::string out = "{\"all_passed\":";
  out += summary.all_passed ? "true" : "false";
  out += ",\"suites\":[";
  for (std::size_t k = 0; k < summary.suites.size(); ++k) {
    const SuiteResult& s = summary.suites[k];
    if (k) out += ',';
    out += "{\"detail\":";
    append_escaped(out, s.detail);
    out += ",\"failures\":" + std::to_string(s.failures);
    out += ",\"name\":";
    append_escaped(out, s.name);
    out += ",\"trials\":" + std::to_string(s.trials);
    out += ",\"worst_residual\":" + format_double(s.worst_residual);
    out += "}";
  }
  out += "]}";
  return out;
}

}  // namespace fadecap
