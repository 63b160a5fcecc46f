#include "fadecap/cli.hpp"

#include <fstream>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "fadecap/analysis.hpp"
#include "fadecap/batch.hpp"
#include "fadecap/report.hpp"
#include "fadecap/suites.hpp"

namespace fadecap {

namespace {

const nlohmann::json& get_key(const nlohmann::json& j, const char* key) {
  if (!j.contains(key)) {
    throw Error(Errc::ConfigError,
                std::string("config is missing required key '") + key + "'");
  }
  return j.at(key);
}

std::vector<double> as_number_array(const nlohmann::json& j,
                                    const char* key) {
  if (!j.is_array()) {
    throw Error(Errc::ConfigError,
                std::string("config key '") + key + "' must be an array");
  }
  std::vector<double> out;
  for (const auto& e : j) {
    if (!e.is_number()) {
      throw Error(Errc::ConfigError, std::string("config key '") + key +
                                         "' must hold numbers only");
    }
    out.push_back(e.get<double>());
  }
  return out;
}

double as_number(const nlohmann::json& j, const char* key) {
  if (!j.is_number()) {
    throw Error(Errc::ConfigError,
                std::string("config key '") + key + "' must be a number");
  }
  return j.get<double>();
}

}  // namespace

LoadedConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw Error(Errc::ConfigError, "cannot open config file: " + path);
  }
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::ConfigError,
                std::string("config does not parse as JSON: ") + e.what());
  }
  if (!j.is_object()) {
    throw Error(Errc::ConfigError, "config must be a JSON object");
  }
  for (const auto& item : j.items()) {
    const std::string& k = item.key();
    if (k != "h" && k != "p" && k != "g" && k != "q" && k != "tolerances") {
      throw Error(Errc::ConfigError, "unknown config key '" + k + "'");
    }
  }

  LoadedConfig cfg;
  cfg.raw.h = as_number_array(get_key(j, "h"), "h");
  cfg.raw.p = as_number_array(get_key(j, "p"), "p");
  cfg.raw.g = as_number(get_key(j, "g"), "g");
  cfg.raw.q = as_number(get_key(j, "q"), "q");

  if (j.contains("tolerances")) {
    const nlohmann::json& t = j.at("tolerances");
    if (!t.is_object()) {
      throw Error(Errc::ConfigError, "'tolerances' must be an object");
    }
    for (const auto& item : t.items()) {
      const std::string& k = item.key();
      if (k == "state_merge") {
        cfg.tol.state_merge = as_number(item.value(), "state_merge");
      } else if (k == "pmf_sum") {
        cfg.tol.pmf_sum = as_number(item.value(), "pmf_sum");
      } else if (k == "root_residual") {
        cfg.tol.root_residual = as_number(item.value(), "root_residual");
      } else {
        throw Error(Errc::ConfigError, "unknown tolerance key '" + k + "'");
      }
    }
  }
  return cfg;
}

namespace {

int cmd_analyze(const std::string& config_path, const std::string& out_path,
                bool nats, std::ostream& out) {
  const LoadedConfig cfg = load_config(config_path);
  const ChannelSpec spec = validate_and_normalize(cfg.raw, cfg.tol);
  AnalysisRecord rec = analyze(spec, cfg.tol);
  if (nats) rec = to_nats(rec);
  const std::string line =
      record_to_json(rec, nats ? "nats" : "bits") + "\n";
  if (!out_path.empty()) {
    std::ofstream f(out_path, std::ios::binary);
    if (!f) {
      throw Error(Errc::ConfigError, "cannot write to " + out_path);
    }
    f << line;
  } else {
    out << line;
  }
  return 0;
}

int cmd_sweep(const std::string& config_path, double q_min, double q_max,
              std::size_t points, bool log_spacing, std::ostream& out) {
  const LoadedConfig cfg = load_config(config_path);
  const ChannelSpec spec = validate_and_normalize(cfg.raw, cfg.tol);
  const std::vector<double> qs =
      make_q_grid(q_min, q_max, points, log_spacing);
  const std::vector<SweepRow> rows = run_sweep(spec, qs, Exec::Parallel);
  out << sweep_csv(rows);
  return 0;
}

int cmd_verify(const std::string& config_path, std::size_t random_trials,
               std::uint64_t seed, std::ostream& out) {
  VerifySummary summary;
  if (!config_path.empty()) {
    const LoadedConfig cfg = load_config(config_path);
    const ChannelSpec spec = validate_and_normalize(cfg.raw, cfg.tol);
    summary = run_all_suites_config(spec, Exec::Parallel);
  } else {
    summary = run_all_suites_random(random_trials, seed, Exec::Parallel);
  }
  out << summary_to_json(summary) << "\n";
  return summary.all_passed ? 0 : 1;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"Sum-capacity bounds for the one-sided fading broadcast "
               "channel"};
  app.require_subcommand(1);

  std::string analyze_config, analyze_out;
  bool analyze_nats = false;
  CLI::App* analyze_cmd = app.add_subcommand(
      "analyze", "Analyze one channel and emit a JSON record");
  analyze_cmd->add_option("--config", analyze_config, "channel config JSON")
      ->required();
  analyze_cmd->add_option("--out", analyze_out,
                          "write the record here instead of stdout");
  analyze_cmd->add_flag("--nats", analyze_nats,
                        "report rates in nats instead of bits");

  std::string sweep_config;
  double q_min = 0.0, q_max = 0.0;
  std::size_t points = 0;
  bool log_spacing = false;
  CLI::App* sweep_cmd = app.add_subcommand(
      "sweep", "Analyze a channel over a power grid and emit CSV");
  sweep_cmd->add_option("--config", sweep_config, "channel config JSON")
      ->required();
  sweep_cmd->add_option("--q-min", q_min, "lowest power")->required();
  sweep_cmd->add_option("--q-max", q_max, "highest power")->required();
  sweep_cmd->add_option("--points", points, "grid size")->required();
  sweep_cmd->add_flag("--log", log_spacing, "log-spaced grid");

  std::string verify_config;
  std::size_t random_trials = 0;
  std::uint64_t seed = 0;
  CLI::App* verify_cmd = app.add_subcommand(
      "verify", "Run the numerical verification suites");
  CLI::Option* vc =
      verify_cmd->add_option("--config", verify_config,
                             "verify this channel instead of random ones");
  CLI::Option* vr = verify_cmd->add_option(
      "--random", random_trials, "number of randomized trials per suite");
  verify_cmd->add_option("--seed", seed, "randomization seed");
  vc->excludes(vr);
  vr->excludes(vc);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    const Error wrapped(Errc::ConfigError, e.what());
    err << error_json(wrapped) << "\n";
    return 2;
  }

  try {
    if (analyze_cmd->parsed()) {
      return cmd_analyze(analyze_config, analyze_out, analyze_nats, out);
    }
    if (sweep_cmd->parsed()) {
      return cmd_sweep(sweep_config, q_min, q_max, points, log_spacing, out);
    }
    if (!verify_config.empty() || random_trials > 0) {
      return cmd_verify(verify_config, random_trials, seed, out);
    }
    throw Error(Errc::ConfigError,
                "verify needs either --config or --random <trials>");
  } catch (const Error& e) {
    err << error_json(e) << "\n";
    return errc_exit_code(e.code());
  } catch (const std::exception& e) {
    const Error wrapped(Errc::NonConvergence,
                        std::string("unexpected failure: ") + e.what());
    err << error_json(wrapped) << "\n";
    return errc_exit_code(wrapped.code());
  }
}

}  // namespace fadecap
