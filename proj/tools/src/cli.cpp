#include "symred/cli.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <ostream>

#include "symred/errors.hpp"

namespace symred::cli {

namespace {

std::vector<std::string> split_ids(const std::vector<std::string>& raw) {
  std::vector<std::string> ids;
  for (const auto& r : raw) {
    std::size_t start = 0;
    while (start <= r.size()) {
      const std::size_t end = std::min(r.find(',', start), r.size());
      if (end > start) ids.push_back(r.substr(start, end - start));
      start = end + 1;
    }
  }
  return ids;
}

std::vector<std::string> resolve_ids(const std::vector<std::string>& requested) {
  std::vector<std::string> ids;
  for (const auto& id : requested) {
    if (id == "all") {
      for (const auto& info : scenario_registry()) ids.push_back(info.id);
    } else {
      scenario_info(id);
      ids.push_back(id);
    }
  }
  if (ids.empty()) throw ConfigError("no scenario selected");
  return ids;
}

std::map<std::string, std::string> parse_params(const std::vector<std::string>& raw) {
  std::map<std::string, std::string> out;
  for (const auto& p : raw) {
    const auto eq = p.find('=');
    if (eq == std::string::npos || eq == 0) throw ConfigError("--param expects key=value, got '" + p + "'");
    out[p.substr(0, eq)] = p.substr(eq + 1);
  }
  return out;
}

/// Parameters a scenario declares, taken from the global set. Every given
/// parameter must be declared by at least one selected scenario.
std::map<std::string, std::string> params_for(const ScenarioInfo& info, const std::map<std::string, std::string>& all) {
  std::map<std::string, std::string> out;
  for (const auto& p : info.params)
    if (const auto it = all.find(p.name); it != all.end()) out.insert(*it);
  return out;
}

std::uint64_t seed_from_env(const char* value) {
  const std::string s = value;
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size())
    throw ConfigError("VERIFY_SEED must be an unsigned 64-bit integer, got '" + s + "'");
  return v;
}

void print_list(std::ostream& out) {
  std::size_t w = 0;
  for (const auto& info : scenario_registry()) w = std::max(w, info.id.size());
  for (const auto& info : scenario_registry()) {
    out << std::left << std::setw(static_cast<int>(w) + 2) << info.id << std::setw(28) << info.anchor;
    for (const auto& p : info.params) out << " " << p.name << "=" << p.default_value;
    out << "\n" << std::string(w + 2, ' ') << info.doc << "\n";
  }
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Numerical verification of symplectic and prequantum Frobenius reciprocity", "verify"};
  app.set_version_flag("--version", version());
  app.require_subcommand(1);

  auto* list = app.add_subcommand("list", "List scenario ids and anchors");
  (void)list;

  auto* run_cmd = app.add_subcommand("run", "Run scenarios and write a report");
  std::vector<std::string> scenario_raw;
  std::vector<std::string> param_raw;
  RunConfig config;
  std::optional<std::uint64_t> seed;
  std::string report_path;
  std::string format = "json";
  run_cmd->add_option("--scenario", scenario_raw, "Scenario id, comma list, or all")->required();
  run_cmd->add_option("--param", param_raw, "Scenario parameter key=value (repeatable)");
  run_cmd->add_option("--seed", seed, "Base seed (falls back to VERIFY_SEED, then 42)");
  run_cmd->add_option("--samples", config.samples, "Samples per check")->capture_default_str();
  run_cmd->add_option("--fd-step", config.fd_step, "Finite-difference step")->capture_default_str();
  run_cmd->add_option("--pass-tol", config.pass_tol, "Pass threshold")->capture_default_str();
  run_cmd->add_option("--fail-tol", config.fail_tol, "Fail threshold")->capture_default_str();
  run_cmd->add_option("--report", report_path, "Write the report to this path instead of stdout");
  run_cmd->add_option("--format", format, "Report format")->check(CLI::IsMember({"json", "text"}))->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kMatched : kUsage;
  }

  try {
    if (app.got_subcommand(list)) {
      print_list(out);
      return kMatched;
    }

    if (seed) {
      config.seed = *seed;
    } else if (const char* env = std::getenv("VERIFY_SEED")) {
      config.seed = seed_from_env(env);
    }
    config.validate();
    const auto ids = resolve_ids(split_ids(scenario_raw));
    const auto params = parse_params(param_raw);
    config.params = params;
    for (const auto& [k, v] : params) {
      const bool used = std::any_of(ids.begin(), ids.end(), [&](const auto& id) {
        const auto& ps = scenario_info(id).params;
        return std::any_of(ps.begin(), ps.end(), [&](const auto& p) { return p.name == k; });
      });
      if (!used) throw ConfigError("no selected scenario takes parameter '" + k + "'");
    }

    std::vector<ScenarioResult> results;
    for (const auto& id : ids) {
      RunConfig c = config;
      c.params = params_for(scenario_info(id), params);
      results.push_back(run_scenario(id, c));
    }

    const auto doc = report_document(config, ids, results);
    const std::string body = format == "json" ? doc.dump(2) + "\n" : text_report(doc);
    if (report_path.empty()) {
      out << body;
    } else {
      std::ofstream f(report_path, std::ios::binary);
      if (!f) throw ConfigError("cannot write report to '" + report_path + "'");
      f << body;
      for (const auto& s : doc["scenarios"])
        out << s["id"].get<std::string>() << ": " << s["verdict"].get<std::string>() << " ("
            << s["mismatches"].get<int>() << " mismatches)\n";
      out << "overall " << doc["overall"].get<std::string>() << "\n";
    }
    return doc["overall"] == "PASS" ? kMatched : kMismatch;
  } catch (const UnknownScenario& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
}

}  // namespace symred::cli
