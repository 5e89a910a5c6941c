#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "symred/report.hpp"

namespace symred {

struct RunConfig {
  std::uint64_t seed = 42;
  int samples = 200;
  double fd_step = 1e-5;
  double pass_tol = 1e-6;
  double fail_tol = 1e-3;
  std::map<std::string, std::string> params;

  /// Throws ConfigError unless 0 < pass_tol < fail_tol, samples ≥ 10 and
  /// fd_step > 0.
  void validate() const;
};

struct CheckOutcome {
  CheckReport report;
  Verdict expected = Verdict::Pass;

  bool matched() const { return report.verdict == expected; }
};

struct ScenarioResult {
  std::string id;
  std::string anchor;
  std::uint64_t seed = 0;
  std::map<std::string, std::string> params;  // effective values, defaults filled in
  std::vector<CheckOutcome> checks;

  bool matched() const;
  int mismatches() const;
  /// One report over all checks: max/mean residual, verdict PASS iff every
  /// check matched its expected verdict.
  CheckReport summary() const;
};

struct ParamSpec {
  std::string name;
  std::string default_value;
  std::string doc;
};

struct ScenarioInfo {
  std::string id;
  std::string anchor;
  std::string doc;
  std::vector<ParamSpec> params;
};

const std::vector<ScenarioInfo>& scenario_registry();
const ScenarioInfo& scenario_info(const std::string& id);  // throws UnknownScenario

/// Anchor labels that checks may carry, with a one-line description each.
const std::map<std::string, std::string>& anchor_table();

/// Per-scenario seed keyed by (seed, id).
std::uint64_t scenario_seed(std::uint64_t seed, const std::string& id);

/// Throws UnknownScenario or ConfigError (bad config, unknown or malformed
/// parameter).
ScenarioResult run_scenario(const std::string& id, const RunConfig& config);

/// Slope of a dense winding: sqrt(k) with k not a perfect square, golden, or
/// pi*p/q. Anything else, including decimal literals, is a ConfigError.
double parse_alpha(const std::string& expr);

/// Comma-separated positive integers within [lo, hi].
std::vector<int> parse_int_list(const std::string& name, const std::string& value, int lo, int hi);

}  // namespace symred
