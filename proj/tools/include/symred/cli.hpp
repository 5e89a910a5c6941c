#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "symred/suites.hpp"

namespace symred::cli {

inline constexpr const char* kSchemaVersion = "1.0";

enum ExitCode : int { kMatched = 0, kMismatch = 1, kUsage = 2 };

/// Parses argv and runs `list` or `run`. Reports go to `out` or the --report
/// file, diagnostics to `err`. Returns an ExitCode.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// JSON report for the given runs; key order is fixed and no wall-clock
/// data is included.
nlohmann::ordered_json report_document(const RunConfig& config, const std::vector<std::string>& ids,
                                       const std::vector<ScenarioResult>& results);

/// Human summary derived from report_document.
std::string text_report(const nlohmann::ordered_json& doc);

std::string version();

}  // namespace symred::cli
