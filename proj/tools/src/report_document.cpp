#include <cmath>
#include <iomanip>
#include <sstream>

#include "symred/cli.hpp"

namespace symred::cli {

namespace {

using nlohmann::ordered_json;

/// Non-finite values become null.
ordered_json number(double v) { return std::isfinite(v) ? ordered_json(v) : ordered_json(nullptr); }

ordered_json vector_json(const Vec& v) {
  ordered_json a = ordered_json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(number(v[i]));
  return a;
}

ordered_json check_json(const CheckOutcome& c) {
  const CheckReport& r = c.report;
  ordered_json j;
  j["name"] = r.name;
  j["op"] = r.op;
  j["anchor"] = r.anchor;
  j["samples"] = r.samples;
  j["max_residual"] = number(r.max_residual);
  j["mean_residual"] = number(r.mean_residual);
  j["tolerance"] = number(r.tolerance);
  j["fail_threshold"] = number(r.fail_threshold);
  j["verdict"] = to_string(r.verdict);
  j["expected"] = to_string(c.expected);
  j["matched"] = c.matched();
  ordered_json metrics = ordered_json::object();
  for (const auto& m : r.metrics) metrics[m.name] = number(m.value);
  j["metrics"] = metrics;
  j["notes"] = r.notes;
  if (r.witness) {
    ordered_json w;
    w["point"] = vector_json(r.witness->point);
    ordered_json vs = ordered_json::array();
    for (const auto& v : r.witness->vectors) vs.push_back(vector_json(v));
    w["vectors"] = vs;
    w["residual"] = number(r.witness->residual);
    w["note"] = r.witness->note;
    j["witness"] = w;
  } else {
    j["witness"] = nullptr;
  }
  return j;
}

std::string fmt(const ordered_json& v) {
  if (v.is_null()) return "inf";
  std::ostringstream os;
  os << std::setprecision(3) << std::scientific << v.get<double>();
  return os.str();
}

}  // namespace

std::string version() {
#ifdef SYMRED_VERSION
  return SYMRED_VERSION;
#else
  return "unknown";
#endif
}

ordered_json report_document(const RunConfig& config, const std::vector<std::string>& ids,
                             const std::vector<ScenarioResult>& results) {
  ordered_json doc;
  doc["schema_version"] = kSchemaVersion;
  doc["tool"] = {{"name", "verify"}, {"version", version()}};
  ordered_json cfg;
  cfg["scenarios"] = ids;
  cfg["seed"] = config.seed;
  cfg["samples"] = config.samples;
  cfg["fd_step"] = config.fd_step;
  cfg["pass_tol"] = config.pass_tol;
  cfg["fail_tol"] = config.fail_tol;
  cfg["params"] = ordered_json(config.params);
  doc["config"] = cfg;

  bool all = true;
  ordered_json scen = ordered_json::array();
  for (const auto& r : results) {
    const CheckReport s = r.summary();
    ordered_json j;
    j["id"] = r.id;
    j["anchor"] = r.anchor;
    j["seed"] = r.seed;
    j["params"] = ordered_json(r.params);
    j["verdict"] = r.matched() ? "PASS" : "FAIL";
    j["checks_total"] = r.checks.size();
    j["mismatches"] = r.mismatches();
    j["max_residual"] = number(s.max_residual);
    j["mean_residual"] = number(s.mean_residual);
    ordered_json checks = ordered_json::array();
    for (const auto& c : r.checks) checks.push_back(check_json(c));
    j["checks"] = checks;
    scen.push_back(j);
    all = all && r.matched();
  }
  doc["scenarios"] = scen;
  doc["overall"] = all ? "PASS" : "FAIL";
  return doc;
}

std::string text_report(const ordered_json& doc) {
  std::ostringstream os;
  os << "verify " << doc["tool"]["version"].get<std::string>() << "  seed " << doc["config"]["seed"].get<std::uint64_t>()
     << "  samples " << doc["config"]["samples"].get<int>() << "\n";
  for (const auto& s : doc["scenarios"]) {
    os << "\n" << s["id"].get<std::string>() << " [" << s["anchor"].get<std::string>() << "]";
    for (const auto& [k, v] : s["params"].items()) os << " " << k << "=" << v.get<std::string>();
    os << "\n";
    for (const auto& c : s["checks"]) {
      const bool matched = c["matched"].get<bool>();
      os << "  " << (matched ? "ok  " : "MISS") << " " << std::left << std::setw(12) << c["verdict"].get<std::string>();
      if (c["expected"] != "PASS" || !matched) os << "(expected " << c["expected"].get<std::string>() << ") ";
      os << c["op"].get<std::string>() << "  " << c["name"].get<std::string>() << "  max " << fmt(c["max_residual"])
         << " / tol " << fmt(c["tolerance"]) << "\n";
    }
    os << "  => " << s["verdict"].get<std::string>() << " (" << s["checks_total"].get<int>() << " checks, "
       << s["mismatches"].get<int>() << " mismatches)\n";
  }
  os << "\noverall " << doc["overall"].get<std::string>() << "\n";
  return os.str();
}

}  // namespace symred::cli
