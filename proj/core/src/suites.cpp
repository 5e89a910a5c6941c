#include "symred/suites.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>
#include <numeric>
#include <regex>

#include "scenarios.hpp"
#include "symred/errors.hpp"
#include "symred/rng.hpp"

namespace symred {

void RunConfig::validate() const {
  if (!(pass_tol > 0.0) || !(pass_tol < fail_tol))
    throw ConfigError("tolerances must satisfy 0 < pass < fail, got pass " + std::to_string(pass_tol) +
                      " fail " + std::to_string(fail_tol));
  if (samples < 10) throw ConfigError("samples must be at least 10, got " + std::to_string(samples));
  if (!(fd_step > 0.0) || !std::isfinite(fd_step)) throw ConfigError("fd_step must be positive");
}

bool ScenarioResult::matched() const { return mismatches() == 0; }

int ScenarioResult::mismatches() const {
  return static_cast<int>(std::count_if(checks.begin(), checks.end(), [](const auto& c) { return !c.matched(); }));
}

CheckReport ScenarioResult::summary() const {
  CheckReport r;
  r.name = id;
  r.op = "run_scenario";
  r.anchor = anchor;
  r.seed = seed;
  double sum = 0.0;
  for (const auto& c : checks) {
    r.samples += c.report.samples;
    r.max_residual = std::max(r.max_residual, c.report.max_residual);
    sum += c.report.mean_residual;
  }
  r.mean_residual = checks.empty() ? 0.0 : sum / static_cast<double>(checks.size());
  r.verdict = matched() ? Verdict::Pass : Verdict::Fail;
  r.set_metric("checks", static_cast<double>(checks.size()));
  r.set_metric("mismatches", mismatches());
  return r;
}

namespace {

using Builder = scenarios::Outcomes (*)(const scenarios::Context&);

struct Entry {
  ScenarioInfo info;
  Builder build;
};

const std::vector<Entry>& entries() {
  static const std::vector<Entry> e = {
      {{"spherical_harmonics", "equator-level",
        "X = ℓS², H = SO2, Y = {0}: levels, Lagrangian orbits, Frobenius pullback, cardinal rank, one reduced "
        "point against the weight-0 multiplicity",
        {{"l", "1,2,3", "comma-separated integers in [1, 20]"}}},
       scenarios::spherical_harmonics},
      {{"prequantum_sphere", "prequantized-sphere",
        "X̃ = X̃ℓ (fusion power of the prequantized sphere), Ỹ = {0̃}: Reeb normalization, lens fibers, "
        "prequantum levels and pullback",
        {{"l", "1,2", "comma-separated integers in [1, 6]"}}},
       scenarios::prequantum_sphere},
      {{"torus_kms", "dense-subgroup-reduction",
        "T*T² reduced by a dense winding: Liouville identity, cotangent moment, descent iff μ ∈ ann(𝔥), dense "
        "orbits",
        {{"alpha", "sqrt(2)", "slope: sqrt(k), golden, or pi*p/q"}}},
       scenarios::torus_kms},
      {{"peter_weyl", "graph-level",
        "X = ℓS², H = {e}: the level of Hom(X, T*SO3) is the graph of Φ and r identifies it with X⁻",
        {{"l", "1", "positive radius"}}},
       scenarios::peter_weyl},
      {{"so2_plane_counterexample", "smooth-division",
        "SO2 on R²: flat plots related by a gauge that jumps by π, against a smooth gauge",
        {}},
       scenarios::so2_plane_counterexample},
      {{"strict_subgroup", "equal-pullbacks",
        "descent of ω_M on the ψ_M level for SO2 ⊂ SO3 and a dense winding ⊂ T², with a non-invariant control",
        {{"pair", "both", "so3_so2, torus_winding, or both"}, {"alpha", "sqrt(2)", "winding slope"}}},
       scenarios::strict_subgroup},
      {{"symplectization_demo", "symplectization",
        "(R × X̃₁|SO2, d(e^s ϖ)): axioms, radial identity, level descent", {}},
       scenarios::symplectization_demo},
  };
  return e;
}

const Entry& entry(const std::string& id) {
  for (const auto& e : entries())
    if (e.info.id == id) return e;
  throw UnknownScenario("unknown scenario '" + id + "'");
}

}  // namespace

const std::vector<ScenarioInfo>& scenario_registry() {
  static const std::vector<ScenarioInfo> infos = [] {
    std::vector<ScenarioInfo> v;
    for (const auto& e : entries()) v.push_back(e.info);
    return v;
  }();
  return infos;
}

const ScenarioInfo& scenario_info(const std::string& id) { return entry(id).info; }

const std::map<std::string, std::string>& anchor_table() {
  static const std::map<std::string, std::string> t = {
      {"group-action", "the action is a group action preserving the carrier"},
      {"invariant-form", "the form is invariant under the action"},
      {"moment-map-convention", "i_{Z_X}ω = −d⟨Φ, Z⟩"},
      {"equivariant-moment", "Φ(g x) = Ad*_g Φ(x)"},
      {"reeb-circle-action", "ϖ(∂θ) = 1 and the circle action preserves ϖ"},
      {"prequantum-moment", "⟨Φ, Z⟩ = ϖ(Z_X̃)"},
      {"zero-level", "points and plots lie on the zero level"},
      {"lagrangian-level", "a zero level that is a single orbit is Lagrangian"},
      {"right-inverse", "r ∘ r′ = id and level preservation of the reciprocity maps"},
      {"orbit-correspondence", "r sends G×H-orbits to H-orbits and r′ the converse"},
      {"auxiliary-pullback", "F*ω_M = F*r*ω_N for plots into the level"},
      {"auxiliary-pullback-prequantum", "F*ϖ_M̌ = F*ř*ϖ_Ň for plots into the level"},
      {"cardinal-consequences", "ker DΦ is the ω-orthogonal of the orbit and rank DΦ = dim G − dim 𝔤ₓ"},
      {"single-orbit", "the level is one orbit, solved frame by frame"},
      {"multiplicity", "one reduced point against the weight-0 multiplicity"},
      {"equal-pullbacks", "Souriau criterion on gauge-related plots"},
      {"smooth-division", "continuity of the gauge relating two plots"},
      {"liouville-pullback", "Liouville identity and cotangent moment for T*G reduced by a dense subgroup"},
      {"dense-orbit", "orbit equality for a dense winding up to ε"},
      {"lens-space", "fibers of ξ ↦ ξ^ℓ are the ℓ-th roots of unity"},
      {"symplectization", "ω(∂s, ·) = e^s ϖ and Φ scales by e^s"},
      {"equator-level", "spherical harmonics as induction from SO2"},
      {"prequantized-sphere", "prequantum induction on the sphere"},
      {"dense-subgroup-reduction", "reduction of T*T² by a dense winding"},
      {"graph-level", "induction from the trivial group"},
  };
  return t;
}

std::uint64_t scenario_seed(std::uint64_t seed, const std::string& id) {
  return mix64(seed ^ hash_label("scenario/" + id));
}

ScenarioResult run_scenario(const std::string& id, const RunConfig& config) {
  const Entry& e = entry(id);
  config.validate();
  scenarios::Context ctx;
  ctx.config = config;
  ctx.seed = scenario_seed(config.seed, id);
  for (const auto& [k, v] : config.params) {
    const bool known = std::any_of(e.info.params.begin(), e.info.params.end(), [&](const auto& p) { return p.name == k; });
    if (!known) throw ConfigError("scenario " + id + " has no parameter '" + k + "'");
  }
  for (const auto& p : e.info.params) {
    const auto it = config.params.find(p.name);
    ctx.params[p.name] = it == config.params.end() ? p.default_value : it->second;
  }
  ScenarioResult r;
  r.id = id;
  r.anchor = e.info.anchor;
  r.seed = ctx.seed;
  r.params = ctx.params;
  r.checks = e.build(ctx);
  return r;
}

double parse_alpha(const std::string& expr) {
  static const std::regex sqrt_re(R"(sqrt\((\d+)\))");
  static const std::regex pi_re(R"(pi(?:\*(\d+)(?:/(\d+))?|/(\d+))?)");
  std::smatch m;
  const auto to_int = [&](const std::string& s) {
    long v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size() || v <= 0 || v > 1000000)
      throw ConfigError("alpha: integer out of range in '" + expr + "'");
    return v;
  };
  if (expr == "golden") return std::numbers::phi;
  if (std::regex_match(expr, m, sqrt_re)) {
    const long k = to_int(m[1]);
    const long r = std::lround(std::sqrt(static_cast<double>(k)));
    if (r * r == k) throw ConfigError("alpha = " + expr + " is rational: the winding is closed, not dense");
    return std::sqrt(static_cast<double>(k));
  }
  if (std::regex_match(expr, m, pi_re)) {
    long p = 1, q = 1;
    if (m[1].matched) p = to_int(m[1]);
    if (m[2].matched) q = to_int(m[2]);
    if (m[3].matched) q = to_int(m[3]);
    return std::numbers::pi * static_cast<double>(p) / static_cast<double>(q);
  }
  throw ConfigError("alpha = '" + expr +
                    "' is not a recognized irrational (use sqrt(k), golden, or pi*p/q); rational slopes give a "
                    "closed winding, not a dense one");
}

std::vector<int> parse_int_list(const std::string& name, const std::string& value, int lo, int hi) {
  std::vector<int> out;
  std::size_t start = 0;
  while (start <= value.size()) {
    const std::size_t end = std::min(value.find(',', start), value.size());
    const std::string tok = value.substr(start, end - start);
    int v = 0;
    const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (tok.empty() || ec != std::errc() || ptr != tok.data() + tok.size() || v < lo || v > hi)
      throw ConfigError(name + ": expected integers in [" + std::to_string(lo) + ", " + std::to_string(hi) +
                        "], got '" + value + "'");
    out.push_back(v);
    start = end + 1;
  }
  return out;
}

}  // namespace symred
