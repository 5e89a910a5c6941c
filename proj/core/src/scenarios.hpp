#pragma once

#include <map>
#include <string>
#include <vector>

#include "symred/phase_space.hpp"
#include "symred/suites.hpp"

namespace symred::scenarios {

struct Context {
  RunConfig config;
  std::uint64_t seed = 0;
  std::map<std::string, std::string> params;

  /// Config tolerances; `pass` tightens the pass threshold when smaller.
  CheckOptions opts(double pass = 1.0, int samples = 0) const;
  const std::string& param(const std::string& name) const { return params.at(name); }
};

using Outcomes = std::vector<CheckOutcome>;

Outcomes spherical_harmonics(const Context& ctx);
Outcomes prequantum_sphere(const Context& ctx);
Outcomes torus_kms(const Context& ctx);
Outcomes peter_weyl(const Context& ctx);
Outcomes so2_plane_counterexample(const Context& ctx);
Outcomes strict_subgroup(const Context& ctx);
Outcomes symplectization_demo(const Context& ctx);

}  // namespace symred::scenarios
