#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "symred/calculus.hpp"
#include "symred/lie.hpp"
#include "symred/report.hpp"

namespace symred {

using ActionFn = std::function<Vec(const GroupElement&, const Vec&)>;
using MomentFn = std::function<Vec(const Vec&)>;  // coalgebra coordinates
using PointSampler = std::function<Vec(Rng&)>;
using CircleFn = std::function<Vec(double, const Vec&)>;
using PlotFactory = std::function<Plot(Rng&)>;

/// (X, ω, Φ) with a G-action on an embedded carrier.
struct HamiltonianSpace {
  std::string name;
  SpacePtr carrier;
  GroupId group;
  ActionFn action;
  KForm omega;
  MomentFn moment;
  PointSampler sample;

  CoalgebraElement moment_at(const Vec& x) const;
  Vec act(const GroupElement& g, const Vec& x) const;
};

/// Complex coordinate used to fix the circle gauge: the circle must act on it
/// by z ↦ e^{iθ} z.
struct GaugeChart {
  std::string name;
  std::function<std::complex<double>(const Vec&)> coordinate;
};

/// (X̃, ϖ) with a G-action and a circle action. `circle` may be empty for
/// exact G-spaces such as T*G that are only used as factors. `moment` is an
/// optional closed form; otherwise ⟨Φ, Z⟩ = ϖ(Z_X̃).
struct PrequantumSpace {
  std::string name;
  SpacePtr carrier;
  GroupId group;
  ActionFn action;
  KForm varpi;
  CircleFn circle;
  PointSampler sample;
  MomentFn moment;
  std::vector<GaugeChart> charts;

  Vec act(const GroupElement& g, const Vec& x) const;
  CoalgebraElement moment_at(const Vec& x) const;
};

struct CheckOptions {
  std::uint64_t seed = 42;
  int samples = 200;
  DiffOptions diff{};
  Tolerances tol = Tolerances::absolute(1e-6, 1e-3);
};

/// Points where selected moment components vanish, with a sampler and a
/// catalog of plots into the level.
struct LevelSet {
  std::string name;
  SpacePtr carrier;
  MomentFn moment;
  std::vector<int> selector;  // empty selects every component
  double tolerance = 1e-9;
  PointSampler sample;
  std::vector<PlotFactory> plots;

  double violation(const Vec& x) const;
};

Vec infinitesimal_action(const GroupId& group, const ActionFn& action, const AlgebraElement& z,
                         const Vec& x, const DiffOptions& opts = {});
Vec infinitesimal_action(const HamiltonianSpace& space, const AlgebraElement& z, const Vec& x,
                         const DiffOptions& opts = {});
Vec infinitesimal_action(const PrequantumSpace& space, const AlgebraElement& z, const Vec& x,
                         const DiffOptions& opts = {});

/// Random tangent vector at x (Gaussian in an orthonormal tangent basis).
Vec random_tangent(const EmbeddedSpace& carrier, const Vec& x, Rng& rng);

CheckReport check_action_axioms(const std::string& name, const SpacePtr& carrier,
                                const GroupId& group, const ActionFn& action,
                                const PointSampler& sample, const CheckOptions& opts);
CheckReport check_moment_condition(const HamiltonianSpace& space, const CheckOptions& opts = {});
CheckReport check_equivariance(const HamiltonianSpace& space, const CheckOptions& opts = {});
/// ω_{gx}(g_*v, g_*w) − ω_x(v, w) over samples.
CheckReport check_form_invariance(const HamiltonianSpace& space, const CheckOptions& opts = {});

struct CardinalOptions {
  DiffOptions diff{};
  double level_tolerance = 1e-9;
  double zero_cutoff = 1e-7;     // relative singular value treated as zero
  double nonzero_cutoff = 1e-4;  // relative singular value treated as nonzero
  double stabilizer_cutoff = 1e-8;
  double subspace_tolerance = 1e-6;
};

/// Kernel of DΦ(x) against the ω-orthogonal of the orbit, and rank of DΦ(x)
/// against dim G − dim 𝔤ₓ. Metrics: rank, stabilizer_dim, kernel_dim,
/// subspace_distance, image_annihilator_defect.
CheckReport cardinal_checks(const HamiltonianSpace& space, const Vec& x,
                            const CardinalOptions& opts = {});

/// ⟨Φ(x̃), Z_k⟩ = ϖ(Z_k x̃) over the algebra basis.
CoalgebraElement prequantum_moment(const PrequantumSpace& space, const Vec& x,
                                   const DiffOptions& opts = {});

/// Reeb normalization ϖ(∂θ) = 1, circle invariance of ϖ, and freeness of the
/// circle action on probe points (metric min_displacement).
CheckReport check_reeb(const PrequantumSpace& space, const CheckOptions& opts = {});
CheckReport check_varpi_invariance(const PrequantumSpace& space, const CheckOptions& opts = {});
/// Closed-form moment against ϖ(Z_X̃).
CheckReport check_moment_formula(const PrequantumSpace& space, const CheckOptions& opts = {});

/// (X̃, dϖ, Φ) as a Hamiltonian record; requires ϖ.exact_d.
HamiltonianSpace presymplectic_view(const PrequantumSpace& space);

std::vector<CheckReport> axiom_gate(const HamiltonianSpace& space, const CheckOptions& opts = {});
std::vector<CheckReport> axiom_gate(const PrequantumSpace& space, const CheckOptions& opts = {});

/// Level membership of sampled points and of plot values on a probe grid.
CheckReport check_level_samples(const LevelSet& level, const CheckOptions& opts = {});

}  // namespace symred
