#pragma once

#include "symred/descent.hpp"

namespace symred {

/// Frame (u₁ u₂ u₃) with u₃ = (cos φ, sin φ, 0) on the equator and u₁ at
/// angle ψ from the horizontal in the plane u₃⊥.
Mat equator_frame(double phi, double psi);

/// Smooth rotation-valued field u ↦ exp(trigonometric polynomial)·q₀ on the
/// cube of dimension `dim`.
std::function<GroupElement(const Vec&)> smooth_group_field(const GroupId& group, Rng& rng, int dim,
                                                           double amplitude = 1.0);

/// X = ℓS², H = SO2 ⊂ SO3, Y = {0}. level_M = {(q x̄, q, q x̄) : x̄ on the
/// equator}, level_N = equator.
FrobeniusInstance spherical_harmonics_instance(double ell);

/// Hom(ℓS², TS²) with its zero level {(ℓu, r, ℓs) : (r s u) ∈ SO3}.
struct FramedLevel {
  HamiltonianSpace space;
  LevelSet level;
  std::function<Mat(const Vec&)> frame;
};

FramedLevel spherical_harmonics_g_level(double ell);

/// Zero section of TS², the zero level of r × p.
LevelSet tangent_sphere_zero_section();

/// X̃ = X̃ℓ, Ỹ = {0̃}, H = SO2 ⊂ SO3.
PrequantumFrobeniusInstance prequantum_sphere_instance(int ell);

struct PrequantumLevel {
  PrequantumSpace space;
  LevelSet level;
};

/// {((e₃ − i s)/√2)^ℓ ⊠ z : s ⊥ e₃} in X̃ℓ⁻ ⊠ {0̃} over SO2.
PrequantumLevel prequantum_h_level(int ell);
/// {((r − i s)/√2)^ℓ ⊠ (r, ℓs, z)} in X̃ℓ⁻ ⊠ T̃S².
PrequantumLevel prequantum_g_level(int ell);

/// X = ℓS², H = {e}, Y = {0}: level_M is the graph {(x, q, Φ(x))}.
FrobeniusInstance peter_weyl_instance(double ell);

/// ψ_M⁻¹(0) inside M = T*G × Y for X = {0}, Y = plane; the H-action on M is
/// the second factor of G×H.
struct InductionLevel {
  InductionData data;
  LevelSet level;
  GroupId h;
  ActionFn h_action;
  MomentFn h_moment;
};

InductionLevel so3_so2_induction_level();
InductionLevel torus_winding_induction_level(double alpha);

/// The torus as a level with trivial moment, for right-invariant forms.
LevelSet torus_group_level();

/// Gauge action of the winding on the torus: (t, q) ↦ q ι(t)⁻¹.
ActionFn winding_gauge_action(const KmsInstance& inst);

/// form + x[coeff]·dx_i ∧ dx_j.
KForm perturbed_form(const KForm& form, int coeff, int i, int j);

/// ω vanishes on orbit tangents at level points and the orbit has half the
/// carrier dimension. Metrics: orbit_dim, half_dim.
CheckReport check_lagrangian(const HamiltonianSpace& space, const LevelSet& level, const CheckOptions& opts = {});

/// ξ^ℓ is constant on ℓ-th root of unity orbits, recovers from its preimage,
/// and separates e^{iπ/ℓ}ξ from ξ. Metric: off_fiber_separation.
CheckReport check_fusion_fibers(int ell, const CheckOptions& opts = {});

/// (R × X̃₁|SO2, d(e^s ϖ)) with the level R × {u₃ on the equator}.
struct SymplectizationLevel {
  HamiltonianSpace space;
  LevelSet level;
};

SymplectizationLevel symplectization_level();

/// ω(∂s, v) = e^s ϖ(v) and Φ(s, x) = e^s Φ(x) on samples.
CheckReport check_symplectization(const PrequantumSpace& space, const CheckOptions& opts = {});

}  // namespace symred
