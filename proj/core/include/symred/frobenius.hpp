#pragma once

#include "symred/prequantum.hpp"

namespace symred {

/// Induction data with the zero levels of (φ_M × ψ_M) and ψ_N.
struct FrobeniusInstance {
  std::string name;
  InductionData data;
  LevelSet level_M;
  LevelSet level_N;
};

struct PrequantumFrobeniusInstance {
  std::string name;
  PrequantumInductionData data;
  LevelSet level_M;
  LevelSet level_N;
};

/// r(x, (q, μ), y) = (q⁻¹x, y).
Vec map_r(const InductionData& data, const Vec& m);
Vec map_r(const PrequantumInductionData& data, const Vec& m);

/// r′(x, y) = (x, (e, Φ(x)), y).
Vec map_r_prime(const InductionData& data, const Vec& n);
Vec map_r_prime(const PrequantumInductionData& data, const Vec& n);

/// r∘r′ = id on level_N samples and level preservation in both directions.
/// Metrics: round_trip, level_M_to_N, level_N_to_M.
CheckReport check_reciprocity_maps(const FrobeniusInstance& inst, const CheckOptions& opts = {});
CheckReport check_reciprocity_maps(const PrequantumFrobeniusInstance& inst, const CheckOptions& opts = {});

struct PullbackOptions {
  int tangent_pairs = 10;
  /// Throw LevelViolation when a plot value leaves level_M.
  bool enforce_level = true;
  /// Replaces level_M.plots when non-empty.
  std::vector<PlotFactory> plots;
};

/// F*ω_M against F*r*ω_N for plots F into level_M. Metrics: souriau_step
/// (moment identity for Φ), level_step (the μ − Φ(x) terms).
CheckReport check_frobenius_pullback(const FrobeniusInstance& inst, const CheckOptions& opts = {},
                                     const PullbackOptions& popts = {});

/// F*ϖ_M̌ against F*ř*ϖ_Ň. Metrics: moment_step (ϖ(Z_X̃) = ⟨Φ, Z⟩),
/// level_step (⟨Φ(x̃) − μ, Z⟩).
CheckReport check_prequantum_frobenius_pullback(const PrequantumFrobeniusInstance& inst,
                                                const CheckOptions& opts = {},
                                                const PullbackOptions& popts = {});

/// Residual of check_frobenius_pullback with plain central differences at
/// `step` and `step / 2`. Passes when the ratio is at least 3.
/// Metrics: residual_step, residual_half_step, ratio.
CheckReport check_fd_scaling(const FrobeniusInstance& inst, const CheckOptions& opts = {},
                             double step = 1e-3);

/// r((g, h)m) = h·r(m) on level_M and r′(h n) = (ι(h), h)·r′(n) on level_N.
CheckReport check_orbit_correspondence(const FrobeniusInstance& inst, const CheckOptions& opts = {});

/// Every pair of `count` sampled points is related by g = F₂F₁ᵀ, where F is
/// the frame of a point. Residual |g·p₁ − p₂|.
CheckReport check_single_orbit(const std::string& name, const PointSampler& sample,
                               const std::function<Mat(const Vec&)>& frame, const ActionFn& action,
                               const GroupId& group, int count, const CheckOptions& opts = {});

/// Σ_{j ≤ degree} a_j sin(j⟨w_j, u⟩ + φ_j) with Σ|a_j| ≤ amplitude.
std::function<double(const Vec&)> trig_polynomial(Rng& rng, int dim, int degree, double amplitude);

/// μ(δq) = ⟨μ, δq·q⁻¹⟩ on the group carrier.
KForm right_invariant_form(const GroupId& group, const Vec& mu);

/// T*T² reduced by a dense winding H.
struct KmsInstance {
  double alpha = 0.0;
  GroupHom iota;
  GroupId group;
  Mat ann_h;  // orthonormal basis of ann(𝔥), one column per generator

  bool in_ann(const Vec& mu, double tol = 1e-12) const;
};

KmsInstance kms_instance(double alpha);

/// (a) Liouville identity (Q×M)*F*Liouv = (Q×M)*j*ϖ_{T*G} over plots into
/// G × ann(𝔥); (b) Φ∘F = φ∘j = μ at sampled points. max_residual is (a);
/// metrics liouville_residual, moment_residual, normalizer_defect.
/// (a) uses opts.tol, (b) must be below `moment_tolerance`.
CheckReport check_kms(const KmsInstance& inst, const CheckOptions& opts = {}, double moment_tolerance = 1e-12);

/// Points (q₁, μ), (q₂, μ) on the KMS level are related by the winding up to
/// eps after a Weyl search over `steps` turns. Verdict Approx when found.
CheckReport check_dense_orbit(const KmsInstance& inst, const CheckOptions& opts = {}, double eps = 1e-3,
                              int steps = 100000);

}  // namespace symred
