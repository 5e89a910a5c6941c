#pragma once

#include <optional>

#include "symred/frobenius.hpp"

namespace symred {

/// P into a level, R into the gauge group, Q(u) = R(u)·P(u).
struct GaugePair {
  Plot P;
  Plot R;
  Plot Q;
};

struct GaugeOptions {
  int degree = 3;
  double amplitude = 2.0;
  /// Algebra directions the gauge may move along (columns); empty means all.
  Mat directions;
};

/// Pairs with P drawn from the level's plot catalog and R(u) = exp of a
/// seeded trigonometric polynomial in u. Throws EmptyCatalog.
std::vector<GaugePair> generate_gauge_pairs(const LevelSet& level, const GroupId& group, const ActionFn& action,
                                            int count, std::uint64_t seed, const GaugeOptions& gopts = {});

/// Action and moment used to report the moment-map cancellation term by term.
struct MomentTerms {
  GroupId group;
  ActionFn action;
  MomentFn moment;
};

/// P*form against Q*form over all pairs on `samples` points each.
/// With `terms`: metrics moment_identity_defect (ω(δx + Z_X, δ′x + Z′_X) −
/// ω(δx, δ′x) against the moment terms) and moment_terms (their size).
CheckReport souriau_check(const std::string& name, const KForm& form, const std::vector<GaugePair>& pairs,
                          const CheckOptions& opts = {}, const std::optional<MomentTerms>& terms = std::nullopt);

/// Pointwise gauge solver: the unique R with Q = R·P, or nullopt when P has
/// a nontrivial stabilizer.
using DivisionSolver = std::function<std::optional<GroupElement>(const Vec& p, const Vec& q)>;

/// SO2 acting on the plane: angle from P to Q.
DivisionSolver plane_rotation_solver(double free_tolerance = 0.0);

/// SO3: R = F(Q) F(P)ᵀ for a frame extractor.
DivisionSolver frame_alignment_solver(std::function<std::optional<Mat>(const Vec&)> frame);

struct DivisionProbeOptions {
  int grid = 2001;
  /// Jumps above lipschitz · mesh are reported as discontinuities.
  double lipschitz = 10.0;
  double orbit_tolerance = 1e-9;
  /// Derivatives of P and Q through order 3 at this parameter are reported.
  std::optional<double> flat_point;
  double derivative_step = 1e-2;
};

/// Reconstructs R on a grid over a one-parameter domain and reports the
/// largest jump between adjacent free points. Metrics: max_jump, jump_at,
/// mesh, non_free_points, orbit_defect, and flat_derivative_max with a flat point.
CheckReport smooth_division_probe(const std::string& name, const Plot& P, const Plot& Q, const ActionFn& action,
                                  const DivisionSolver& solve, const DivisionProbeOptions& opts = {});

}  // namespace symred
