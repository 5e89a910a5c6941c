#include "scenarios.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

#include "symred/catalog.hpp"
#include "symred/constructions.hpp"
#include "symred/errors.hpp"
#include "symred/models.hpp"
#include "symred/unitary.hpp"

namespace symred::scenarios {

CheckOptions Context::opts(double pass, int samples) const {
  CheckOptions o;
  o.seed = seed;
  o.samples = samples > 0 ? samples : config.samples;
  o.diff.step = config.fd_step;
  o.tol = Tolerances::absolute(std::min(pass, config.pass_tol), config.fail_tol);
  return o;
}

namespace {

constexpr double kReciprocityTol = 1e-9;
constexpr double kSingleOrbitTol = 1e-10;
constexpr double kKmsTol = 1e-7;
constexpr double kKmsMomentTol = 1e-12;
constexpr int kSingleOrbitPoints = 50;
constexpr int kCardinalPoints = 10;

/// Runs `fn`; a library error becomes an INCONCLUSIVE report carrying the message.
template <class F>
CheckReport guarded(const std::string& name, const std::string& op, F&& fn) {
  try {
    return fn();
  } catch (const Error& e) {
    CheckReport r;
    r.name = name;
    r.op = op;
    r.verdict = Verdict::Inconclusive;
    r.notes.push_back(std::string(to_string(e.code())) + ": " + e.what());
    return r;
  }
}

void expect(Outcomes& out, CheckReport r, Verdict v = Verdict::Pass) { out.push_back({std::move(r), v}); }

void expect_all(Outcomes& out, const std::vector<CheckReport>& rs, Verdict v = Verdict::Pass) {
  for (const auto& r : rs) expect(out, r, v);
}

std::uint64_t sub_seed(const Context& ctx, const std::string& label) { return scenario_seed(ctx.seed, label); }

/// cardinal_checks at level points, with the rank and stabilizer dimension
/// required to equal the given values.
CheckReport cardinal_on_level(const HamiltonianSpace& space, const LevelSet& level, int rank, int stabilizer,
                              const Context& ctx) {
  Rng rng = Rng::stream(ctx.seed, "cardinal/" + level.name);
  CardinalOptions co;
  co.diff.step = ctx.config.fd_step;
  CheckReport out;
  out.name = level.name + ": cardinal consequences";
  out.op = "cardinal_checks";
  out.anchor = "cardinal-consequences";
  out.seed = ctx.seed;
  out.tolerance = co.subspace_tolerance;
  out.fail_threshold = ctx.config.fail_tol;
  out.verdict = Verdict::Pass;
  double distance = 0.0, sum = 0.0;
  bool dims_ok = true;
  for (int i = 0; i < kCardinalPoints; ++i) {
    const Vec x = level.sample(rng);
    const CheckReport r = cardinal_checks(space, x, co);
    distance = std::max(distance, r.metric("subspace_distance"));
    out.max_residual = std::max(out.max_residual, r.max_residual);
    sum += r.max_residual;
    ++out.samples;
    if (!r.passed()) {
      out.verdict = r.verdict;
      if (!out.witness) out.witness = r.witness;
    }
    if (r.metric("rank") != rank || r.metric("stabilizer_dim") != stabilizer) dims_ok = false;
  }
  out.mean_residual = sum / kCardinalPoints;
  out.set_metric("rank", rank);
  out.set_metric("stabilizer_dim", stabilizer);
  out.set_metric("subspace_distance", distance);
  if (!dims_ok) {
    out.verdict = Verdict::Fail;
    out.notes.push_back("rank or stabilizer dimension differs from " + std::to_string(rank) + "/" +
                        std::to_string(stabilizer));
  }
  return out;
}

CheckReport multiplicity_match(int ell, const CheckReport& single_orbit, std::uint64_t seed) {
  const int geometric = single_orbit.passed() ? static_cast<int>(single_orbit.metric("orbits")) : 0;
  const int algebraic = frobenius_dimension(ell);
  CheckReport r;
  r.name = "ℓ=" + std::to_string(ell) + ": reduced points against dim Hom_SO2(V_ℓ, C)";
  r.op = "frobenius_dimension";
  r.anchor = "multiplicity";
  r.seed = seed;
  r.samples = 1;
  r.max_residual = r.mean_residual = std::abs(geometric - algebraic);
  r.tolerance = 0.5;
  r.fail_threshold = 0.5;
  r.verdict = geometric == algebraic ? Verdict::Pass : Verdict::Fail;
  r.set_metric("geometric", geometric);
  r.set_metric("frobenius_dimension", algebraic);
  r.set_metric("weight_zero_multiplicity", weight_multiplicity(ell, 0));
  return r;
}

double parse_radius(const std::string& s) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size() || !(v > 0.0) || !std::isfinite(v))
    throw ConfigError("l: expected a positive number, got '" + s + "'");
  return v;
}

LevelSet equator_level(double ell) {
  const HamiltonianSpace x = restrict_along(coadjoint_orbit_so3(ell), so2_into_so3());
  const FrobeniusInstance inst = spherical_harmonics_instance(ell);
  LevelSet l = inst.level_N;
  l.moment = x.moment;
  return l;
}

}  // namespace

Outcomes spherical_harmonics(const Context& ctx) {
  const auto ells = parse_int_list("l", ctx.param("l"), 1, 20);
  Outcomes out;
  const auto o = ctx.opts();
  expect_all(out, axiom_gate(tangent_sphere(), o));
  const LevelSet zero_section = tangent_sphere_zero_section();
  expect(out, check_level_samples(zero_section, o));
  expect(out, cardinal_on_level(tangent_sphere(), zero_section, 2, 1, ctx));
  for (int ell : ells) {
    const double l = ell;
    const FrobeniusInstance inst = spherical_harmonics_instance(l);
    expect_all(out, axiom_gate(inst.data.X, o));
    expect_all(out, axiom_gate(inst.data.M, o));
    expect_all(out, axiom_gate(inst.data.N, o));
    expect(out, check_level_samples(inst.level_M, o));
    expect(out, check_level_samples(inst.level_N, o));

    const HamiltonianSpace restricted = restrict_along(inst.data.X, so2_into_so3());
    expect(out, check_lagrangian(restricted, equator_level(l), o));

    const FramedLevel g = spherical_harmonics_g_level(l);
    expect_all(out, axiom_gate(g.space, o));
    expect(out, check_level_samples(g.level, o));
    expect(out, check_lagrangian(g.space, g.level, o));

    expect(out, guarded(inst.name, "check_frobenius_pullback", [&] { return check_frobenius_pullback(inst, o); }));
    expect(out, guarded(inst.name, "check_fd_scaling", [&] { return check_fd_scaling(inst, o); }));
    expect(out, check_reciprocity_maps(inst, ctx.opts(kReciprocityTol, std::max(500, ctx.config.samples))));
    expect(out, check_orbit_correspondence(inst, o));
    expect(out, cardinal_on_level(g.space, g.level, 3, 0, ctx));

    const CheckReport orbit = check_single_orbit(g.level.name, g.level.sample, g.frame, g.space.action, g.space.group,
                                                 kSingleOrbitPoints, ctx.opts(kSingleOrbitTol));
    expect(out, orbit);
    expect(out, multiplicity_match(ell, orbit, ctx.seed));

    const auto pairs = generate_gauge_pairs(g.level, g.space.group, g.space.action, 100,
                                            sub_seed(ctx, "gauge/" + std::to_string(ell)));
    expect(out, souriau_check(g.level.name, g.space.omega, pairs, o,
                              MomentTerms{g.space.group, g.space.action, g.space.moment}));
  }
  return out;
}

Outcomes prequantum_sphere(const Context& ctx) {
  const auto ells = parse_int_list("l", ctx.param("l"), 1, 6);
  Outcomes out;
  const auto o = ctx.opts();
  expect_all(out, axiom_gate(prequantized_sphere(), o));
  expect_all(out, axiom_gate(circle_prequantum(GroupId::so2()), o));
  for (int ell : ells) {
    const PrequantumFrobeniusInstance inst = prequantum_sphere_instance(ell);
    if (ell >= 2) {
      expect(out, check_fusion_fibers(ell, o));
      expect_all(out, axiom_gate(inst.data.X, o));
    }
    expect_all(out, axiom_gate(inst.data.M, o));
    expect_all(out, axiom_gate(inst.data.N, o));
    const PrequantumLevel h = prequantum_h_level(ell);
    const PrequantumLevel g = prequantum_g_level(ell);
    expect(out, check_level_samples(h.level, o));
    expect(out, check_level_samples(g.level, o));
    expect(out, check_level_samples(inst.level_M, o));
    expect(out, check_level_samples(inst.level_N, o));
    expect(out, check_reciprocity_maps(inst, ctx.opts(kReciprocityTol, std::max(500, ctx.config.samples))));
    expect(out, guarded(inst.name, "check_prequantum_frobenius_pullback",
                        [&] { return check_prequantum_frobenius_pullback(inst, o); }));
  }
  return out;
}

Outcomes torus_kms(const Context& ctx) {
  const double alpha = parse_alpha(ctx.param("alpha"));
  const KmsInstance k = kms_instance(alpha);
  Outcomes out;
  const auto o = ctx.opts();
  expect_all(out, axiom_gate(cotangent_group(identity_hom(GroupId::torus2())), o));
  expect_all(out, axiom_gate(cotangent_group(k.iota), o));
  expect(out, check_kms(k, ctx.opts(kKmsTol), kKmsMomentTol));

  const auto pairs = generate_gauge_pairs(torus_group_level(), k.iota.source, winding_gauge_action(k), 100,
                                          sub_seed(ctx, "winding-gauge"));
  const Vec mu_ann = k.ann_h.col(0);
  CheckReport in_ann = souriau_check("μ ∈ ann(𝔥), right-invariant", right_invariant_form(k.group, mu_ann), pairs,
                                     ctx.opts(kKmsTol));
  in_ann.set_metric("in_ann", k.in_ann(mu_ann) ? 1.0 : 0.0);
  expect(out, in_ann);
  const Vec mu_off = Eigen::Vector2d(1.0, 0.0);
  CheckReport off = souriau_check("μ = (1, 0), right-invariant", right_invariant_form(k.group, mu_off), pairs,
                                  ctx.opts(kKmsTol));
  off.set_metric("in_ann", k.in_ann(mu_off) ? 1.0 : 0.0);
  expect(out, off, Verdict::Fail);
  expect(out, check_dense_orbit(k, o), Verdict::Approx);
  return out;
}

Outcomes peter_weyl(const Context& ctx) {
  const double ell = parse_radius(ctx.param("l"));
  const FrobeniusInstance inst = peter_weyl_instance(ell);
  Outcomes out;
  const auto o = ctx.opts();
  expect_all(out, axiom_gate(cotangent_group(identity_hom(GroupId::so3())), o));
  expect_all(out, axiom_gate(inst.data.M, o));
  expect_all(out, axiom_gate(inst.data.N, o));
  expect(out, check_level_samples(inst.level_M, o));
  expect(out, check_level_samples(inst.level_N, o));
  expect(out, check_reciprocity_maps(inst, ctx.opts(kReciprocityTol, std::max(500, ctx.config.samples))));
  expect(out, guarded(inst.name, "check_frobenius_pullback", [&] { return check_frobenius_pullback(inst, o); }));
  expect(out, check_orbit_correspondence(inst, o));
  return out;
}

Outcomes so2_plane_counterexample(const Context& ctx) {
  const HamiltonianSpace plane = plane_so2();
  auto flat = [](double u) { return u == 0.0 ? 0.0 : std::exp(-1.0 / (u * u)); };
  const Vec lo = Vec::Constant(1, -1.0), hi = Vec::Constant(1, 1.0);
  const Plot p("(0, e^{-1/u²})", plane.carrier, lo, hi, [flat](const Vec& u) {
    return Vec(Eigen::Vector2d(0.0, flat(u[0])));
  });
  const Plot q("(0, sign(u) e^{-1/u²})", plane.carrier, lo, hi, [flat](const Vec& u) {
    return Vec(Eigen::Vector2d(0.0, (u[0] > 0.0 ? 1.0 : -1.0) * flat(u[0])));
  });
  DivisionProbeOptions po;
  po.flat_point = 0.0;
  Outcomes out;
  expect_all(out, axiom_gate(plane, ctx.opts()));
  expect(out, smooth_division_probe("flat plots", p, q, plane.action, plane_rotation_solver(), po), Verdict::Fail);

  Rng rng = Rng::stream(ctx.seed, "strict-control");
  const Vec a = rng.normal_vector(2), b = rng.normal_vector(2);
  LevelSet lines{"lines in R²", plane.carrier, plane.moment, {}, std::numeric_limits<double>::infinity(),
                 [](Rng& r) { return r.normal_vector(2); },
                 {[a, b, c = plane.carrier, lo, hi](Rng&) {
                   return Plot("a + u b", c, lo, hi, [a, b](const Vec& u) { return Vec(a + u[0] * b); });
                 }}};
  GaugeOptions go;
  go.amplitude = 0.5;
  const GaugePair pair = generate_gauge_pairs(lines, GroupId::so2(), plane.action, 1, sub_seed(ctx, "control"), go)[0];
  expect(out, smooth_division_probe("smooth gauge", pair.P, pair.Q, plane.action, plane_rotation_solver(1e-12)));
  return out;
}

Outcomes strict_subgroup(const Context& ctx) {
  const std::string pair = ctx.param("pair");
  if (pair != "both" && pair != "so3_so2" && pair != "torus_winding")
    throw ConfigError("pair: expected so3_so2, torus_winding, or both, got '" + pair + "'");
  std::vector<InductionLevel> levels;
  if (pair != "torus_winding") levels.push_back(so3_so2_induction_level());
  if (pair != "so3_so2") levels.push_back(torus_winding_induction_level(parse_alpha(ctx.param("alpha"))));
  Outcomes out;
  const auto o = ctx.opts();
  for (const auto& il : levels) {
    expect_all(out, axiom_gate(il.data.M, o));
    expect_all(out, axiom_gate(il.data.N, o));
    expect(out, check_level_samples(il.level, o));
    const auto pairs = generate_gauge_pairs(il.level, il.h, il.h_action, 50, sub_seed(ctx, il.level.name));
    expect(out, souriau_check(il.level.name + ", ω_M", il.data.M.omega, pairs, o));
    const int n = il.data.layout.m_dim();
    const KForm perturbed = perturbed_form(il.data.M.omega, il.data.layout.q_offset(), n - 2, n - 1);
    expect(out, souriau_check(il.level.name + ", ω_M + q₀₀ dy₀∧dy₁", perturbed, pairs, o), Verdict::Fail);
  }
  return out;
}

Outcomes symplectization_demo(const Context& ctx) {
  const PrequantumSpace base = restrict_along(prequantized_sphere(), so2_into_so3());
  const SymplectizationLevel s = symplectization_level();
  Outcomes out;
  const auto o = ctx.opts();
  expect_all(out, axiom_gate(base, o));
  expect_all(out, axiom_gate(s.space, o));
  expect(out, check_symplectization(base, o));
  expect(out, check_level_samples(s.level, o));
  const auto pairs = generate_gauge_pairs(s.level, s.space.group, s.space.action, 50, sub_seed(ctx, "gauge"));
  expect(out, souriau_check(s.level.name, s.space.omega, pairs, o,
                            MomentTerms{s.space.group, s.space.action, s.space.moment}));
  return out;
}

}  // namespace symred::scenarios
