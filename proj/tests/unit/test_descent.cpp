#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "symred/catalog.hpp"
#include "symred/errors.hpp"
#include "symred/models.hpp"

using namespace symred;
using namespace oracle;

namespace {

CheckOptions opts(int samples = 200, double tol = 1e-6) {
  CheckOptions o;
  o.samples = samples;
  o.tol = Tolerances::absolute(tol, 1e-3);
  return o;
}

double flat(double u) { return u == 0.0 ? 0.0 : std::exp(-1.0 / (u * u)); }

Plot line_plot(const std::string& name, const SpacePtr& plane, std::function<Vec(double)> f) {
  return Plot(name, plane, Vec::Constant(1, -1.0), Vec::Constant(1, 1.0), [f](const Vec& u) { return f(u[0]); });
}

LevelSet plane_lines() {
  const auto plane = plane_so2();
  return {"lines in R²", plane.carrier, plane.moment, {}, 1e300, [](Rng& rng) { return rng.normal_vector(2); },
          {[c = plane.carrier](Rng& rng) {
            const Vec a = rng.normal_vector(2), b = rng.normal_vector(2);
            return line_plot("line", c, [a, b](double u) { return Vec(a + u * b); });
          }}};
}

}  // namespace

TEST(GaugePairs, ZeroAmplitudeGivesQEqualP) {
  const auto g = spherical_harmonics_g_level(1.0);
  GaugeOptions go;
  go.amplitude = 0.0;
  const auto pairs = generate_gauge_pairs(g.level, g.space.group, g.space.action, 5, 1, go);
  Rng rng(2);
  for (const auto& p : pairs)
    for (int i = 0; i < 10; ++i) {
      const Vec u = p.P.sample_domain(rng);
      EXPECT_LT(max_abs(p.Q(u) - p.P(u)), 1e-15);
      EXPECT_LT(max_abs(p.R(u) - to_ambient(GroupElement::identity(GroupId::so3()))), 1e-15);
    }
}

TEST(GaugePairs, QIsTheRotatedPoint) {
  const auto g = spherical_harmonics_g_level(2.0);
  const auto pairs = generate_gauge_pairs(g.level, g.space.group, g.space.action, 4, 9);
  Rng rng(3);
  for (const auto& p : pairs)
    for (int i = 0; i < 10; ++i) {
      const Vec u = p.P.sample_domain(rng);
      const Mat r = p.R(u).reshaped(3, 3).transpose();
      const Vec x = p.P(u);
      Vec expected(9);
      expected << r * x.head(3), r * x.segment(3, 3), r * x.tail(3);
      EXPECT_LT(max_abs(p.Q(u) - expected), 1e-12);
      EXPECT_LT(max_abs(g.space.moment(p.Q(u))), 1e-12);
    }
}

TEST(GaugePairs, WindingGaugeIsInverseWindingOracle) {
  const double alpha = std::sqrt(2.0);
  const auto k = kms_instance(alpha);
  const auto pairs = generate_gauge_pairs(torus_group_level(), k.iota.source, winding_gauge_action(k), 3, 4);
  Rng rng(5);
  for (const auto& p : pairs)
    for (int i = 0; i < 10; ++i) {
      const Vec u = p.P.sample_domain(rng);
      const double t = p.R(u).reshaped(2, 2).transpose()(0, 1);
      const double s = t / std::sqrt(1.0 + alpha * alpha);
      Mat expected = Mat::Zero(4, 4);
      expected.topLeftCorner(2, 2) = rot2(-s);
      expected.bottomRightCorner(2, 2) = rot2(-alpha * s);
      const Mat p_inv = p.P(u).reshaped(4, 4);  // row-major flattening, so this is Pᵀ
      const Mat d = p_inv * p.Q(u).reshaped(4, 4).transpose();
      EXPECT_LT(max_abs(d - expected), 1e-12);
    }
}

TEST(GaugePairs, EmptyCatalogRaises) {
  LevelSet empty = torus_group_level();
  empty.plots.clear();
  EXPECT_THROW(generate_gauge_pairs(empty, GroupId::so3(), {}, 1, 0), EmptyCatalog);
}

TEST(Souriau, GLevelOmegaDescends) {
  const auto g = spherical_harmonics_g_level(1.0);
  const auto pairs = generate_gauge_pairs(g.level, g.space.group, g.space.action, 100, 11);
  const auto r = souriau_check("G-level", g.space.omega, pairs, opts(),
                               MomentTerms{g.space.group, g.space.action, g.space.moment});
  EXPECT_TRUE(r.passed()) << r.max_residual;
  EXPECT_EQ(r.metric("pairs"), 100);
  EXPECT_LT(r.metric("moment_identity_defect"), 1e-6);
}

TEST(Souriau, ZeroSectionDescends) {
  const auto ts = tangent_sphere();
  const auto pairs = generate_gauge_pairs(tangent_sphere_zero_section(), ts.group, ts.action, 20, 2);
  EXPECT_TRUE(souriau_check("TS²", ts.omega, pairs, opts()).passed());
}

TEST(Souriau, InductionLevelsDescendAndPerturbationFails) {
  for (const auto& il : {so3_so2_induction_level(), torus_winding_induction_level(std::sqrt(2.0))}) {
    const auto pairs = generate_gauge_pairs(il.level, il.h, il.h_action, 20, 6);
    const auto ok = souriau_check(il.level.name, il.data.M.omega, pairs, opts());
    EXPECT_TRUE(ok.passed()) << il.level.name << " " << ok.max_residual;
    const int n = il.data.layout.m_dim();
    const KForm bad = perturbed_form(il.data.M.omega, il.data.layout.q_offset(), n - 2, n - 1);
    const auto r = souriau_check(il.level.name, bad, pairs, opts());
    EXPECT_EQ(r.verdict, Verdict::Fail);
    EXPECT_GT(r.max_residual, 1e-3);
  }
}

TEST(Souriau, InductionLevelIsOnPsiZero) {
  for (const auto& il : {so3_so2_induction_level(), torus_winding_induction_level(std::numbers::phi)})
    EXPECT_TRUE(check_level_samples(il.level, opts(50)).passed()) << il.level.name;
}

TEST(Souriau, RightInvariantFormDescendsIffInAnnihilator) {
  const auto k = kms_instance(std::sqrt(2.0));
  const auto pairs = generate_gauge_pairs(torus_group_level(), k.iota.source, winding_gauge_action(k), 100, 13);
  const auto ok = souriau_check("ann", right_invariant_form(k.group, k.ann_h.col(0)), pairs, opts(200, 1e-7));
  EXPECT_TRUE(ok.passed()) << ok.max_residual;
  const auto bad = souriau_check("(1,0)", right_invariant_form(k.group, Eigen::Vector2d(1, 0)), pairs, opts(200, 1e-7));
  EXPECT_EQ(bad.verdict, Verdict::Fail);
  EXPECT_GT(bad.max_residual, 1e-2);
  ASSERT_TRUE(bad.witness.has_value());
}

TEST(Souriau, ConstantGaugeOnInvariantFormIsExact) {
  const auto g = spherical_harmonics_g_level(1.0);
  GaugeOptions go;
  go.degree = 1;
  go.amplitude = 0.0;
  const auto base = generate_gauge_pairs(g.level, g.space.group, g.space.action, 5, 3, go);
  Rng rng(1);
  std::vector<GaugePair> pairs;
  for (const auto& p : base) {
    const GroupElement r = random_element(GroupId::so3(), rng);
    Plot rp("R", group_space(GroupId::so3()), p.P.lo(), p.P.hi(), [r](const Vec&) { return to_ambient(r); });
    Plot q("rP", p.P.target(), p.P.lo(), p.P.hi(), [r, p, a = g.space.action](const Vec& u) { return a(r, p.P(u)); });
    pairs.push_back({p.P, rp, q});
  }
  EXPECT_TRUE(souriau_check("constant gauge", g.space.omega, pairs, opts(50)).passed());
}

TEST(DivisionProbe, CounterexampleJumpsByPi) {
  const auto plane = plane_so2();
  const Plot p = line_plot("P", plane.carrier, [](double u) { return Vec(Eigen::Vector2d(0.0, flat(u))); });
  const Plot q = line_plot("Q", plane.carrier, [](double u) {
    return Vec(Eigen::Vector2d(0.0, (u > 0 ? 1.0 : -1.0) * flat(u)));
  });
  DivisionProbeOptions o;
  o.flat_point = 0.0;
  const auto r = smooth_division_probe("counterexample", p, q, plane.action, plane_rotation_solver(), o);
  EXPECT_EQ(r.verdict, Verdict::Fail);
  EXPECT_GE(r.metric("max_jump"), std::numbers::pi - 0.01);
  EXPECT_NEAR(r.metric("jump_at"), 0.0, 0.05);
  EXPECT_LT(r.metric("flat_derivative_max"), 1e-8);
  EXPECT_GT(r.metric("non_free_points"), 0);
  EXPECT_LT(r.metric("orbit_defect"), 1e-12);
}

TEST(DivisionProbe, IdenticalPlotsGiveIdentityGauge) {
  const auto plane = plane_so2();
  const Plot p = line_plot("P", plane.carrier, [](double u) { return Vec(Eigen::Vector2d(1.0 + u * u, u)); });
  const auto r = smooth_division_probe("Q = P", p, p, plane.action, plane_rotation_solver());
  EXPECT_TRUE(r.passed());
  EXPECT_EQ(r.metric("max_jump"), 0.0);
}

TEST(DivisionProbe, SmoothGaugesPass) {
  const auto plane = plane_so2();
  GaugeOptions go;
  go.amplitude = 0.5;
  const auto pairs = generate_gauge_pairs(plane_lines(), GroupId::so2(), plane.action, 10, 21, go);
  for (const auto& pr : pairs) {
    const auto r = smooth_division_probe("strict", pr.P, pr.Q, plane.action, plane_rotation_solver(1e-12));
    EXPECT_TRUE(r.passed()) << r.max_residual;
    EXPECT_LT(r.metric("max_jump"), 10.0 * r.metric("mesh"));
  }
}

TEST(DivisionProbe, UnrelatedPlotsAreInconclusive) {
  const auto plane = plane_so2();
  const Plot p = line_plot("P", plane.carrier, [](double u) { return Vec(Eigen::Vector2d(1.0, u)); });
  const Plot q = line_plot("2P", plane.carrier, [](double u) { return Vec(Eigen::Vector2d(2.0, 2.0 * u)); });
  const auto r = smooth_division_probe("scaled", p, q, plane.action, plane_rotation_solver());
  EXPECT_EQ(r.verdict, Verdict::Inconclusive);
}

TEST(DivisionProbe, FrameSolverOnGLevel) {
  const auto g = spherical_harmonics_g_level(1.0);
  Rng rng(5);
  auto field = smooth_group_field(GroupId::so3(), rng, 1);
  const Vec x0 = g.level.sample(rng);
  const Plot p("P", g.space.carrier, Vec::Constant(1, -1.0), Vec::Constant(1, 1.0), [x0](const Vec&) { return x0; });
  const Plot q("RP", g.space.carrier, p.lo(), p.hi(), [=, a = g.space.action](const Vec& u) { return a(field(u), x0); });
  const auto solver = frame_alignment_solver([f = g.frame](const Vec& x) -> std::optional<Mat> { return f(x); });
  const auto r = smooth_division_probe("SO3", p, q, g.space.action, solver);
  EXPECT_TRUE(r.passed()) << r.max_residual;
  EXPECT_LT(r.metric("orbit_defect"), 1e-12);
}

TEST(DivisionProbe, OneParameterOnly) {
  const auto g = spherical_harmonics_g_level(1.0);
  Rng rng(1);
  const Plot p = g.level.plots[0](rng);
  EXPECT_THROW(smooth_division_probe("2d", p, p, g.space.action, plane_rotation_solver()), ArityMismatch);
}
