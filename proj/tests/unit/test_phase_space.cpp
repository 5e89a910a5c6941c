#include <cmath>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "symred/catalog.hpp"
#include "symred/constructions.hpp"
#include "symred/errors.hpp"
#include "symred/phase_space.hpp"

using namespace symred;

namespace {

CheckOptions opts(int samples = 200) {
  CheckOptions o;
  o.samples = samples;
  return o;
}

void expect_all_pass(const std::vector<CheckReport>& reports) {
  for (const auto& r : reports)
    EXPECT_TRUE(r.passed()) << r.name << " residual " << r.max_residual << " verdict " << to_string(r.verdict);
}

}  // namespace

TEST(InfinitesimalAction, ZeroGeneratorGivesZeroVector) {
  const auto ts = tangent_sphere();
  Rng rng(1);
  const Vec x = ts.sample(rng);
  EXPECT_LT(infinitesimal_action(ts, AlgebraElement::zero(ts.group), x).norm(), 1e-15);
}

TEST(InfinitesimalAction, RotationOfSphereIsCrossProduct) {
  const auto s = coadjoint_orbit_so3(1.0);
  const Vec e1 = Eigen::Vector3d(1, 0, 0);
  const Vec z = infinitesimal_action(s, AlgebraElement::basis(s.group, 2), e1);
  const Vec expected = Eigen::Vector3d(0, 0, 1).cross(Eigen::Vector3d(1, 0, 0));
  EXPECT_LT((z - expected).cwiseAbs().maxCoeff(), 1e-10);
  Rng rng(2);
  for (int i = 0; i < 20; ++i) {
    const Vec x = s.sample(rng);
    const Eigen::Vector3d a = rng.normal_vector(3);
    const Vec got = infinitesimal_action(s, AlgebraElement(s.group, a), x);
    EXPECT_LT((got - Vec(a.cross(Eigen::Vector3d(x)))).cwiseAbs().maxCoeff(), 1e-9);
  }
}

TEST(InfinitesimalAction, FixedPointOfPlane) {
  const auto p = plane_so2();
  EXPECT_LT(infinitesimal_action(p, AlgebraElement::basis(p.group, 0), Vec::Zero(2)).norm(), 1e-15);
}

TEST(MomentCondition, TangentSpherePasses) {
  const CheckReport r = check_moment_condition(tangent_sphere(), opts());
  EXPECT_TRUE(r.passed()) << r.max_residual;
  EXPECT_LT(r.max_residual, 1e-6);
  EXPECT_EQ(r.anchor, "moment-map-convention");
}

TEST(MomentCondition, CotangentGroupPasses) {
  for (const auto& g : {GroupId::so3(), GroupId::torus2()}) {
    const CheckReport r = check_moment_condition(cotangent_group(trivial_into(g)), opts());
    EXPECT_TRUE(r.passed()) << g.name() << " " << r.max_residual;
  }
}

TEST(MomentCondition, NegatedMomentFailsWithTwiceTheContraction) {
  HamiltonianSpace bad = tangent_sphere();
  auto m = bad.moment;
  bad.moment = [m](const Vec& x) { return Vec(-m(x)); };
  const CheckReport r = check_moment_condition(bad, opts(50));
  EXPECT_EQ(r.verdict, Verdict::Fail);
  ASSERT_TRUE(r.witness.has_value());
  const Vec& x = r.witness->point;
  const Vec& v = r.witness->vectors.at(0);
  const Vec& zx = r.witness->vectors.at(1);
  const double contraction = bad.omega(x, zx, v);
  EXPECT_NEAR(r.witness->residual, 2.0 * std::abs(contraction), 1e-6 * std::max(1.0, std::abs(contraction)));
}

TEST(Equivariance, IdentityGivesExactZero) {
  const auto ts = tangent_sphere();
  Rng rng(3);
  const Vec x = ts.sample(rng);
  const Vec lhs = ts.moment(ts.action(GroupElement::identity(ts.group), x));
  EXPECT_EQ((lhs - coadjoint(GroupElement::identity(ts.group), ts.moment_at(x)).coords()).norm(), 0.0);
}

TEST(Equivariance, TangentSpherePassesTightly) {
  CheckOptions o = opts();
  o.tol = Tolerances::absolute(1e-9, 1e-3);
  const CheckReport r = check_equivariance(tangent_sphere(), o);
  EXPECT_TRUE(r.passed()) << r.max_residual;
}

TEST(Equivariance, TorusActionsHaveInvariantMoment) {
  const auto t = cotangent_group(trivial_into(GroupId::torus2()));
  Rng rng(4);
  for (int i = 0; i < 20; ++i) {
    const Vec x = t.sample(rng);
    const GroupElement g = random_element(t.group, rng);
    EXPECT_LT((t.moment(t.action(g, x)).head(2) - t.moment(x).head(2)).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(FormInvariance, CatalogSpaces) {
  for (const auto& s : {tangent_sphere(), coadjoint_orbit_so3(3.0), plane_so2()}) {
    CheckOptions o = opts(100);
    o.tol = Tolerances::absolute(1e-7, 1e-3);
    const CheckReport r = check_form_invariance(s, o);
    EXPECT_TRUE(r.passed()) << s.name << " " << r.max_residual;
  }
}

TEST(AxiomGate, HamiltonianCatalog) {
  for (const auto& s : {tangent_sphere(), coadjoint_orbit_so3(1.0), coadjoint_orbit_so3(2.5), plane_so2(),
                        point_space(GroupId::so3())})
    expect_all_pass(axiom_gate(s, opts()));
}

TEST(AxiomGate, PrequantumCatalog) {
  for (const auto& s : {prequantized_sphere(), tangent_sphere_prequantum(), circle_prequantum(GroupId::so2())})
    expect_all_pass(axiom_gate(s, opts()));
}

TEST(Cardinal, TangentSphereZeroSection) {
  const auto ts = tangent_sphere();
  Vec x = Vec::Zero(6);
  x[0] = 1.0;
  const CheckReport r = cardinal_checks(ts, x);
  EXPECT_TRUE(r.passed()) << r.max_residual;
  EXPECT_EQ(r.metric("rank"), 2);
  EXPECT_EQ(r.metric("stabilizer_dim"), 1);
  EXPECT_LT(r.metric("subspace_distance"), 1e-6);
}

TEST(Cardinal, RankMatchesAnalyticJacobianOnZeroSection) {
  // DΦ(r, 0)(δr, δp) = r×δp; its rank over the tangent space is 2.
  const auto ts = tangent_sphere();
  Rng rng(5);
  for (int i = 0; i < 10; ++i) {
    Vec x = Vec::Zero(6);
    const Vec r = rng.normal_vector(3).normalized();
    x.head(3) = r;
    const Mat t = ts.carrier->tangent_basis(x);
    Mat j(3, t.cols());
    for (int c = 0; c < t.cols(); ++c)
      j.col(c) = Eigen::Vector3d(r).cross(Eigen::Vector3d(t.col(c).tail(3)));
    EXPECT_EQ(numerical_rank(j, 1e-6), 2);
    EXPECT_EQ(cardinal_checks(ts, x).metric("rank"), 2);
  }
}

TEST(Cardinal, HomLevelPointHasFullRank) {
  const double ell = 1.0;
  const auto h = hom_data(coadjoint_orbit_so3(ell), tangent_sphere());
  Rng rng(6);
  for (int i = 0; i < 10; ++i) {
    const Mat f = random_rotation(rng);
    Vec x(9);
    x << ell * f.col(2), f.col(0), ell * f.col(1);
    ASSERT_LT(h.moment(x).cwiseAbs().maxCoeff(), 1e-12);
    const CheckReport r = cardinal_checks(h, x);
    EXPECT_TRUE(r.passed()) << r.max_residual;
    EXPECT_EQ(r.metric("rank"), 3);
    EXPECT_EQ(r.metric("stabilizer_dim"), 0);
  }
}

TEST(Cardinal, OffLevelPointIsRejected) {
  const auto ts = tangent_sphere();
  Vec x(6);
  x << 1, 0, 0, 0, 1, 0;
  EXPECT_THROW(cardinal_checks(ts, x), LevelViolation);
}

TEST(Cardinal, StraddlingSingularValuesAreAmbiguous) {
  const GroupId g = GroupId::product(GroupId::real_line(), GroupId::real_line());
  auto s = euclidean_space("R4", 4);
  HamiltonianSpace fake{"fake",
                        s,
                        g,
                        [](const GroupElement& h, const Vec& x) {
                          Vec y = x;
                          y[0] += h.matrix()(0, 1);
                          y[2] += h.matrix()(2, 3);
                          return y;
                        },
                        KForm(s, 2, [](const Vec&, std::span<const Vec> v) {
                          return v[0][0] * v[1][1] - v[0][1] * v[1][0] + v[0][2] * v[1][3] - v[0][3] * v[1][2];
                        }),
                        [](const Vec& x) { return Vec(Eigen::Vector2d(-x[1], -1e-5 * x[3])); },
                        [](Rng& rng) { return rng.normal_vector(4); }};
  EXPECT_THROW(cardinal_checks(fake, Vec::Zero(4)), RankAmbiguity);
}

TEST(PrequantumMoment, SphereMomentIsThirdFrameVector) {
  const auto s = prequantized_sphere();
  Rng rng(7);
  for (int i = 0; i < 20; ++i) {
    const Mat f = random_rotation(rng);
    const Vec xi = xi_from_frame(f);
    EXPECT_LT(s.carrier->residual_norm(xi), 1e-14);
    const Vec m = prequantum_moment(s, xi).coords();
    EXPECT_LT((m - Vec(f.col(2))).cwiseAbs().maxCoeff(), 1e-9);
  }
}

TEST(PrequantumMoment, TrivialCircleHasZeroMoment) {
  const auto c = circle_prequantum(GroupId::so2());
  Rng rng(8);
  EXPECT_EQ(prequantum_moment(c, c.sample(rng)).coords().norm(), 0.0);
}

TEST(Reeb, NormalizedAndFree) {
  for (const auto& s : {prequantized_sphere(), circle_prequantum(GroupId::so3()), tangent_sphere_prequantum()}) {
    CheckOptions o = opts(100);
    o.tol = Tolerances::absolute(1e-8, 1e-3);
    const CheckReport r = check_reeb(s, o);
    EXPECT_TRUE(r.passed()) << s.name << " " << r.max_residual;
    EXPECT_GT(r.metric("min_displacement"), 0.1);
  }
}

TEST(Reeb, MissingCircleIsAnError) {
  EXPECT_THROW(check_reeb(cotangent_group_exact(trivial_into(GroupId::so3()))), SpaceMismatch);
}

TEST(LevelSamples, PointsOnAndOffLevel) {
  const auto ts = tangent_sphere();
  LevelSet zero_section{"zero section", ts.carrier, ts.moment, {}, 1e-9,
                        [](Rng& rng) {
                          Vec x = Vec::Zero(6);
                          x.head(3) = rng.normal_vector(3).normalized();
                          return x;
                        },
                        {}};
  EXPECT_TRUE(check_level_samples(zero_section, opts(50)).passed());
  LevelSet wrong = zero_section;
  wrong.sample = ts.sample;
  EXPECT_EQ(check_level_samples(wrong, opts(50)).verdict, Verdict::Fail);
}

TEST(LevelSet, SelectorRestrictsComponents) {
  LevelSet l{"l", euclidean_space("R2", 2), [](const Vec& x) { return x; }, {1}, 1e-9, {}, {}};
  EXPECT_EQ(l.violation(Eigen::Vector2d(5, 0)), 0.0);
  EXPECT_EQ(l.violation(Eigen::Vector2d(0, -2)), 2.0);
}

TEST(ActionAxioms, BrokenCompositionIsCaught) {
  const auto ts = tangent_sphere();
  ActionFn twisted = [](const GroupElement& g, const Vec& x) {
    Vec y = x;
    y.head(3) = g.matrix().transpose() * x.head(3);
    y.tail(3) = g.matrix().transpose() * x.tail(3);
    return y;
  };
  const CheckReport r = check_action_axioms("twisted", ts.carrier, ts.group, twisted, ts.sample, opts(20));
  EXPECT_EQ(r.verdict, Verdict::Fail);
}
