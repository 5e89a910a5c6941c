#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "symred/catalog.hpp"
#include "symred/constructions.hpp"
#include "symred/errors.hpp"

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

/// Seeded plot into right-trivialized T*SO3 with analytic q and μ.
struct CotangentPlot {
  Vec z1, z2, mu0, mu1, mu2;
  GroupElement q0;

  Mat q(const Vec& u) const {
    const GroupId g = GroupId::so3();
    return multiply(exp(AlgebraElement(g, u[0] * z1 + std::sin(u[1]) * z2)), q0).matrix();
  }
  Vec mu(const Vec& u) const { return mu0 + u[0] * mu1 + u[0] * u[1] * mu2; }
  Vec operator()(const Vec& u) const {
    Vec x(12);
    x << to_ambient(GroupElement(GroupId::so3(), q(u))), mu(u);
    return x;
  }
};

CotangentPlot random_cotangent_plot(Rng& rng) {
  return {rng.normal_vector(3), rng.normal_vector(3), rng.normal_vector(3), rng.normal_vector(3),
          rng.normal_vector(3), random_element(GroupId::so3(), rng)};
}

}  // namespace

TEST(Dual, IsAnInvolution) {
  const auto ts = tangent_sphere();
  const auto dd = dual(dual(ts));
  Rng rng(1);
  for (int i = 0; i < 20; ++i) {
    const Vec x = ts.sample(rng);
    const Vec v = random_tangent(*ts.carrier, x, rng), w = random_tangent(*ts.carrier, x, rng);
    EXPECT_EQ(dd.omega(x, v, w), ts.omega(x, v, w));
    EXPECT_EQ(dd.moment(x), ts.moment(x));
  }
}

TEST(Dual, OfPointIsPoint) {
  const auto p = point_space(GroupId::so3());
  const auto d = dual(p);
  EXPECT_EQ(d.carrier->ambient_dim(), 0);
  EXPECT_EQ(d.moment(Vec(0)).norm(), 0.0);
}

TEST(Dual, FlipsFormOnTangentSphere) {
  const auto ts = tangent_sphere();
  Rng rng(2);
  const Vec x = ts.sample(rng);
  const Vec v = random_tangent(*ts.carrier, x, rng), w = random_tangent(*ts.carrier, x, rng);
  // direct evaluation of ⟨δp, δ′r⟩ − ⟨δ′p, δr⟩
  const double direct = v.tail(3).dot(w.head(3)) - w.tail(3).dot(v.head(3));
  EXPECT_NEAR(ts.omega(x, v, w), direct, 1e-15);
  EXPECT_NEAR(dual(ts).omega(x, v, w), -direct, 1e-15);
  EXPECT_EQ(dual(ts).moment(x), Vec(-ts.moment(x)));
}

TEST(HomData, WithPointReducesToSecondFactor) {
  const auto ts = tangent_sphere();
  const auto h = hom_data(point_space(GroupId::so3()), ts);
  Rng rng(3);
  const Vec x = ts.sample(rng);
  EXPECT_EQ(h.moment(x), ts.moment(x));
  expect_all_pass(axiom_gate(h, opts(50)));
}

TEST(HomData, DiagonalHasZeroMoment) {
  const auto s = coadjoint_orbit_so3(2.0);
  const auto h = hom_data(s, s);
  Rng rng(4);
  for (int i = 0; i < 100; ++i) {
    const Vec x = s.sample(rng);
    Vec xx(6);
    xx << x, x;
    ASSERT_EQ(h.moment(xx).norm(), 0.0);
  }
}

TEST(HomData, FrameLevelPointsHaveZeroMoment) {
  for (double ell : {1.0, 2.0, 3.0}) {
    const auto h = hom_data(coadjoint_orbit_so3(ell), tangent_sphere());
    Rng rng(5);
    for (int i = 0; i < 50; ++i) {
      const Mat f = random_rotation(rng);
      Vec x(9);
      x << ell * f.col(2), f.col(0), ell * f.col(1);
      EXPECT_LT(h.carrier->residual_norm(x), 1e-12);
      EXPECT_LT(h.moment(x).cwiseAbs().maxCoeff(), 1e-12);
    }
    expect_all_pass(axiom_gate(h, opts(50)));
  }
}

TEST(RestrictAlong, MomentIsRestrictedCovector) {
  const auto ts = tangent_sphere();
  const auto r = restrict_along(ts, so2_into_so3());
  Rng rng(6);
  const Vec x = ts.sample(rng);
  EXPECT_EQ(r.moment(x).size(), 1);
  EXPECT_NEAR(r.moment(x)[0], ts.moment(x)[2], 1e-15);
  expect_all_pass(axiom_gate(r, opts(50)));
}

TEST(RestrictAlong, WrongTargetThrows) {
  EXPECT_THROW(restrict_along(tangent_sphere(), winding(std::sqrt(2.0))), GroupMismatch);
}

TEST(CotangentGroup, MomentAtIdentityIsMu) {
  const auto t = cotangent_group(trivial_into(GroupId::so3()));
  const Vec mu = Eigen::Vector3d(0.3, -2, 1);
  Vec x(12);
  x << to_ambient(GroupElement::identity(GroupId::so3())), mu;
  EXPECT_EQ(t.moment(x).head(3), mu);
}

TEST(CotangentGroup, PsiForWholeGroupIsTransportedMu) {
  const auto t = cotangent_group(identity_hom(GroupId::so3()));
  Rng rng(7);
  for (int i = 0; i < 50; ++i) {
    const Vec x = t.sample(rng);
    const Mat q = element_from_ambient(GroupId::so3(), x.head(9)).matrix();
    const Vec mu = x.tail(3);
    // Ad*_{q⁻¹} μ via explicit conjugation
    const Vec expected = -oracle::coadjoint_so3(q.transpose(), mu);
    EXPECT_LT((t.moment(x).tail(3) - expected).cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_LT((expected + Vec(q.transpose() * mu)).cwiseAbs().maxCoeff(), 1e-12);
  }
  Vec x0(12);
  x0 << to_ambient(GroupElement::identity(GroupId::so3())), Vec::Zero(3);
  EXPECT_EQ(t.moment(x0).tail(3).norm(), 0.0);
}

TEST(CotangentGroup, WindingPsiIsRestrictionToSlope) {
  const double alpha = std::sqrt(2.0);
  const auto t = cotangent_group(winding(alpha));
  Rng rng(8);
  for (int i = 0; i < 20; ++i) {
    const Vec x = t.sample(rng);
    const Vec mu = x.tail(2);
    EXPECT_NEAR(t.moment(x)[2], -(mu[0] + alpha * mu[1]) / std::sqrt(1 + alpha * alpha), 1e-14);
  }
}

TEST(CotangentGroup, OneFormMatchesClosedFormAlongPlots) {
  const auto t = cotangent_group_exact(trivial_into(GroupId::so3()));
  Rng rng(9);
  double worst = 0.0;
  for (int k = 0; k < 10; ++k) {
    const CotangentPlot cp = random_cotangent_plot(rng);
    const Plot p = Plot::on_cube("T*G plot", t.carrier, 2, 1.0, [cp](const Vec& u) { return cp(u); });
    const DomainForm f = pullback(t.varpi, p);
    for (int i = 0; i < 20; ++i) {
      const Vec u = p.sample_domain(rng);
      const Vec du = rng.normal_vector(2);
      const Eigen::Vector3d a = u[0] * cp.z1 + std::sin(u[1]) * cp.z2;
      const Eigen::Vector3d da = du[0] * cp.z1 + std::cos(u[1]) * du[1] * cp.z2;
      const Vec z = oracle::left_jacobian_so3(a) * da;
      worst = std::max(worst, std::abs(f(u, du) - cp.mu(u).dot(z)));
    }
  }
  EXPECT_LT(worst, 1e-7);
}

TEST(CotangentGroup, ExactDerivativeMatchesNumericD) {
  for (const auto& g : {GroupId::so3(), GroupId::torus2()}) {
    const auto t = cotangent_group_exact(trivial_into(g));
    ASSERT_NE(t.varpi.exact_d(), nullptr);
    Rng rng(10);
    const int k = g.dim();
    const Vec z1 = rng.normal_vector(k), z2 = rng.normal_vector(k), m0 = rng.normal_vector(k),
              m1 = rng.normal_vector(k);
    const GroupElement q0 = random_element(g, rng);
    const Plot p = Plot::on_cube("T*G plot", t.carrier, 2, 1.0, [=](const Vec& u) {
      Vec x(g.ambient_dim() + k);
      x << to_ambient(multiply(exp(AlgebraElement(g, u[0] * z1 + u[1] * u[0] * z2)), q0)),
          m0 + std::sin(u[1]) * m1;
      return x;
    });
    SampleSpec spec;
    spec.label = "dϖ";
    spec.samples = 50;
    spec.tol = Tolerances::absolute(1e-6);
    const CheckReport r = forms_equal_on_samples(domain_exterior_derivative(pullback(t.varpi, p)),
                                                 pullback(*t.varpi.exact_d(), p), spec);
    EXPECT_TRUE(r.passed()) << g.name() << " " << r.max_residual;
  }
}

TEST(CotangentGroup, AxiomGate) {
  expect_all_pass(axiom_gate(cotangent_group(trivial_into(GroupId::so3())), opts()));
  expect_all_pass(axiom_gate(cotangent_group(identity_hom(GroupId::torus2())), opts()));
  expect_all_pass(axiom_gate(cotangent_group(so2_into_so3()), opts()));
  expect_all_pass(axiom_gate(cotangent_group(winding(std::numbers::phi)), opts()));
}

TEST(InductionData, PointsGiveCotangentGroup) {
  const GroupHom iota = so2_into_so3();
  const auto d = induction_data(point_space(GroupId::so3()), point_space(GroupId::so2()), iota);
  const auto t = cotangent_group(iota);
  EXPECT_EQ(d.M.carrier->ambient_dim(), t.carrier->ambient_dim());
  Rng rng(11);
  for (int i = 0; i < 20; ++i) {
    const Vec x = t.sample(rng);
    EXPECT_EQ(d.M.moment(x), t.moment(x));
    const Mat q = element_from_ambient(GroupId::so3(), x.head(9)).matrix();
    EXPECT_NEAR(d.M.moment(x)[3], -(q.transpose() * x.tail(3))[2], 1e-12);
  }
}

TEST(InductionData, MomentsMatchComponentFormulas) {
  const double ell = 2.0;
  const auto x = coadjoint_orbit_so3(ell);
  const auto d = induction_data(x, point_space(GroupId::so2()), so2_into_so3());
  Rng rng(12);
  for (int i = 0; i < 50; ++i) {
    const Vec m = d.M.sample(rng);
    const Vec xx = d.layout.x(m);
    const Mat q = element_from_ambient(GroupId::so3(), d.layout.q_flat(m)).matrix();
    const Vec mu = d.layout.mu(m);
    const Vec phi = d.M.moment(m);
    EXPECT_LT((phi.head(3) - (mu - xx)).cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_NEAR(phi[3], -(q.transpose() * mu)[2], 1e-12);
  }
}

TEST(InductionData, DiagonalTypePointHasZeroPsiN) {
  const auto x = coadjoint_orbit_so3(1.0);
  const auto y = restrict_along(x, so2_into_so3());
  const auto d = induction_data(x, y, so2_into_so3());
  Rng rng(13);
  for (int i = 0; i < 20; ++i) {
    const Vec p = x.sample(rng);
    EXPECT_LT(d.N.moment(d.layout.pack_n(p, p)).norm(), 1e-15);
  }
}

TEST(InductionData, SphericalHarmonicsLevelPoints) {
  for (double ell : {1.0, 2.0, 3.0}) {
    const auto d = induction_data(coadjoint_orbit_so3(ell), point_space(GroupId::so2()), so2_into_so3());
    Rng rng(14);
    for (int i = 0; i < 50; ++i) {
      const GroupElement q = random_element(GroupId::so3(), rng);
      const double th = rng.uniform(0, 2 * std::numbers::pi);
      const Vec xx = ell * q.matrix() * Vec(Eigen::Vector3d(std::cos(th), std::sin(th), 0));
      const Vec m = d.layout.pack_m(xx, q, xx, Vec(0));
      EXPECT_LT(d.M.carrier->residual_norm(m), 1e-12);
      EXPECT_LT(d.M.moment(m).cwiseAbs().maxCoeff(), 1e-12);
    }
  }
}

TEST(InductionData, AxiomGateOnMAndN) {
  const auto d1 = induction_data(coadjoint_orbit_so3(2.0), point_space(GroupId::so2()), so2_into_so3());
  expect_all_pass(axiom_gate(d1.M, opts()));
  expect_all_pass(axiom_gate(d1.N, opts()));
  const auto d2 = induction_data(point_space(GroupId::torus2()), point_space(GroupId::real_line()),
                                 winding(std::sqrt(2.0)));
  expect_all_pass(axiom_gate(d2.M, opts()));
  expect_all_pass(axiom_gate(d2.N, opts()));
  const auto d3 = induction_data(tangent_sphere(), plane_so2(), so2_into_so3());
  expect_all_pass(axiom_gate(d3.M, opts()));
  expect_all_pass(axiom_gate(d3.N, opts()));
}

TEST(InductionData, GroupsAreChecked) {
  EXPECT_THROW(induction_data(plane_so2(), point_space(GroupId::so2()), so2_into_so3()), GroupMismatch);
}
