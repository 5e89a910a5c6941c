#include <cmath>
#include <complex>
#include <numbers>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "symred/catalog.hpp"
#include "symred/errors.hpp"
#include "symred/prequantum.hpp"

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

/// Brute-force ξ^α with the multinomial weight, independent of the library.
std::complex<double> weighted_monomial(const CVec& xi, int a, int b, int c) {
  const double w = std::sqrt(std::tgamma(a + b + c + 1.0) / (std::tgamma(a + 1.0) * std::tgamma(b + 1.0) * std::tgamma(c + 1.0)));
  std::complex<double> v = w;
  for (int i = 0; i < a; ++i) v *= xi[0];
  for (int i = 0; i < b; ++i) v *= xi[1];
  for (int i = 0; i < c; ++i) v *= xi[2];
  return v;
}

}  // namespace

TEST(PrequantumDual, ReversesCircleAndForm) {
  const auto s = prequantized_sphere();
  const auto d = dual(s);
  Rng rng(1);
  const Vec x = s.sample(rng);
  expect_all_pass(axiom_gate(d, opts(50)));
  EXPECT_LT((prequantum_moment(d, x).coords() + prequantum_moment(s, x).coords()).norm(), 1e-9);
  EXPECT_NEAR(std::arg(d.charts[0].coordinate(d.circle(0.3, x)) / d.charts[0].coordinate(x)), 0.3, 1e-12);
}

TEST(PlainProduct, AddsFormsAndMoments) {
  const auto a = prequantized_sphere();
  const auto b = tangent_sphere_prequantum();
  const auto p = product(a, b);
  EXPECT_FALSE(static_cast<bool>(p.circle));
  Rng rng(2);
  const Vec x = p.sample(rng);
  EXPECT_LT((p.moment(x) - a.moment(x.head(6)) - b.moment(x.tail(8))).norm(), 1e-15);
  expect_all_pass(axiom_gate(p, opts(50)));
}

TEST(BoxProduct, DiagonalMomentVanishes) {
  const auto s = prequantized_sphere();
  const auto p = prequantum_product(s, s, ProductSign::Minus, 0);
  Rng rng(3);
  for (int i = 0; i < 50; ++i) {
    const Vec x = s.sample(rng);
    if (std::abs(s.charts[0].coordinate(x)) < 1e-2) continue;
    const Vec y = gauge_fix(s, s, ProductSign::Minus, 0, x, x);
    EXPECT_LT(p.moment(y).norm(), 1e-12);
  }
}

TEST(BoxProduct, AntidiagonalOrbitsShareRepresentative) {
  const auto s1 = prequantized_sphere();
  const auto s2 = tangent_sphere_prequantum();
  Rng rng(4);
  for (ProductSign sign : {ProductSign::Plus, ProductSign::Minus}) {
    for (int i = 0; i < 50; ++i) {
      const Vec x1 = s1.sample(rng);
      const Vec x2 = s2.sample(rng);
      if (std::abs(s1.charts[0].coordinate(x1)) < 1e-2) continue;
      const double t = rng.uniform(-3, 3);
      // (z⁻¹x₁, z x₂) for Plus, (z x₁, z x₂) for Minus
      const Vec y1 = s1.circle(sign == ProductSign::Plus ? -t : t, x1);
      const Vec y2 = s2.circle(t, x2);
      const Vec a = gauge_fix(s1, s2, sign, 0, x1, x2);
      const Vec b = gauge_fix(s1, s2, sign, 0, y1, y2);
      ASSERT_LT((a - b).cwiseAbs().maxCoeff(), 1e-12);
      const std::complex<double> c = s1.charts[0].coordinate(a.head(6));
      EXPECT_NEAR(c.imag(), 0.0, 1e-14);
      EXPECT_GT(c.real(), 0.0);
    }
  }
}

TEST(BoxProduct, SingularChartRaises) {
  const auto s = prequantized_sphere();
  Mat f = Mat::Identity(3, 3);  // ξ = (e₁ − i e₂)/√2 has ξ₃ = 0
  const Vec x = xi_from_frame(f);
  EXPECT_THROW(gauge_fix(s, s, ProductSign::Plus, 2, x, x), GaugeChartMiss);
  EXPECT_NO_THROW(gauge_fix(s, s, ProductSign::Plus, 0, x, x));
}

TEST(BoxProduct, AxiomGateAndReeb) {
  const auto s = prequantized_sphere();
  const auto c = circle_prequantum(GroupId::so3());
  expect_all_pass(axiom_gate(prequantum_product(s, c, ProductSign::Minus, 0), opts()));
  expect_all_pass(axiom_gate(prequantum_product(s, s, ProductSign::Plus, 1), opts(100)));
  expect_all_pass(axiom_gate(prequantum_product(c, s, ProductSign::Minus, 0), opts(100)));
}

TEST(BoxProduct, EquatorLevelOfSphereAgainstTrivialCircle) {
  const GroupHom iota = so2_into_so3();
  const auto s = restrict_along(prequantized_sphere(), iota);
  const auto p = prequantum_product(s, circle_prequantum(GroupId::so2()), ProductSign::Minus, 0);
  Rng rng(5);
  for (int i = 0; i < 50; ++i) {
    // equator frames: u₃ ⊥ e₃
    const double phi = rng.uniform(0, 2 * std::numbers::pi), psi = rng.uniform(0, 2 * std::numbers::pi);
    Mat f(3, 3);
    const Eigen::Vector3d u3(std::cos(phi), std::sin(phi), 0);
    const Eigen::Vector3d a(-std::sin(phi), std::cos(phi), 0), b(0, 0, 1);
    const Eigen::Vector3d u1 = std::cos(psi) * a + std::sin(psi) * b;
    f.col(0) = u1;
    f.col(1) = u3.cross(u1);
    f.col(2) = u3;
    const Vec xi = xi_from_frame(f);
    if (std::abs(s.charts[0].coordinate(xi)) < 1e-2) continue;
    const double th = rng.uniform(0, 2 * std::numbers::pi);
    const Vec z = Eigen::Vector2d(std::cos(th), std::sin(th));
    const Vec y = gauge_fix(s, circle_prequantum(GroupId::so2()), ProductSign::Minus, 0, xi, z);
    EXPECT_LT(p.moment(y).norm(), 1e-12);
  }
  // and a frame off the equator is off the level
  const Vec xi = xi_from_frame(Mat::Identity(3, 3));
  const Vec y = gauge_fix(s, circle_prequantum(GroupId::so2()), ProductSign::Minus, 0, xi, Vec::Unit(2, 0));
  EXPECT_NEAR(std::abs(p.moment(y)[0]), 1.0, 1e-12);
}

TEST(PowerMap, MatchesBruteForceMonomials) {
  Rng rng(6);
  const Vec xi = prequantized_sphere().sample(rng);
  const CVec z = to_complex(xi);
  for (int ell : {1, 2, 3}) {
    const CVec c = to_complex(power_map(xi, ell));
    const auto mons = monomials(ell);
    ASSERT_EQ(static_cast<int>(mons.size()), (ell + 1) * (ell + 2) / 2);
    for (std::size_t i = 0; i < mons.size(); ++i)
      EXPECT_LT(std::abs(c[static_cast<Eigen::Index>(i)] - weighted_monomial(z, mons[i][0], mons[i][1], mons[i][2])), 1e-14);
    EXPECT_NEAR(c.norm(), 1.0, 1e-13);
  }
}

TEST(PowerMap, LevelOneIsIdentity) {
  Rng rng(7);
  const auto s = prequantized_sphere();
  const auto f = fusion_power(s, 1);
  for (int i = 0; i < 20; ++i) {
    const Vec xi = s.sample(rng);
    EXPECT_EQ(power_map(xi, 1), xi);
    EXPECT_LT((f.moment(xi) - s.moment(xi)).norm(), 1e-13);
  }
}

TEST(PowerMap, LevelTwoFibersAreSignPairs) {
  Rng rng(8);
  const auto s = prequantized_sphere();
  for (int i = 0; i < 50; ++i) {
    const Vec xi = s.sample(rng);
    const Vec c = power_map(xi, 2);
    EXPECT_LT((power_map(-xi, 2) - c).norm(), 1e-15);
    const Vec pre = power_preimage(c, 2);
    EXPECT_LT(std::min((pre - xi).norm(), (pre + xi).norm()), 1e-12);
    // e^{iθ}ξ with θ ∉ πZ lands elsewhere
    EXPECT_GT((power_map(s.circle(1.0, xi), 2) - c).norm(), 0.1);
  }
}

TEST(PowerMap, EquivariantUnderSymmetricPower) {
  Rng rng(9);
  const auto s = prequantized_sphere();
  for (int ell : {1, 2, 3, 4}) {
    for (int i = 0; i < 10; ++i) {
      const GroupElement g = random_element(GroupId::so3(), rng);
      const GroupElement h = random_element(GroupId::so3(), rng);
      const Vec xi = s.sample(rng);
      const Mat sg = symmetric_power_matrix(g.matrix(), ell);
      const int n = static_cast<int>(sg.rows());
      const Vec c = power_map(xi, ell);
      Vec lhs(2 * n);
      lhs << sg * c.head(n), sg * c.tail(n);
      EXPECT_LT((lhs - power_map(s.action(g, xi), ell)).cwiseAbs().maxCoeff(), 1e-12);
      EXPECT_LT(oracle::max_abs(sg.transpose() * sg - Mat::Identity(n, n)), 1e-12);
      const Mat sgh = symmetric_power_matrix(multiply(g, h).matrix(), ell);
      EXPECT_LT(oracle::max_abs(sgh - sg * symmetric_power_matrix(h.matrix(), ell)), 1e-12);
    }
  }
}

TEST(FusionPower, MomentScalesByLevel) {
  const auto s = prequantized_sphere();
  Rng rng(10);
  for (int ell : {1, 2, 3}) {
    const auto f = fusion_power(s, ell);
    for (int i = 0; i < 20; ++i) {
      const Vec xi = s.sample(rng);
      const Vec c = power_map(xi, ell);
      EXPECT_LT((f.moment(c) - ell * s.moment(xi)).norm(), 1e-12);
      EXPECT_LT((prequantum_moment(f, c).coords() - ell * s.moment(xi)).norm(), 1e-8);
    }
  }
}

TEST(FusionPower, OneFormIsPushforwardOfScaledForm) {
  const auto s = prequantized_sphere();
  Rng rng(11);
  for (int ell : {2, 3}) {
    const auto f = fusion_power(s, ell);
    for (int i = 0; i < 20; ++i) {
      const Vec xi = s.sample(rng);
      const Vec v = random_tangent(*s.carrier, xi, rng);
      const Vec dv = directional_derivative([ell](const Vec& y) { return power_map(y, ell); }, xi, v);
      EXPECT_NEAR(f.varpi(power_map(xi, ell), dv), ell * s.varpi(xi, v), 1e-8);
    }
  }
}

TEST(FusionPower, AxiomGateAndReeb) {
  const auto s = prequantized_sphere();
  for (int ell : {1, 2, 3}) {
    const auto f = fusion_power(s, ell);
    Rng rng(12);
    EXPECT_LT(f.carrier->residual_norm(f.sample(rng)), 1e-12);
    expect_all_pass(axiom_gate(f, opts()));
  }
}

TEST(FusionPower, ChartsRotateWithCircle) {
  const auto f = fusion_power(prequantized_sphere(), 2);
  Rng rng(13);
  const Vec c = f.sample(rng);
  for (const auto& ch : f.charts)
    EXPECT_NEAR(std::abs(ch.coordinate(f.circle(0.7, c)) - std::polar(1.0, 0.7) * ch.coordinate(c)), 0.0, 1e-14);
}

TEST(Symplectize, ZeroSliceMomentAndRadialContraction) {
  const auto s = prequantized_sphere();
  const auto h = symplectize(s);
  Rng rng(14);
  for (int i = 0; i < 20; ++i) {
    const Vec xi = s.sample(rng);
    Vec x(7);
    x << 0.0, xi;
    EXPECT_LT((h.moment(x) - s.moment(xi)).norm(), 1e-15);
    const double sv = rng.uniform(-1, 1);
    x[0] = sv;
    Vec radial = Vec::Zero(7);
    radial[0] = 1.0;
    Vec v = Vec::Zero(7);
    v.tail(6) = random_tangent(*s.carrier, xi, rng);
    EXPECT_NEAR(h.omega(x, radial, v), std::exp(sv) * s.varpi(xi, v.tail(6)), 1e-12);
  }
}

TEST(Symplectize, LevelIsLineTimesLevel) {
  const auto s = restrict_along(prequantized_sphere(), so2_into_so3());
  const auto h = symplectize(s);
  Rng rng(15);
  for (int i = 0; i < 20; ++i) {
    const double phi = rng.uniform(0, 6.28);
    Mat f(3, 3);
    f.col(2) = Eigen::Vector3d(std::cos(phi), std::sin(phi), 0);
    f.col(0) = Eigen::Vector3d(0, 0, 1);
    f.col(1) = Eigen::Vector3d(f.col(2)).cross(Eigen::Vector3d(f.col(0)));
    Vec x(7);
    x << rng.uniform(-3, 3), xi_from_frame(f);
    EXPECT_LT(h.moment(x).norm(), 1e-15);
    x[0] = rng.uniform(-3, 3);
    EXPECT_LT(h.moment(x).norm(), 1e-15);
  }
}

TEST(Symplectize, AxiomGateAndClosedness) {
  const auto h = symplectize(prequantized_sphere());
  expect_all_pass(axiom_gate(h, opts()));
  const auto g = symplectize(fusion_power(prequantized_sphere(), 2));
  expect_all_pass(axiom_gate(g, opts(100)));
}

TEST(PrequantumInduction, SpacesPassAxioms) {
  const auto d = prequantum_induction_data(fusion_power(prequantized_sphere(), 2), circle_prequantum(GroupId::so2()),
                                           so2_into_so3());
  expect_all_pass(axiom_gate(d.M, opts(100)));
  expect_all_pass(axiom_gate(d.N, opts(100)));
  EXPECT_EQ(d.layout.m_dim(), 12 + 9 + 3 + 2);
}
