#include "symred/catalog.hpp"

#include <cmath>
#include <numbers>

#include "symred/errors.hpp"

namespace symred {

namespace {

Eigen::Vector3d cross(const Vec& a, const Vec& b) {
  return Eigen::Vector3d(a[0], a[1], a[2]).cross(Eigen::Vector3d(b[0], b[1], b[2]));
}

Vec rotate_blocks(const Mat& g, const Vec& x) {
  Vec y(x.size());
  for (Eigen::Index k = 0; k + 3 <= x.size(); k += 3) y.segment(k, 3) = g * x.segment(k, 3);
  return y;
}

KForm circle_form(const SpacePtr& s) {
  auto d = std::make_shared<const KForm>(
      s, 2, [](const Vec&, std::span<const Vec> v) { return 2.0 * (v[0][0] * v[1][1] - v[0][1] * v[1][0]); });
  return KForm(
      s, 1, [](const Vec& x, std::span<const Vec> v) { return x[0] * v[0][1] - x[1] * v[0][0]; }, d);
}

Vec rotate_plane(double t, const Vec& x) {
  Vec y(2);
  y << std::cos(t) * x[0] - std::sin(t) * x[1], std::sin(t) * x[0] + std::cos(t) * x[1];
  return y;
}

}  // namespace

CVec to_complex(const Vec& x) {
  const Eigen::Index n = x.size() / 2;
  CVec z(n);
  for (Eigen::Index k = 0; k < n; ++k) z[k] = {x[k], x[n + k]};
  return z;
}

Vec to_real(const CVec& z) {
  const Eigen::Index n = z.size();
  Vec x(2 * n);
  x.head(n) = z.real();
  x.tail(n) = z.imag();
  return x;
}

Vec xi_from_frame(const Mat& frame) {
  Vec x(6);
  x.head(3) = frame.col(0) / std::numbers::sqrt2;
  x.tail(3) = -frame.col(1) / std::numbers::sqrt2;
  return x;
}

Mat frame_from_xi(const Vec& x) {
  Mat f(3, 3);
  f.col(0) = std::numbers::sqrt2 * x.head(3);
  f.col(1) = -std::numbers::sqrt2 * x.tail(3);
  f.col(2) = cross(f.col(0), f.col(1));
  return f;
}

Mat random_rotation(Rng& rng) {
  return exp(AlgebraElement(GroupId::so3(), 3.0 * rng.normal_vector(3))).matrix();
}

HamiltonianSpace point_space(const GroupId& group) {
  auto s = euclidean_space("{0}", 0);
  const int k = group.dim();
  return {"{0}",
          s,
          group,
          [](const GroupElement&, const Vec& x) { return x; },
          KForm::zero(s, 2),
          [k](const Vec&) { return Vec(Vec::Zero(k)); },
          [](Rng&) { return Vec(0); }};
}

HamiltonianSpace coadjoint_orbit_so3(double ell) {
  if (!(ell > 0)) throw ConfigError("coadjoint orbit radius must be positive");
  auto s = std::make_shared<EmbeddedSpace>(
      "S²(" + std::to_string(ell) + ")", 3,
      [ell](const Vec& x) { return Vec::Constant(1, (x.squaredNorm() - ell * ell) / (2.0 * ell)); });
  const double l2 = ell * ell;
  KForm omega(
      s, 2, [l2](const Vec& x, std::span<const Vec> v) { return -x.head(3).dot(cross(v[0], v[1])) / l2; },
      std::make_shared<const KForm>(KForm::zero(s, 3)));
  return {"ℓS²",
          s,
          GroupId::so3(),
          [](const GroupElement& g, const Vec& x) { return Vec(g.matrix() * x); },
          omega,
          [](const Vec& x) { return x; },
          [ell](Rng& rng) {
            const Vec n = rng.normal_vector(3);
            return Vec(ell * n / n.norm());
          }};
}

HamiltonianSpace tangent_sphere() {
  auto s = std::make_shared<EmbeddedSpace>("TS²", 6, [](const Vec& x) {
    Vec r(2);
    r << 0.5 * (x.head(3).squaredNorm() - 1.0), x.head(3).dot(x.tail(3));
    return r;
  });
  KForm omega(
      s, 2,
      [](const Vec&, std::span<const Vec> v) {
        return v[0].tail(3).dot(v[1].head(3)) - v[1].tail(3).dot(v[0].head(3));
      },
      std::make_shared<const KForm>(KForm::zero(s, 3)));
  return {"TS²",
          s,
          GroupId::so3(),
          [](const GroupElement& g, const Vec& x) { return rotate_blocks(g.matrix(), x); },
          omega,
          [](const Vec& x) { return Vec(cross(x.head(3), x.tail(3))); },
          [](Rng& rng) {
            Vec r = rng.normal_vector(3);
            r /= r.norm();
            Vec p = rng.normal_vector(3);
            p -= r.dot(p) * r;
            Vec x(6);
            x << r, p;
            return x;
          }};
}

HamiltonianSpace plane_so2() {
  auto s = euclidean_space("R²", 2);
  KForm omega(
      s, 2, [](const Vec&, std::span<const Vec> v) { return v[0][0] * v[1][1] - v[0][1] * v[1][0]; },
      std::make_shared<const KForm>(KForm::zero(s, 3)));
  return {"R²",
          s,
          GroupId::so2(),
          [](const GroupElement& g, const Vec& x) { return Vec(g.matrix() * x); },
          omega,
          [](const Vec& x) { return Vec::Constant(1, 0.5 * x.squaredNorm()); },
          [](Rng& rng) { return rng.normal_vector(2); }};
}

PrequantumSpace prequantized_sphere() {
  auto constraint = [](const Vec& x) {
    const CVec z = to_complex(x);
    const std::complex<double> q = z.transpose() * z;
    Vec r(3);
    r << q.real(), q.imag(), z.squaredNorm() - 1.0;
    return r;
  };
  auto s = std::make_shared<EmbeddedSpace>("X̃₁", 6, constraint);
  auto d = std::make_shared<const KForm>(s, 2, [](const Vec&, std::span<const Vec> v) {
    return 2.0 * to_complex(v[0]).dot(to_complex(v[1])).imag();
  });
  KForm varpi(
      s, 1, [](const Vec& x, std::span<const Vec> v) { return to_complex(x).dot(to_complex(v[0])).imag(); }, d);
  std::vector<GaugeChart> charts;
  for (int k = 0; k < 3; ++k)
    charts.push_back({"ξ" + std::to_string(k + 1), [k](const Vec& x) { return std::complex<double>(x[k], x[3 + k]); }});
  return {"X̃₁",
          s,
          GroupId::so3(),
          [](const GroupElement& g, const Vec& x) { return rotate_blocks(g.matrix(), x); },
          varpi,
          [](double t, const Vec& x) { return to_real(std::polar(1.0, t) * to_complex(x)); },
          [](Rng& rng) { return xi_from_frame(random_rotation(rng)); },
          [](const Vec& x) { return Vec(frame_from_xi(x).col(2)); },
          charts};
}

PrequantumSpace circle_prequantum(const GroupId& group) {
  auto s = std::make_shared<EmbeddedSpace>(
      "𝕋", 2, [](const Vec& x) { return Vec::Constant(1, 0.5 * (x.squaredNorm() - 1.0)); });
  const int k = group.dim();
  return {"{0̃}",
          s,
          group,
          [](const GroupElement&, const Vec& x) { return x; },
          circle_form(s),
          rotate_plane,
          [](Rng& rng) { return rotate_plane(rng.uniform(0.0, 2.0 * std::numbers::pi), Vec::Unit(2, 0)); },
          [k](const Vec&) { return Vec(Vec::Zero(k)); },
          {{"z", [](const Vec& x) { return std::complex<double>(x[0], x[1]); }}}};
}

PrequantumSpace tangent_sphere_prequantum() {
  const HamiltonianSpace ts = tangent_sphere();
  auto circle = std::make_shared<EmbeddedSpace>(
      "𝕋", 2, [](const Vec& x) { return Vec::Constant(1, 0.5 * (x.squaredNorm() - 1.0)); });
  auto s = product_space("T̃S²", {ts.carrier, circle});
  const KForm liouville(
      ts.carrier, 1, [](const Vec& x, std::span<const Vec> v) { return x.tail(3).dot(v[0].head(3)); },
      std::make_shared<const KForm>(ts.omega));
  const KForm varpi = sum_of_terms(s, 1, {{liouville, 0, 1.0}, {circle_form(circle), 6, 1.0}});
  return {"T̃S²",
          s,
          GroupId::so3(),
          [](const GroupElement& g, const Vec& x) {
            Vec y = x;
            y.head(6) = rotate_blocks(g.matrix(), x.head(6));
            return y;
          },
          varpi,
          [](double t, const Vec& x) {
            Vec y = x;
            y.tail(2) = rotate_plane(t, x.tail(2));
            return y;
          },
          [ts](Rng& rng) {
            Vec x(8);
            x << ts.sample(rng), rotate_plane(rng.uniform(0.0, 2.0 * std::numbers::pi), Vec::Unit(2, 0));
            return x;
          },
          [ts](const Vec& x) { return ts.moment(x.head(6)); },
          {{"z", [](const Vec& x) { return std::complex<double>(x[6], x[7]); }}}};
}

}  // namespace symred
