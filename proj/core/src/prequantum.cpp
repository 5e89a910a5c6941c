#include "symred/prequantum.hpp"

#include <cmath>
#include <map>

#include "symred/catalog.hpp"
#include "symred/errors.hpp"

namespace symred {

namespace {

Vec concat(const Vec& a, const Vec& b) {
  Vec r(a.size() + b.size());
  r << a, b;
  return r;
}

std::complex<double> ipow(std::complex<double> z, int n) {
  std::complex<double> r = 1.0;
  for (int i = 0; i < n; ++i) r *= z;
  return r;
}

double factorial(int n) { return std::tgamma(n + 1.0); }

double multifactorial(const std::array<int, 3>& a) { return factorial(a[0]) * factorial(a[1]) * factorial(a[2]); }

int monomial_index(const std::vector<std::array<int, 3>>& mons, const std::array<int, 3>& a) {
  for (std::size_t i = 0; i < mons.size(); ++i)
    if (mons[i] == a) return static_cast<int>(i);
  throw SpaceMismatch("monomial not found");
}

Mat orthonormal_columns(const Mat& a) {
  Eigen::HouseholderQR<Mat> qr(a);
  return qr.householderQ() * Mat::Identity(a.rows(), a.cols());
}

}  // namespace

PrequantumSpace dual(const PrequantumSpace& space) {
  PrequantumSpace d = space;
  d.name = space.name + "⁻";
  d.varpi = space.varpi.scaled(-1.0);
  if (space.circle) d.circle = [c = space.circle](double t, const Vec& x) { return c(-t, x); };
  if (space.moment) d.moment = [m = space.moment](const Vec& x) { return Vec(-m(x)); };
  d.charts.clear();
  for (const auto& ch : space.charts)
    d.charts.push_back({ch.name + "̄", [f = ch.coordinate](const Vec& x) { return std::conj(f(x)); }});
  return d;
}

PrequantumSpace product(const PrequantumSpace& a, const PrequantumSpace& b) {
  if (a.group != b.group) throw GroupMismatch("product of spaces over " + a.group.name() + " and " + b.group.name());
  const int na = a.carrier->ambient_dim();
  const int nb = b.carrier->ambient_dim();
  const std::string name = a.name + " × " + b.name;
  auto s = product_space(name, {a.carrier, b.carrier});
  MomentFn moment;
  if (a.moment && b.moment)
    moment = [am = a.moment, bm = b.moment, na, nb](const Vec& x) {
      return Vec(am(x.head(na)) + bm(x.segment(na, nb)));
    };
  return {name,
          s,
          a.group,
          [aa = a.action, ba = b.action, na, nb](const GroupElement& g, const Vec& x) {
            return concat(aa(g, x.head(na)), ba(g, x.segment(na, nb)));
          },
          sum_of_terms(s, 1, {{a.varpi, 0, 1.0}, {b.varpi, na, 1.0}}),
          {},
          [as = a.sample, bs = b.sample](Rng& rng) {
            const Vec xa = as(rng);
            return concat(xa, bs(rng));
          },
          moment,
          {}};
}

PrequantumSpace restrict_along(const PrequantumSpace& space, const GroupHom& hom) {
  if (space.group != hom.target)
    throw GroupMismatch("restrict_along: " + space.name + " is not a " + hom.target.name() + "-space");
  PrequantumSpace r = space;
  r.name = space.name + "|" + hom.source.name();
  r.group = hom.source;
  r.action = [a = space.action, map = hom.map](const GroupElement& h, const Vec& x) { return a(map(h), x); };
  if (space.moment)
    r.moment = [m = space.moment, at = Mat(hom.algebra_map.transpose())](const Vec& x) { return Vec(at * m(x)); };
  return r;
}

Vec gauge_fix(const PrequantumSpace& s1, const PrequantumSpace& s2, ProductSign sign, int chart,
              const Vec& x1, const Vec& x2) {
  if (chart < 0 || chart >= static_cast<int>(s1.charts.size()))
    throw GaugeChartMiss(s1.name + " has no chart " + std::to_string(chart));
  const std::complex<double> c = s1.charts[chart].coordinate(x1);
  if (std::abs(c) < kGaugeChartThreshold)
    throw GaugeChartMiss(s1.name + ": chart " + s1.charts[chart].name + " is singular here (|z| = " +
                         std::to_string(std::abs(c)) + ")");
  const double a = std::arg(c);
  const double t2 = sign == ProductSign::Plus ? a : -a;
  return concat(s1.circle(-a, x1), s2.circle(t2, x2));
}

PrequantumSpace prequantum_product(const PrequantumSpace& s1, const PrequantumSpace& s2, ProductSign sign,
                                   int chart) {
  if (s1.group != s2.group) throw GroupMismatch("⊠ of spaces over " + s1.group.name() + " and " + s2.group.name());
  if (!s1.circle || !s2.circle) throw SpaceMismatch("⊠ needs circle actions on both factors");
  if (chart < 0 || chart >= static_cast<int>(s1.charts.size()))
    throw GaugeChartMiss(s1.name + " has no chart " + std::to_string(chart));
  const int n1 = s1.carrier->ambient_dim();
  const int n2 = s2.carrier->ambient_dim();
  const double sg = sign == ProductSign::Plus ? 1.0 : -1.0;
  const std::string name = s1.name + (sign == ProductSign::Plus ? "" : "⁻") + " ⊠ " + s2.name;
  auto coord = s1.charts[chart].coordinate;

  auto plain = product_space(name, {s1.carrier, s2.carrier});
  auto gauge = [coord, n1](const Vec& x) { return coord(x.head(n1)).imag(); };
  auto constraint = [plain, gauge](const Vec& x) {
    const Vec r = plain->residual(x);
    Vec out(r.size() + 1);
    out << r, gauge(x);
    return out;
  };
  auto tangent = [plain, gauge](const Vec& x) {
    const Mat t = plain->tangent_basis(x);
    Mat row(1, t.cols());
    for (Eigen::Index j = 0; j < t.cols(); ++j) row(0, j) = directional_derivative_scalar(gauge, x, t.col(j));
    return orthonormal_columns(Mat(t * kernel_basis(row)));
  };
  auto s = std::make_shared<EmbeddedSpace>(name, n1 + n2, constraint, tangent);

  auto fix = [s1, s2, sign, chart](const Vec& x1, const Vec& x2) {
    return gauge_fix(s1, s2, sign, chart, x1, x2);
  };
  std::vector<GaugeChart> charts;
  for (const auto& ch : s2.charts)
    charts.push_back({ch.name, [f = ch.coordinate, n1, n2](const Vec& x) { return f(x.segment(n1, n2)); }});

  return {name,
          s,
          s1.group,
          [a1 = s1.action, a2 = s2.action, fix, n1, n2](const GroupElement& g, const Vec& x) {
            return fix(a1(g, x.head(n1)), a2(g, x.segment(n1, n2)));
          },
          sum_of_terms(s, 1, {{s1.varpi, 0, sg}, {s2.varpi, n1, 1.0}}),
          [c2 = s2.circle, n1, n2](double t, const Vec& x) {
            Vec y = x;
            y.segment(n1, n2) = c2(t, x.segment(n1, n2));
            return y;
          },
          [s1, s2, coord, fix](Rng& rng) {
            for (int attempt = 0; attempt < 1000; ++attempt) {
              const Vec x1 = s1.sample(rng);
              const Vec x2 = s2.sample(rng);
              if (std::abs(coord(x1)) >= 10.0 * kGaugeChartThreshold) return fix(x1, x2);
            }
            throw GaugeChartMiss("no sample found on the chart domain");
          },
          [s1, s2, sg, n1, n2](const Vec& x) {
            return Vec(s2.moment_at(x.segment(n1, n2)).coords() + sg * s1.moment_at(x.head(n1)).coords());
          },
          charts};
}

std::vector<std::array<int, 3>> monomials(int ell) {
  std::vector<std::array<int, 3>> out;
  for (int a = ell; a >= 0; --a)
    for (int b = ell - a; b >= 0; --b) out.push_back({a, b, ell - a - b});
  return out;
}

Vec power_map(const Vec& xi, int ell) {
  const CVec z = to_complex(xi);
  const auto mons = monomials(ell);
  CVec c(static_cast<Eigen::Index>(mons.size()));
  for (std::size_t i = 0; i < mons.size(); ++i) {
    std::complex<double> v = std::sqrt(factorial(ell) / multifactorial(mons[i]));
    for (int k = 0; k < 3; ++k) v *= ipow(z[k], mons[i][k]);
    c[static_cast<Eigen::Index>(i)] = v;
  }
  return to_real(c);
}

Vec power_preimage(const Vec& c, int ell) {
  const CVec z = to_complex(c);
  const auto mons = monomials(ell);
  int k = 0;
  double best = -1.0;
  for (int j = 0; j < 3; ++j) {
    std::array<int, 3> a{0, 0, 0};
    a[j] = ell;
    const double m = std::abs(z[monomial_index(mons, a)]);
    if (m > best) {
      best = m;
      k = j;
    }
  }
  std::array<int, 3> top{0, 0, 0};
  top[k] = ell;
  CVec xi(3);
  xi[k] = std::pow(z[monomial_index(mons, top)], 1.0 / ell);
  const std::complex<double> lead = std::sqrt(static_cast<double>(ell)) * ipow(xi[k], ell - 1);
  for (int j = 0; j < 3; ++j) {
    if (j == k) continue;
    std::array<int, 3> a{0, 0, 0};
    a[k] = ell - 1;
    a[j] += 1;
    xi[j] = z[monomial_index(mons, a)] / lead;
  }
  return to_real(xi);
}

Mat symmetric_power_matrix(const Mat& g, int ell) {
  using Poly = std::map<std::array<int, 3>, double>;
  const auto mons = monomials(ell);
  const int n = static_cast<int>(mons.size());
  Mat s = Mat::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    Poly p{{{0, 0, 0}, 1.0}};
    for (int k = 0; k < 3; ++k) {
      for (int rep = 0; rep < mons[i][k]; ++rep) {
        Poly q;
        for (const auto& [e, coef] : p) {
          for (int j = 0; j < 3; ++j) {
            auto e2 = e;
            ++e2[j];
            q[e2] += coef * g(k, j);
          }
        }
        p = std::move(q);
      }
    }
    for (const auto& [e, coef] : p) {
      const int j = monomial_index(mons, e);
      s(i, j) += std::sqrt(multifactorial(e) / multifactorial(mons[i])) * coef;
    }
  }
  return s;
}

namespace {

/// D(ξ ↦ ξ^ℓ)(ξ)·η in R^{2N} storage.
Vec power_differential(const Vec& xi, const Vec& eta, int ell) {
  const CVec z = to_complex(xi);
  const CVec e = to_complex(eta);
  const auto mons = monomials(ell);
  CVec c(static_cast<Eigen::Index>(mons.size()));
  for (std::size_t i = 0; i < mons.size(); ++i) {
    const auto& a = mons[i];
    std::complex<double> sum = 0.0;
    for (int k = 0; k < 3; ++k) {
      if (a[k] == 0) continue;
      std::complex<double> term = static_cast<double>(a[k]) * e[k];
      for (int j = 0; j < 3; ++j) term *= ipow(z[j], j == k ? a[j] - 1 : a[j]);
      sum += term;
    }
    c[static_cast<Eigen::Index>(i)] = std::sqrt(factorial(ell) / multifactorial(a)) * sum;
  }
  return to_real(c);
}

}  // namespace

PrequantumSpace fusion_power(const PrequantumSpace& sphere, int ell) {
  if (ell < 1) throw ConfigError("fusion power needs ℓ ≥ 1");
  const int n = static_cast<int>(monomials(ell).size());
  const std::string name = "X̃" + std::to_string(ell);
  auto base = sphere.carrier;
  auto constraint = [base, ell](const Vec& c) {
    const Vec xi = power_preimage(c, ell);
    const Vec r1 = c - power_map(xi, ell);
    const Vec r2 = base->residual(xi);
    return concat(r1, r2);
  };
  auto tangent = [base, ell](const Vec& c) {
    const Vec xi = power_preimage(c, ell);
    const Mat t = base->tangent_basis(xi);
    Mat out(2 * static_cast<Eigen::Index>(monomials(ell).size()), t.cols());
    for (Eigen::Index j = 0; j < t.cols(); ++j) out.col(j) = power_differential(xi, t.col(j), ell);
    return orthonormal_columns(out);
  };
  auto s = std::make_shared<EmbeddedSpace>(name, 2 * n, constraint, tangent);
  auto d = std::make_shared<const KForm>(s, 2, [](const Vec&, std::span<const Vec> v) {
    return 2.0 * to_complex(v[0]).dot(to_complex(v[1])).imag();
  });
  KForm varpi(
      s, 1, [](const Vec& x, std::span<const Vec> v) { return to_complex(x).dot(to_complex(v[0])).imag(); }, d);
  std::vector<GaugeChart> charts;
  const auto mons = monomials(ell);
  for (int k = 0; k < 3; ++k) {
    std::array<int, 3> a{0, 0, 0};
    a[k] = ell;
    const int i = monomial_index(mons, a);
    charts.push_back({"c" + std::to_string(k + 1), [i, n](const Vec& x) { return std::complex<double>(x[i], x[n + i]); }});
  }
  return {name,
          s,
          sphere.group,
          [ell, n](const GroupElement& g, const Vec& x) {
            const Mat sp = symmetric_power_matrix(g.matrix(), ell);
            return concat(sp * x.head(n), sp * x.tail(n));
          },
          varpi,
          [](double t, const Vec& x) { return to_real(std::polar(1.0, t) * to_complex(x)); },
          [sample = sphere.sample, ell](Rng& rng) { return power_map(sample(rng), ell); },
          [sphere, ell](const Vec& c) {
            return Vec(static_cast<double>(ell) * sphere.moment_at(power_preimage(c, ell)).coords());
          },
          charts};
}

HamiltonianSpace symplectize(const PrequantumSpace& space) {
  const KForm* dv = space.varpi.exact_d();
  if (!dv) throw SpaceMismatch(space.name + ": symplectization needs dϖ");
  const int n = space.carrier->ambient_dim();
  auto s = product_space("R × " + space.name, {euclidean_space("R", 1), space.carrier});
  const KForm varpi = space.varpi;
  const KForm dvarpi = *dv;
  KForm omega(
      s, 2,
      [varpi, dvarpi, n](const Vec& x, std::span<const Vec> v) {
        const Vec p = x.tail(n);
        const Vec a = v[0].tail(n);
        const Vec b = v[1].tail(n);
        const double es = std::exp(x[0]);
        return es * (v[0][0] * varpi(p, b) - v[1][0] * varpi(p, a)) + es * dvarpi(p, a, b);
      },
      std::make_shared<const KForm>(KForm::zero(s, 3)));
  return {"symplectization of " + space.name,
          s,
          space.group,
          [act = space.action, n](const GroupElement& g, const Vec& x) {
            Vec y = x;
            y.tail(n) = act(g, x.tail(n));
            return y;
          },
          omega,
          [space, n](const Vec& x) { return Vec(std::exp(x[0]) * space.moment_at(x.tail(n)).coords()); },
          [sample = space.sample](Rng& rng) {
            const double t = rng.uniform(-1.0, 1.0);
            return concat(Vec::Constant(1, t), sample(rng));
          }};
}

PrequantumInductionData prequantum_induction_data(const PrequantumSpace& x, const PrequantumSpace& y,
                                                  const GroupHom& iota) {
  if (x.group != iota.target || y.group != iota.source)
    throw GroupMismatch("prequantum induction data: X̃ must be a " + iota.target.name() + "-space and Ỹ a " +
                        iota.source.name() + "-space");
  const PrequantumSpace t = cotangent_group_exact(iota);
  const PrequantumSpace xl = restrict_along(dual(x), projection(t.group, 0));
  const PrequantumSpace yl = restrict_along(y, projection(t.group, 1));
  PrequantumSpace m = product(product(xl, t), yl);
  m.name = "M̌(" + x.name + ", " + y.name + ")";
  PrequantumSpace nsp = product(restrict_along(dual(x), iota), y);
  nsp.name = "Ň(" + x.name + ", " + y.name + ")";
  InductionLayout layout{x.carrier->ambient_dim(), iota.target.ambient_dim(), iota.target.dim(),
                         y.carrier->ambient_dim()};
  return {x, y, iota, m, nsp, layout};
}

}  // namespace symred
