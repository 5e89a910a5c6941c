#include "symred/constructions.hpp"

#include "symred/errors.hpp"

namespace symred {

namespace {

Vec concat(const Vec& a, const Vec& b) {
  Vec r(a.size() + b.size());
  r << a, b;
  return r;
}

Mat ambient_matrix(const GroupId& g, const Vec& flat) { return element_from_ambient(g, flat).matrix(); }

}  // namespace

HamiltonianSpace dual(const HamiltonianSpace& space) {
  HamiltonianSpace d = space;
  d.name = space.name + "⁻";
  d.omega = space.omega.scaled(-1.0);
  auto m = space.moment;
  d.moment = [m](const Vec& x) { return Vec(-m(x)); };
  return d;
}

HamiltonianSpace product(const HamiltonianSpace& a, const HamiltonianSpace& b) {
  if (a.group != b.group) throw GroupMismatch("product of spaces over " + a.group.name() + " and " + b.group.name());
  const int na = a.carrier->ambient_dim();
  const std::string name = a.name + " × " + b.name;
  auto s = product_space(name, {a.carrier, b.carrier});
  const int nb = b.carrier->ambient_dim();
  return {name,
          s,
          a.group,
          [aa = a.action, ba = b.action, na, nb](const GroupElement& g, const Vec& x) {
            return concat(aa(g, x.head(na)), ba(g, x.segment(na, nb)));
          },
          sum_of_terms(s, 2, {{a.omega, 0, 1.0}, {b.omega, na, 1.0}}),
          [am = a.moment, bm = b.moment, na, nb](const Vec& x) {
            return Vec(am(x.head(na)) + bm(x.segment(na, nb)));
          },
          [as = a.sample, bs = b.sample](Rng& rng) {
            const Vec xa = as(rng);
            return concat(xa, bs(rng));
          }};
}

HamiltonianSpace restrict_along(const HamiltonianSpace& space, const GroupHom& hom) {
  if (space.group != hom.target) throw GroupMismatch("restrict_along: " + space.name + " is not a " + hom.target.name() + "-space");
  HamiltonianSpace r = space;
  r.name = space.name + "|" + hom.source.name();
  r.group = hom.source;
  r.action = [a = space.action, map = hom.map](const GroupElement& h, const Vec& x) { return a(map(h), x); };
  r.moment = [m = space.moment, at = Mat(hom.algebra_map.transpose())](const Vec& x) { return Vec(at * m(x)); };
  return r;
}

HamiltonianSpace hom_data(const HamiltonianSpace& x1, const HamiltonianSpace& x2) {
  HamiltonianSpace h = product(dual(x1), x2);
  h.name = "Hom(" + x1.name + ", " + x2.name + ")";
  return h;
}

PrequantumSpace cotangent_group_exact(const GroupHom& iota) {
  const GroupId g = iota.target;
  const GroupId h = iota.source;
  const GroupId gh = GroupId::product(g, h);
  const int n = g.ambient_dim();
  const int k = g.dim();
  auto s = product_space("T*" + g.name(), {group_space(g), euclidean_space("𝔤*", k)});

  // Z = δq·q⁻¹ in algebra coordinates.
  auto mc = [g, n](const Vec& x, const Vec& v) {
    const Mat qi = element_from_ambient(g, x.head(n)).inverse().matrix();
    return algebra_coords(g, ambient_matrix(g, v.head(n)) * qi);
  };
  auto d = std::make_shared<const KForm>(KForm::from_alternating(
      s, 2, [g, n, k, mc](const Vec& x, std::span<const Vec> v) {
        const Vec z = mc(x, v[0]);
        const Vec w = mc(x, v[1]);
        const Vec mu = x.segment(n, k);
        const double br = mu.dot(bracket(AlgebraElement(g, z), AlgebraElement(g, w)).coords());
        return v[0].segment(n, k).dot(w) - v[1].segment(n, k).dot(z) + br;
      }));
  KForm varpi(
      s, 1, [n, k, mc](const Vec& x, std::span<const Vec> v) { return x.segment(n, k).dot(mc(x, v[0])); }, d);

  const Mat at = iota.algebra_map.transpose();
  auto moment = [g, n, k, at](const Vec& x) {
    const Vec mu = x.segment(n, k);
    const GroupElement qi = element_from_ambient(g, x.head(n)).inverse();
    return concat(mu, -at * coadjoint(qi, CoalgebraElement(g, mu)).coords());
  };
  auto action = [g, n, k, map = iota.map](const GroupElement& gh_el, const Vec& x) {
    const GroupElement a = factor(gh_el, 0);
    const GroupElement b = factor(gh_el, 1);
    const GroupElement q = element_from_ambient(g, x.head(n));
    const GroupElement q2 = multiply(multiply(a, q), map(b).inverse());
    return concat(to_ambient(q2), coadjoint(a, CoalgebraElement(g, x.segment(n, k))).coords());
  };
  return {"T*" + g.name(),
          s,
          gh,
          action,
          varpi,
          {},
          [g](Rng& rng) { return concat(to_ambient(random_element(g, rng)), rng.normal_vector(g.dim())); },
          moment,
          {}};
}

HamiltonianSpace cotangent_group(const GroupHom& iota) { return presymplectic_view(cotangent_group_exact(iota)); }

Vec InductionLayout::pack_m(const Vec& x, const GroupElement& q, const Vec& mu, const Vec& y) const {
  Vec m(m_dim());
  m << x, to_ambient(q), mu, y;
  return m;
}

Vec InductionLayout::pack_n(const Vec& x, const Vec& y) const { return concat(x, y); }

InductionData induction_data(const HamiltonianSpace& x, const HamiltonianSpace& y, const GroupHom& iota) {
  if (x.group != iota.target || y.group != iota.source)
    throw GroupMismatch("induction data: X must be a " + iota.target.name() + "-space and Y a " +
                        iota.source.name() + "-space");
  const HamiltonianSpace t = cotangent_group(iota);
  const HamiltonianSpace xl = restrict_along(dual(x), projection(t.group, 0));
  const HamiltonianSpace yl = restrict_along(y, projection(t.group, 1));
  HamiltonianSpace m = product(product(xl, t), yl);
  m.name = "M(" + x.name + ", " + y.name + ")";
  HamiltonianSpace nsp = product(restrict_along(dual(x), iota), y);
  nsp.name = "N(" + x.name + ", " + y.name + ")";
  InductionLayout layout{x.carrier->ambient_dim(), iota.target.ambient_dim(), iota.target.dim(),
                         y.carrier->ambient_dim()};
  return {x, y, iota, m, nsp, layout};
}

}  // namespace symred
