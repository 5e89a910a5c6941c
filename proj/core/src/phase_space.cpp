#include "symred/phase_space.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "symred/errors.hpp"

namespace symred {

CoalgebraElement HamiltonianSpace::moment_at(const Vec& x) const {
  return CoalgebraElement(group, moment(x));
}

Vec HamiltonianSpace::act(const GroupElement& g, const Vec& x) const {
  if (g.group() != group) throw GroupMismatch(name + " is acted on by " + group.name());
  return action(g, x);
}

Vec PrequantumSpace::act(const GroupElement& g, const Vec& x) const {
  if (g.group() != group) throw GroupMismatch(name + " is acted on by " + group.name());
  return action(g, x);
}

CoalgebraElement PrequantumSpace::moment_at(const Vec& x) const {
  if (moment) return CoalgebraElement(group, moment(x));
  return prequantum_moment(*this, x);
}

double LevelSet::violation(const Vec& x) const {
  const Vec m = moment(x);
  double v = 0.0;
  if (selector.empty()) {
    if (m.size()) v = m.cwiseAbs().maxCoeff();
  } else {
    for (int i : selector) v = std::max(v, std::abs(m[i]));
  }
  return v;
}

Vec infinitesimal_action(const GroupId& group, const ActionFn& action, const AlgebraElement& z,
                         const Vec& x, const DiffOptions& opts) {
  if (z.group() != group) throw GroupMismatch("infinitesimal action of a foreign algebra element");
  auto curve = [&](const Vec& t) { return action(exp(AlgebraElement(group, t[0] * z.coords())), x); };
  return directional_derivative(curve, Vec::Zero(1), Vec::Ones(1), opts);
}

Vec infinitesimal_action(const HamiltonianSpace& space, const AlgebraElement& z, const Vec& x,
                         const DiffOptions& opts) {
  return infinitesimal_action(space.group, space.action, z, x, opts);
}

Vec infinitesimal_action(const PrequantumSpace& space, const AlgebraElement& z, const Vec& x,
                         const DiffOptions& opts) {
  return infinitesimal_action(space.group, space.action, z, x, opts);
}

Vec random_tangent(const EmbeddedSpace& carrier, const Vec& x, Rng& rng) {
  const Mat t = carrier.tangent_basis(x);
  return t * rng.normal_vector(static_cast<int>(t.cols()));
}

CheckReport check_action_axioms(const std::string& name, const SpacePtr& carrier,
                                const GroupId& group, const ActionFn& action,
                                const PointSampler& sample, const CheckOptions& opts) {
  Rng rng = Rng::stream(opts.seed, "action_axioms/" + name);
  ResidualAccumulator acc;
  for (int s = 0; s < opts.samples; ++s) {
    const Vec x = sample(rng);
    const GroupElement g = random_element(group, rng);
    const GroupElement h = random_element(group, rng);
    const double r_id = x.size() ? (action(GroupElement::identity(group), x) - x).cwiseAbs().maxCoeff() : 0.0;
    const Vec lhs = action(multiply(g, h), x);
    const Vec rhs = action(g, action(h, x));
    const double r_comp = x.size() ? (lhs - rhs).cwiseAbs().maxCoeff() : 0.0;
    const double r_carrier = carrier->residual_norm(action(g, x));
    acc.add(std::max({r_id, r_comp, r_carrier}), x.size() ? x.cwiseAbs().maxCoeff() : 0.0,
            [&] { return Witness{x, {}, 0.0, "action axioms"}; });
  }
  auto r = acc.finish(name + ": action axioms", "check_action_axioms", opts.tol, opts.seed);
  r.anchor = "group-action";
  return r;
}

CheckReport check_moment_condition(const HamiltonianSpace& space, const CheckOptions& opts) {
  Rng rng = Rng::stream(opts.seed, "moment_condition/" + space.name);
  ResidualAccumulator acc;
  const int k = space.group.dim();
  for (int s = 0; s < opts.samples; ++s) {
    const Vec x = space.sample(rng);
    const Vec v = random_tangent(*space.carrier, x, rng);
    const Vec dphi = directional_derivative(space.moment, x, v, opts.diff);
    for (int i = 0; i < k; ++i) {
      const AlgebraElement z = AlgebraElement::basis(space.group, i);
      const Vec zx = infinitesimal_action(space, z, x, opts.diff);
      const double w = space.omega(x, zx, v);
      acc.add(std::abs(w + dphi[i]), std::abs(w),
              [&] { return Witness{x, {v, zx}, 0.0, "basis element " + std::to_string(i)}; });
    }
  }
  auto r = acc.finish(space.name + ": moment condition", "check_moment_condition", opts.tol, opts.seed);
  r.anchor = "moment-map-convention";
  return r;
}

CheckReport check_equivariance(const HamiltonianSpace& space, const CheckOptions& opts) {
  Rng rng = Rng::stream(opts.seed, "equivariance/" + space.name);
  ResidualAccumulator acc;
  for (int s = 0; s < opts.samples; ++s) {
    const Vec x = space.sample(rng);
    const GroupElement g = random_element(space.group, rng);
    const Vec lhs = space.moment(space.action(g, x));
    const Vec rhs = coadjoint(g, space.moment_at(x)).coords();
    const double res = lhs.size() ? (lhs - rhs).cwiseAbs().maxCoeff() : 0.0;
    acc.add(res, lhs.size() ? lhs.cwiseAbs().maxCoeff() : 0.0,
            [&] { return Witness{x, {to_ambient(g)}, 0.0, "Φ(gx) vs Ad*_g Φ(x)"}; });
  }
  auto r = acc.finish(space.name + ": equivariance", "check_equivariance", opts.tol, opts.seed);
  r.anchor = "equivariant-moment";
  return r;
}

CheckReport check_form_invariance(const HamiltonianSpace& space, const CheckOptions& opts) {
  Rng rng = Rng::stream(opts.seed, "form_invariance/" + space.name);
  ResidualAccumulator acc;
  for (int s = 0; s < opts.samples; ++s) {
    const Vec x = space.sample(rng);
    const Vec v = random_tangent(*space.carrier, x, rng);
    const Vec w = random_tangent(*space.carrier, x, rng);
    const GroupElement g = random_element(space.group, rng);
    auto act_g = [&](const Vec& y) { return space.action(g, y); };
    const Vec gv = directional_derivative(act_g, x, v, opts.diff);
    const Vec gw = directional_derivative(act_g, x, w, opts.diff);
    const double a = space.omega(space.action(g, x), gv, gw);
    const double b = space.omega(x, v, w);
    acc.add(std::abs(a - b), std::max(std::abs(a), std::abs(b)),
            [&] { return Witness{x, {v, w}, 0.0, "g-pushforward"}; });
  }
  auto r = acc.finish(space.name + ": form invariance", "check_form_invariance", opts.tol, opts.seed);
  r.anchor = "invariant-form";
  return r;
}

namespace {

struct BandedSvd {
  int rank = 0;
  Mat kernel;  // orthonormal columns spanning the numerical kernel
  double smax = 0.0;
};

BandedSvd banded_svd(const Mat& a, double zero_cut, double nonzero_cut, const char* what) {
  BandedSvd out;
  const Eigen::Index n = a.cols();
  if (a.rows() == 0 || n == 0) {
    out.kernel = Mat::Identity(n, n);
    return out;
  }
  Eigen::JacobiSVD<Mat> svd(a, Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  out.smax = s[0];
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    const double rel = out.smax > 0 ? s[i] / out.smax : 0.0;
    if (rel >= nonzero_cut) {
      ++out.rank;
    } else if (rel > zero_cut) {
      throw RankAmbiguity(std::string(what) + ": singular value ratio " + std::to_string(rel) +
                          " inside the ambiguity band");
    }
  }
  out.kernel = svd.matrixV().rightCols(n - out.rank);
  return out;
}

double subspace_distance(const Mat& a, const Mat& b) {
  if (a.cols() != b.cols()) return 1.0;
  if (a.cols() == 0) return 0.0;
  const Mat d = a * a.transpose() - b * b.transpose();
  Eigen::JacobiSVD<Mat> svd(d);
  return svd.singularValues()[0];
}

}  // namespace

CheckReport cardinal_checks(const HamiltonianSpace& space, const Vec& x, const CardinalOptions& opts) {
  const Vec phi = space.moment(x);
  const double level = phi.size() ? phi.cwiseAbs().maxCoeff() : 0.0;
  if (level > opts.level_tolerance)
    throw LevelViolation(space.name + ": cardinal checks need a zero-level point, |Φ| = " +
                         std::to_string(level));
  const int k = space.group.dim();
  const Mat t = space.carrier->tangent_basis(x);
  const int d = static_cast<int>(t.cols());

  Mat jac(k, d);     // DΦ(x) on the tangent basis
  Mat omega_z(k, d); // ω(Z_k x, t_j)
  Mat orbit(space.carrier->ambient_dim(), k);
  for (int i = 0; i < k; ++i) orbit.col(i) = infinitesimal_action(space, AlgebraElement::basis(space.group, i), x, opts.diff);
  for (int j = 0; j < d; ++j) {
    jac.col(j) = directional_derivative(space.moment, x, t.col(j), opts.diff);
    for (int i = 0; i < k; ++i) omega_z(i, j) = space.omega(x, orbit.col(i), t.col(j));
  }

  const Mat stab = kernel_basis(orbit, opts.stabilizer_cutoff);
  const int stab_dim = static_cast<int>(stab.cols());
  const BandedSvd dphi = banded_svd(jac, opts.zero_cutoff, opts.nonzero_cutoff, "DΦ");
  const BandedSvd worth = banded_svd(omega_z, opts.zero_cutoff, opts.nonzero_cutoff, "ω-orthogonal");

  const double dist = subspace_distance(dphi.kernel, worth.kernel);
  double ann = 0.0;
  if (stab_dim > 0 && d > 0) ann = (stab.transpose() * jac).cwiseAbs().maxCoeff() / std::max(1.0, dphi.smax);
  const bool rank_ok = dphi.rank == k - stab_dim;

  CheckReport r;
  r.name = space.name + ": cardinal consequences";
  r.op = "cardinal_checks";
  r.anchor = "cardinal-consequences";
  r.samples = 1;
  r.max_residual = std::max({dist, ann, rank_ok ? 0.0 : 1.0});
  r.mean_residual = r.max_residual;
  r.tolerance = opts.subspace_tolerance;
  r.fail_threshold = 1e-3;
  r.verdict = classify(r.max_residual, r.tolerance, r.fail_threshold);
  r.set_metric("rank", dphi.rank);
  r.set_metric("stabilizer_dim", stab_dim);
  r.set_metric("kernel_dim", static_cast<double>(dphi.kernel.cols()));
  r.set_metric("subspace_distance", dist);
  r.set_metric("image_annihilator_defect", ann);
  if (r.verdict != Verdict::Pass) r.witness = Witness{x, {}, r.max_residual, "cardinal"};
  return r;
}

CoalgebraElement prequantum_moment(const PrequantumSpace& space, const Vec& x, const DiffOptions& opts) {
  const int k = space.group.dim();
  Vec c(k);
  for (int i = 0; i < k; ++i)
    c[i] = space.varpi(x, infinitesimal_action(space, AlgebraElement::basis(space.group, i), x, opts));
  return CoalgebraElement(space.group, c);
}

CheckReport check_reeb(const PrequantumSpace& space, const CheckOptions& opts) {
  if (!space.circle) throw SpaceMismatch(space.name + " has no circle action");
  Rng rng = Rng::stream(opts.seed, "reeb/" + space.name);
  ResidualAccumulator acc;
  double min_disp = std::numeric_limits<double>::infinity();
  for (int s = 0; s < opts.samples; ++s) {
    const Vec x = space.sample(rng);
    auto orbit = [&](const Vec& t) { return space.circle(t[0], x); };
    const Vec reeb = directional_derivative(orbit, Vec::Zero(1), Vec::Ones(1), opts.diff);
    const double norm_res = std::abs(space.varpi(x, reeb) - 1.0);

    const double theta = rng.uniform(0.0, 2.0 * std::numbers::pi);
    const Vec v = random_tangent(*space.carrier, x, rng);
    auto rot = [&](const Vec& y) { return space.circle(theta, y); };
    const Vec zv = directional_derivative(rot, x, v, opts.diff);
    const double a = space.varpi(space.circle(theta, x), zv);
    const double b = space.varpi(x, v);
    const double inv_res = std::abs(a - b);

    for (int j = 1; j < 8; ++j)
      min_disp = std::min(min_disp, (space.circle(2.0 * std::numbers::pi * j / 8.0, x) - x).norm());

    acc.add(std::max(norm_res, inv_res), std::max({1.0, std::abs(a), std::abs(b)}),
            [&] { return Witness{x, {reeb, v}, 0.0, "Reeb normalization / invariance"}; });
  }
  auto r = acc.finish(space.name + ": Reeb normalization", "check_reeb", opts.tol, opts.seed);
  r.anchor = "reeb-circle-action";
  r.set_metric("min_displacement", min_disp);
  if (!(min_disp > 1e-6)) {
    r.verdict = Verdict::Fail;
    r.notes.push_back("circle action has a fixed point on a probe");
  }
  return r;
}

CheckReport check_varpi_invariance(const PrequantumSpace& space, const CheckOptions& opts) {
  Rng rng = Rng::stream(opts.seed, "varpi_invariance/" + space.name);
  ResidualAccumulator acc;
  for (int s = 0; s < opts.samples; ++s) {
    const Vec x = space.sample(rng);
    const Vec v = random_tangent(*space.carrier, x, rng);
    const GroupElement g = random_element(space.group, rng);
    auto act_g = [&](const Vec& y) { return space.action(g, y); };
    const Vec gv = directional_derivative(act_g, x, v, opts.diff);
    const double a = space.varpi(space.action(g, x), gv);
    const double b = space.varpi(x, v);
    acc.add(std::abs(a - b), std::max(std::abs(a), std::abs(b)),
            [&] { return Witness{x, {v}, 0.0, "g-pushforward"}; });
  }
  auto r = acc.finish(space.name + ": 1-form invariance", "check_form_invariance", opts.tol, opts.seed);
  r.anchor = "invariant-form";
  return r;
}

CheckReport check_moment_formula(const PrequantumSpace& space, const CheckOptions& opts) {
  Rng rng = Rng::stream(opts.seed, "moment_formula/" + space.name);
  ResidualAccumulator acc;
  for (int s = 0; s < opts.samples; ++s) {
    const Vec x = space.sample(rng);
    const Vec a = prequantum_moment(space, x, opts.diff).coords();
    const Vec b = space.moment ? space.moment(x) : a;
    const double res = a.size() ? (a - b).cwiseAbs().maxCoeff() : 0.0;
    acc.add(res, a.size() ? a.cwiseAbs().maxCoeff() : 0.0,
            [&] { return Witness{x, {}, 0.0, "closed form vs ϖ(Z_X)"}; });
  }
  auto r = acc.finish(space.name + ": prequantum moment", "prequantum_moment", opts.tol, opts.seed);
  r.anchor = "prequantum-moment";
  return r;
}

HamiltonianSpace presymplectic_view(const PrequantumSpace& space) {
  if (!space.varpi.exact_d()) throw SpaceMismatch(space.name + ": 1-form has no exact_d");
  MomentFn moment = space.moment;
  if (!moment) {
    moment = [space](const Vec& x) { return prequantum_moment(space, x).coords(); };
  }
  return HamiltonianSpace{space.name, space.carrier, space.group, space.action,
                          *space.varpi.exact_d(), moment, space.sample};
}

std::vector<CheckReport> axiom_gate(const HamiltonianSpace& space, const CheckOptions& opts) {
  return {check_action_axioms(space.name, space.carrier, space.group, space.action, space.sample, opts),
          check_form_invariance(space, opts), check_moment_condition(space, opts),
          check_equivariance(space, opts)};
}

std::vector<CheckReport> axiom_gate(const PrequantumSpace& space, const CheckOptions& opts) {
  std::vector<CheckReport> out{
      check_action_axioms(space.name, space.carrier, space.group, space.action, space.sample, opts),
      check_varpi_invariance(space, opts)};
  if (space.circle) out.push_back(check_reeb(space, opts));
  if (space.moment) out.push_back(check_moment_formula(space, opts));
  const HamiltonianSpace view = presymplectic_view(space);
  out.push_back(check_moment_condition(view, opts));
  out.push_back(check_equivariance(view, opts));
  return out;
}

CheckReport check_level_samples(const LevelSet& level, const CheckOptions& opts) {
  Rng rng = Rng::stream(opts.seed, "level/" + level.name);
  ResidualAccumulator acc;
  for (int s = 0; s < opts.samples; ++s) {
    const Vec x = level.sample(rng);
    const double res = std::max(level.violation(x), level.carrier->residual_norm(x));
    acc.add(res, 1.0, [&] { return Witness{x, {}, 0.0, "level point"}; });
  }
  for (const auto& factory : level.plots) {
    const Plot p = factory(rng);
    for (int s = 0; s < 10; ++s) {
      const Vec u = p.sample_domain(rng, 0.0);
      const Vec x = p(u);
      const double res = std::max(level.violation(x), level.carrier->residual_norm(x));
      acc.add(res, 1.0, [&] { return Witness{u, {}, 0.0, "plot " + p.name()}; });
    }
  }
  auto r = acc.finish(level.name + ": level membership", "check_level_samples",
                      Tolerances::absolute(level.tolerance, opts.tol.fail), opts.seed);
  r.anchor = "zero-level";
  return r;
}

}  // namespace symred
