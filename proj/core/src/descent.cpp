#include "symred/descent.hpp"

#include <cmath>

#include "symred/errors.hpp"

namespace symred {

std::vector<GaugePair> generate_gauge_pairs(const LevelSet& level, const GroupId& group, const ActionFn& action,
                                            int count, std::uint64_t seed, const GaugeOptions& gopts) {
  if (level.plots.empty()) throw EmptyCatalog("no base plots into " + level.name);
  const Mat dirs = gopts.directions.size() ? gopts.directions : Mat::Identity(group.dim(), group.dim());
  Rng rng = Rng::stream(seed, "gauge_pairs/" + level.name);
  std::vector<GaugePair> pairs;
  pairs.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    const Plot p = level.plots[static_cast<std::size_t>(i) % level.plots.size()](rng);
    std::vector<std::function<double(const Vec&)>> coeff;
    for (int k = 0; k < dirs.cols(); ++k)
      coeff.push_back(trig_polynomial(rng, p.domain_dim(), gopts.degree, gopts.amplitude));
    auto r_of = [group, dirs, coeff](const Vec& u) {
      Vec c(dirs.cols());
      for (int k = 0; k < dirs.cols(); ++k) c[k] = coeff[static_cast<std::size_t>(k)](u);
      return exp(AlgebraElement(group, dirs * c));
    };
    Plot r("R", group_space(group), p.lo(), p.hi(), [r_of](const Vec& u) { return to_ambient(r_of(u)); });
    Plot q("R·" + p.name(), p.target(), p.lo(), p.hi(),
           [r_of, p, action](const Vec& u) { return action(r_of(u), p(u)); });
    pairs.push_back({p, r, q});
  }
  return pairs;
}

CheckReport souriau_check(const std::string& name, const KForm& form, const std::vector<GaugePair>& pairs,
                          const CheckOptions& opts, const std::optional<MomentTerms>& terms) {
  Rng rng = Rng::stream(opts.seed, "souriau/" + name);
  ResidualAccumulator acc;
  const int per_pair = pairs.empty() ? 0 : std::max(1, opts.samples / static_cast<int>(pairs.size()));
  const bool with_terms = terms.has_value() && form.arity() == 2;
  double identity_defect = 0.0, moment_terms = 0.0;
  for (const auto& pair : pairs) {
    const DomainForm fp = pullback(form, pair.P, opts.diff);
    const DomainForm fq = pullback(form, pair.Q, opts.diff);
    for (int s = 0; s < per_pair; ++s) {
      const Vec u = pair.P.sample_domain(rng);
      std::vector<Vec> v;
      for (int k = 0; k < form.arity(); ++k) v.push_back(rng.normal_vector(pair.P.domain_dim()));
      const double a = fp(u, v);
      const double b = fq(u, v);
      acc.add(std::abs(a - b), std::max(std::abs(a), std::abs(b)), [&] {
        Witness w{u, v, 0.0, pair.P.name()};
        w.vectors.push_back(pair.R(u));
        return w;
      });
      if (!with_terms) continue;
      const Vec x = pair.P(u);
      const Vec dx = plot_derivative(pair.P, u, v[0], opts.diff);
      const Vec dx2 = plot_derivative(pair.P, u, v[1], opts.diff);
      const AlgebraElement z = left_maurer_cartan(terms->group, pair.R, u, v[0], opts.diff);
      const AlgebraElement z2 = left_maurer_cartan(terms->group, pair.R, u, v[1], opts.diff);
      const Vec zx = infinitesimal_action(terms->group, terms->action, z, x, opts.diff);
      const Vec zx2 = infinitesimal_action(terms->group, terms->action, z2, x, opts.diff);
      const Vec mu = terms->moment(x);
      const Vec dmu = directional_derivative(terms->moment, x, dx, opts.diff);
      const Vec dmu2 = directional_derivative(terms->moment, x, dx2, opts.diff);
      const double lhs = form(x, Vec(dx + zx), Vec(dx2 + zx2)) - form(x, dx, dx2);
      const double rhs = dmu.dot(z2.coords()) - dmu2.dot(z.coords()) + mu.dot(bracket(z2, z).coords());
      identity_defect = std::max(identity_defect, std::abs(lhs - rhs));
      moment_terms = std::max(moment_terms, std::abs(rhs));
    }
  }
  auto r = acc.finish(name + ": P*form = Q*form", "souriau_check", opts.tol, opts.seed);
  r.anchor = "equal-pullbacks";
  r.set_metric("pairs", static_cast<double>(pairs.size()));
  if (with_terms) {
    r.set_metric("moment_identity_defect", identity_defect);
    r.set_metric("moment_terms", moment_terms);
  }
  return r;
}

DivisionSolver plane_rotation_solver(double free_tolerance) {
  return [free_tolerance](const Vec& p, const Vec& q) -> std::optional<GroupElement> {
    if (p.norm() <= free_tolerance) return std::nullopt;
    const double angle = std::atan2(p[0] * q[1] - p[1] * q[0], p.dot(q));
    Mat m(2, 2);
    m << std::cos(angle), -std::sin(angle), std::sin(angle), std::cos(angle);
    return GroupElement(GroupId::so2(), m);
  };
}

DivisionSolver frame_alignment_solver(std::function<std::optional<Mat>(const Vec&)> frame) {
  return [frame = std::move(frame)](const Vec& p, const Vec& q) -> std::optional<GroupElement> {
    const auto fp = frame(p);
    const auto fq = frame(q);
    if (!fp || !fq) return std::nullopt;
    return GroupElement(GroupId::so3(), *fq * fp->transpose());
  };
}

CheckReport smooth_division_probe(const std::string& name, const Plot& P, const Plot& Q, const ActionFn& action,
                                  const DivisionSolver& solve, const DivisionProbeOptions& opts) {
  if (P.domain_dim() != 1 || Q.domain_dim() != 1)
    throw ArityMismatch("smooth_division_probe needs one-parameter plots");
  if (opts.grid < 2) throw ConfigError("smooth_division_probe needs at least two grid points");
  const double lo = P.lo()[0], hi = P.hi()[0];
  const double mesh = (hi - lo) / (opts.grid - 1);
  ResidualAccumulator acc;
  std::optional<GroupElement> prev;
  double prev_u = lo;
  double max_jump = 0.0, jump_at = lo, orbit_defect = 0.0;
  int non_free = 0;
  for (int i = 0; i < opts.grid; ++i) {
    const double u = lo + i * mesh;
    const Vec uv = Vec::Constant(1, u);
    const Vec p = P(uv), q = Q(uv);
    const auto r = solve(p, q);
    if (!r) {
      ++non_free;
      continue;
    }
    orbit_defect = std::max(orbit_defect, (action(*r, p) - q).cwiseAbs().maxCoeff());
    if (prev) {
      const double jump = group_distance(*prev, *r);
      if (jump > max_jump) {
        max_jump = jump;
        jump_at = 0.5 * (u + prev_u);
      }
      acc.add(jump / (u - prev_u), jump, [&] { return Witness{uv, {to_ambient(*prev), to_ambient(*r)}, jump, "adjacent gauge values"}; });
    }
    prev = r;
    prev_u = u;
  }
  auto rep = acc.finish(name + ": smooth division", "smooth_division_probe",
                        Tolerances::absolute(opts.lipschitz, opts.lipschitz));
  rep.anchor = "smooth-division";
  if (orbit_defect > opts.orbit_tolerance) {
    rep.verdict = Verdict::Inconclusive;
    rep.notes.push_back("P and Q are not pointwise orbit-related on the grid");
  }
  rep.set_metric("max_jump", max_jump);
  rep.set_metric("jump_at", jump_at);
  rep.set_metric("mesh", mesh);
  rep.set_metric("non_free_points", non_free);
  rep.set_metric("orbit_defect", orbit_defect);
  if (non_free > 0)
    rep.notes.push_back(std::string(to_string(ErrorCode::NonFreePoint)) + ": " + std::to_string(non_free) +
                        " grid points with nontrivial stabilizer excluded");
  if (opts.flat_point) {
    const Vec u0 = Vec::Constant(1, *opts.flat_point);
    const Vec e = Vec::Ones(1);
    double flat = 0.0;
    for (int order = 1; order <= 3; ++order) {
      flat = std::max(flat, higher_derivative(P, u0, e, order, opts.derivative_step).cwiseAbs().maxCoeff());
      flat = std::max(flat, higher_derivative(Q, u0, e, order, opts.derivative_step).cwiseAbs().maxCoeff());
    }
    rep.set_metric("flat_derivative_max", flat);
  }
  return rep;
}

}  // namespace symred
