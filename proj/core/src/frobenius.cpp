#include "symred/frobenius.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "symred/errors.hpp"

namespace symred {

namespace {

double max_abs(const Vec& v) { return v.size() ? v.cwiseAbs().maxCoeff() : 0.0; }

GroupElement base_point(const GroupId& g, const InductionLayout& layout, const Vec& m) {
  return element_from_ambient(g, layout.q_flat(m));
}

template <class Data>
Vec apply_r(const Data& data, const Vec& m) {
  const GroupElement qi = base_point(data.iota.target, data.layout, m).inverse();
  return data.layout.pack_n(data.X.action(qi, data.layout.x(m)), data.layout.y(m));
}

template <class Data, class MomentOf>
Vec apply_r_prime(const Data& data, const Vec& n, MomentOf moment_of) {
  const Vec x = n.head(data.layout.x_dim);
  const Vec y = n.tail(data.layout.y_dim);
  return data.layout.pack_m(x, GroupElement::identity(data.iota.target), moment_of(x), y);
}

template <class Inst>
CheckReport reciprocity(const Inst& inst, const CheckOptions& opts) {
  const auto& d = inst.data;
  Rng rng = Rng::stream(opts.seed, "reciprocity/" + inst.name);
  ResidualAccumulator acc;
  double round_trip = 0.0, m_to_n = 0.0, n_to_m = 0.0;
  for (int s = 0; s < opts.samples; ++s) {
    const Vec n = inst.level_N.sample(rng);
    const Vec m1 = map_r_prime(d, n);
    const double rt = max_abs(map_r(d, m1) - n);
    const double lm = std::max(inst.level_M.violation(m1), d.M.carrier->residual_norm(m1));
    const Vec m = inst.level_M.sample(rng);
    const Vec n1 = map_r(d, m);
    const double ln = std::max(inst.level_N.violation(n1), d.N.carrier->residual_norm(n1));
    round_trip = std::max(round_trip, rt);
    n_to_m = std::max(n_to_m, lm);
    m_to_n = std::max(m_to_n, ln);
    acc.add(std::max({rt, lm, ln}), 1.0, [&] { return Witness{n, {m}, 0.0, "r∘r′ and level transport"}; });
  }
  auto r = acc.finish(inst.name + ": r and r′", "check_reciprocity_maps", opts.tol, opts.seed);
  r.anchor = "right-inverse";
  r.set_metric("round_trip", round_trip);
  r.set_metric("level_M_to_N", m_to_n);
  r.set_metric("level_N_to_M", n_to_m);
  return r;
}

const std::vector<PlotFactory>& plot_catalog(const LevelSet& level, const PullbackOptions& popts) {
  const auto& plots = popts.plots.empty() ? level.plots : popts.plots;
  if (plots.empty()) throw EmptyCatalog("no plots into " + level.name);
  return plots;
}

void require_on_level(const LevelSet& level, const Vec& m, const PullbackOptions& popts) {
  if (!popts.enforce_level) return;
  const double v = level.violation(m);
  if (v > level.tolerance)
    throw LevelViolation("plot value off " + level.name + " by " + std::to_string(v));
}

Vec moment_of(const PrequantumSpace& s, const Vec& x) { return s.moment_at(x).coords(); }

}  // namespace

Vec map_r(const InductionData& data, const Vec& m) { return apply_r(data, m); }
Vec map_r(const PrequantumInductionData& data, const Vec& m) { return apply_r(data, m); }

Vec map_r_prime(const InductionData& data, const Vec& n) {
  return apply_r_prime(data, n, [&](const Vec& x) { return data.X.moment(x); });
}

Vec map_r_prime(const PrequantumInductionData& data, const Vec& n) {
  return apply_r_prime(data, n, [&](const Vec& x) { return moment_of(data.X, x); });
}

CheckReport check_reciprocity_maps(const FrobeniusInstance& inst, const CheckOptions& opts) {
  return reciprocity(inst, opts);
}

CheckReport check_reciprocity_maps(const PrequantumFrobeniusInstance& inst, const CheckOptions& opts) {
  return reciprocity(inst, opts);
}

CheckReport check_frobenius_pullback(const FrobeniusInstance& inst, const CheckOptions& opts,
                                     const PullbackOptions& popts) {
  const auto& d = inst.data;
  const auto& lay = d.layout;
  const GroupId g = d.iota.target;
  const auto& plots = plot_catalog(inst.level_M, popts);
  Rng rng = Rng::stream(opts.seed, "frobenius_pullback/" + inst.name);
  ResidualAccumulator acc;
  double souriau_step = 0.0, level_step = 0.0;
  for (int s = 0; s < opts.samples; ++s) {
    const Plot f = plots[static_cast<std::size_t>(s) % plots.size()](rng);
    const Vec u = f.sample_domain(rng);
    const Vec m = f(u);
    require_on_level(inst.level_M, m, popts);

    const Plot rf = f.then("r∘" + f.name(), d.N.carrier, [&d](const Vec& p) { return map_r(d, p); });
    const Plot xf = f.then("x", d.X.carrier, [&lay](const Vec& p) { return lay.x(p); });
    const Plot qf = f.then("q", group_space(g), [&lay](const Vec& p) { return lay.q_flat(p); });
    const Plot muf = f.then("μ", euclidean_space("𝔤*", g.dim()), [&lay](const Vec& p) { return lay.mu(p); });
    const DomainForm lhs = pullback(d.M.omega, f, opts.diff);
    const DomainForm rhs = pullback(d.N.omega, rf, opts.diff);

    const Vec x = lay.x(m);
    const Vec mu = lay.mu(m);
    const Vec mubar = d.X.moment(x);
    for (int t = 0; t < popts.tangent_pairs; ++t) {
      const Vec a = rng.normal_vector(f.domain_dim());
      const Vec b = rng.normal_vector(f.domain_dim());
      const double va = lhs(u, a, b);
      const double vb = rhs(u, a, b);
      acc.add(std::abs(va - vb), std::max(std::abs(va), std::abs(vb)),
              [&] { return Witness{u, {a, b, m}, 0.0, f.name()}; });

      const AlgebraElement z = maurer_cartan(g, qf, u, a, opts.diff);
      const AlgebraElement z2 = maurer_cartan(g, qf, u, b, opts.diff);
      const Vec dx = plot_derivative(xf, u, a, opts.diff);
      const Vec dx2 = plot_derivative(xf, u, b, opts.diff);
      const Vec dmu = plot_derivative(muf, u, a, opts.diff);
      const Vec dmu2 = plot_derivative(muf, u, b, opts.diff);
      const Vec dmubar = directional_derivative(d.X.moment, x, dx, opts.diff);
      const Vec dmubar2 = directional_derivative(d.X.moment, x, dx2, opts.diff);
      const Vec zx = infinitesimal_action(d.X, z, x, opts.diff);
      const Vec zx2 = infinitesimal_action(d.X, z2, x, opts.diff);
      const Vec br = bracket(z, z2).coords();
      const double omega_terms = d.X.omega(x, zx, dx2) - d.X.omega(x, zx2, dx) - d.X.omega(x, zx, zx2);
      const double bar_terms = dmubar.dot(z2.coords()) - dmubar2.dot(z.coords()) + mubar.dot(br);
      const double mu_terms = dmu.dot(z2.coords()) - dmu2.dot(z.coords()) + mu.dot(br);
      souriau_step = std::max(souriau_step, std::abs(omega_terms - bar_terms));
      level_step = std::max(level_step, std::abs(bar_terms - mu_terms));
    }
  }
  auto r = acc.finish(inst.name + ": F*ω_M = F*r*ω_N", "check_frobenius_pullback", opts.tol, opts.seed);
  r.anchor = "auxiliary-pullback";
  r.set_metric("souriau_step", souriau_step);
  r.set_metric("level_step", level_step);
  return r;
}

CheckReport check_prequantum_frobenius_pullback(const PrequantumFrobeniusInstance& inst,
                                                const CheckOptions& opts, const PullbackOptions& popts) {
  const auto& d = inst.data;
  const auto& lay = d.layout;
  const GroupId g = d.iota.target;
  const auto& plots = plot_catalog(inst.level_M, popts);
  Rng rng = Rng::stream(opts.seed, "prequantum_frobenius_pullback/" + inst.name);
  ResidualAccumulator acc;
  double moment_step = 0.0, level_step = 0.0;
  for (int s = 0; s < opts.samples; ++s) {
    const Plot f = plots[static_cast<std::size_t>(s) % plots.size()](rng);
    const Vec u = f.sample_domain(rng);
    const Vec m = f(u);
    require_on_level(inst.level_M, m, popts);

    const Plot rf = f.then("ř∘" + f.name(), d.N.carrier, [&d](const Vec& p) { return map_r(d, p); });
    const Plot qf = f.then("q", group_space(g), [&lay](const Vec& p) { return lay.q_flat(p); });
    const DomainForm lhs = pullback(d.M.varpi, f, opts.diff);
    const DomainForm rhs = pullback(d.N.varpi, rf, opts.diff);

    const Vec x = lay.x(m);
    const Vec mu = lay.mu(m);
    const Vec phi = moment_of(d.X, x);
    for (int t = 0; t < popts.tangent_pairs; ++t) {
      const Vec a = rng.normal_vector(f.domain_dim());
      const double va = lhs(u, a);
      const double vb = rhs(u, a);
      acc.add(std::abs(va - vb), std::max(std::abs(va), std::abs(vb)),
              [&] { return Witness{u, {a, m}, 0.0, f.name()}; });

      const AlgebraElement z = maurer_cartan(g, qf, u, a, opts.diff);
      const Vec zx = infinitesimal_action(d.X, z, x, opts.diff);
      moment_step = std::max(moment_step, std::abs(d.X.varpi(x, zx) - phi.dot(z.coords())));
      level_step = std::max(level_step, std::abs((phi - mu).dot(z.coords())));
    }
  }
  auto r = acc.finish(inst.name + ": F*ϖ_M̌ = F*ř*ϖ_Ň", "check_prequantum_frobenius_pullback", opts.tol,
                      opts.seed);
  r.anchor = "auxiliary-pullback-prequantum";
  r.set_metric("moment_step", moment_step);
  r.set_metric("level_step", level_step);
  return r;
}

CheckReport check_fd_scaling(const FrobeniusInstance& inst, const CheckOptions& opts, double step) {
  CheckOptions o = opts;
  o.tol = Tolerances::absolute(std::numeric_limits<double>::infinity(),
                               std::numeric_limits<double>::infinity());
  o.diff = {step, false, 1e-4};
  const double r1 = check_frobenius_pullback(inst, o).max_residual;
  o.diff.step = step / 2;
  const double r2 = check_frobenius_pullback(inst, o).max_residual;
  const double ratio = r2 > 0 ? r1 / r2 : std::numeric_limits<double>::infinity();

  CheckReport r;
  r.name = inst.name + ": residual scaling under step halving";
  r.op = "check_fd_scaling";
  r.anchor = "auxiliary-pullback";
  r.seed = opts.seed;
  r.samples = opts.samples;
  r.max_residual = r2;
  r.mean_residual = r2;
  r.tolerance = 3.0;
  r.fail_threshold = 3.0;
  r.set_metric("residual_step", r1);
  r.set_metric("residual_half_step", r2);
  r.set_metric("ratio", ratio);
  if (!std::isfinite(ratio) || r1 == 0.0)
    r.verdict = Verdict::Inconclusive;
  else
    r.verdict = ratio >= 3.0 ? Verdict::Pass : Verdict::Fail;
  return r;
}

CheckReport check_orbit_correspondence(const FrobeniusInstance& inst, const CheckOptions& opts) {
  const auto& d = inst.data;
  const GroupId g = d.iota.target;
  const GroupId h = d.iota.source;
  Rng rng = Rng::stream(opts.seed, "orbit_correspondence/" + inst.name);
  ResidualAccumulator acc;
  for (int s = 0; s < opts.samples; ++s) {
    const Vec m = inst.level_M.sample(rng);
    const GroupElement a = random_element(g, rng);
    const GroupElement b = random_element(h, rng);
    const Vec lhs = map_r(d, d.M.action(product_element(d.M.group, a, b), m));
    const Vec rhs = d.N.action(b, map_r(d, m));
    const double r1 = max_abs(lhs - rhs);

    const Vec n = inst.level_N.sample(rng);
    const GroupElement c = random_element(h, rng);
    const Vec lhs2 = map_r_prime(d, d.N.action(c, n));
    const Vec rhs2 = d.M.action(product_element(d.M.group, d.iota(c), c), map_r_prime(d, n));
    const double r2 = max_abs(lhs2 - rhs2);
    acc.add(std::max(r1, r2), std::max(max_abs(lhs), max_abs(lhs2)),
            [&] { return Witness{m, {n, to_ambient(a), to_ambient(b)}, 0.0, "orbit transport"}; });
  }
  auto r = acc.finish(inst.name + ": orbit correspondence", "check_orbit_correspondence", opts.tol, opts.seed);
  r.anchor = "orbit-correspondence";
  return r;
}

CheckReport check_single_orbit(const std::string& name, const PointSampler& sample,
                               const std::function<Mat(const Vec&)>& frame, const ActionFn& action,
                               const GroupId& group, int count, const CheckOptions& opts) {
  Rng rng = Rng::stream(opts.seed, "single_orbit/" + name);
  std::vector<Vec> pts;
  std::vector<Mat> frames;
  for (int i = 0; i < count; ++i) {
    pts.push_back(sample(rng));
    frames.push_back(frame(pts.back()));
  }
  ResidualAccumulator acc;
  for (int i = 0; i < count; ++i) {
    for (int j = i + 1; j < count; ++j) {
      const GroupElement gij(group, frames[static_cast<std::size_t>(j)] * frames[static_cast<std::size_t>(i)].transpose());
      const Vec moved = action(gij, pts[static_cast<std::size_t>(i)]);
      acc.add(max_abs(moved - pts[static_cast<std::size_t>(j)]), max_abs(moved), [&] {
        return Witness{pts[static_cast<std::size_t>(i)], {pts[static_cast<std::size_t>(j)], to_ambient(gij)}, 0.0,
                       "frame-solved group element"};
      });
    }
  }
  auto r = acc.finish(name + ": single orbit", "check_single_orbit", opts.tol, opts.seed);
  r.anchor = "single-orbit";
  r.set_metric("points", count);
  r.set_metric("orbits", acc.max() <= r.tolerance ? 1.0 : 0.0);
  return r;
}

bool KmsInstance::in_ann(const Vec& mu, double tol) const { return std::abs(mu[0] + alpha * mu[1]) <= tol; }

KmsInstance kms_instance(double alpha) {
  Mat ann(2, 1);
  ann << -alpha, 1.0;
  ann /= std::sqrt(1.0 + alpha * alpha);
  return {alpha, winding(alpha), GroupId::torus2(), ann};
}

KForm right_invariant_form(const GroupId& group, const Vec& mu) {
  const int k = group.matrix_size();
  return KForm(group_space(group), 1, [group, mu, k](const Vec& q, std::span<const Vec> v) {
    const Mat qi = element_from_ambient(group, q).inverse().matrix();
    Mat dq(k, k);
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j) dq(i, j) = v[0][i * k + j];
    return mu.dot(algebra_coords(group, dq * qi));
  });
}

std::function<double(const Vec&)> trig_polynomial(Rng& rng, int dim, int degree, double amplitude) {
  std::vector<Vec> w;
  std::vector<double> a, phase;
  for (int j = 1; j <= degree; ++j) {
    w.push_back(j * rng.normal_vector(dim));
    a.push_back(amplitude / degree * rng.uniform(-1.0, 1.0));
    phase.push_back(rng.uniform(0.0, 2 * std::numbers::pi));
  }
  return [w, a, phase](const Vec& u) {
    double s = 0.0;
    for (std::size_t j = 0; j < w.size(); ++j) s += a[j] * std::sin(w[j].dot(u) + phase[j]);
    return s;
  };
}

CheckReport check_kms(const KmsInstance& inst, const CheckOptions& opts, double moment_tolerance) {
  const GroupId g = inst.group;
  const PrequantumSpace t = cotangent_group_exact(inst.iota);
  const int n = g.ambient_dim();
  const int k = g.dim();
  const int r_ann = static_cast<int>(inst.ann_h.cols());
  Rng rng = Rng::stream(opts.seed, "kms/" + std::to_string(inst.alpha));
  ResidualAccumulator acc;
  double moment_res = 0.0, normalizer = 0.0;
  const Vec one_alpha = (Vec(2) << 1.0, inst.alpha).finished();
  for (int s = 0; s < opts.samples; ++s) {
    const GroupElement q0 = random_element(g, rng);
    std::vector<std::function<double(const Vec&)>> angle, coeff;
    for (int i = 0; i < k; ++i) angle.push_back(trig_polynomial(rng, 2, 3, 2.0));
    for (int i = 0; i < r_ann; ++i) coeff.push_back(trig_polynomial(rng, 2, 3, 2.0));
    const Vec c0 = rng.normal_vector(r_ann);
    auto q_of = [g, q0, angle, k](const Vec& u) {
      Vec z(k);
      for (int i = 0; i < k; ++i) z[i] = angle[static_cast<std::size_t>(i)](u);
      return multiply(exp(AlgebraElement(g, z)), q0);
    };
    auto mu_of = [ann = inst.ann_h, coeff, c0, r_ann](const Vec& u) {
      Vec c = c0;
      for (int i = 0; i < r_ann; ++i) c[i] += coeff[static_cast<std::size_t>(i)](u);
      return Vec(ann * c);
    };
    const Plot qplot = Plot::on_cube("Q", group_space(g), 2, 1.0, [q_of](const Vec& u) { return to_ambient(q_of(u)); });
    const Plot jplot = Plot::on_cube("Q×M", t.carrier, 2, 1.0, [q_of, mu_of, n, k](const Vec& u) {
      Vec x(n + k);
      x << to_ambient(q_of(u)), mu_of(u);
      return x;
    });
    const Vec u = qplot.sample_domain(rng);
    const Vec du = rng.normal_vector(2);
    const Vec mu = mu_of(u);

    // P*(A(u)) with A(u) frozen, through the torus logarithm of q(u + t du)q(u)⁻¹.
    const GroupElement qu_inv = q_of(u).inverse();
    auto log_right = [&q_of, &u, &du, &qu_inv](const Vec& t) {
      const Mat m = multiply(q_of(u + t[0] * du), qu_inv).matrix();
      return Vec((Vec(2) << std::atan2(m(1, 0), m(0, 0)), std::atan2(m(3, 2), m(2, 2))).finished());
    };
    const double liouv = mu.dot(directional_derivative(log_right, Vec::Zero(1), Vec::Ones(1), opts.diff));
    const double varpi = pullback(t.varpi, jplot, opts.diff)(u, du);
    acc.add(std::abs(liouv - varpi), std::max(std::abs(liouv), std::abs(varpi)),
            [&] { return Witness{u, {du, mu}, 0.0, "Liouville vs ϖ_{T*G}"}; });

    // Φ(F(q, μ)): value at e of ŷ*Liouv, with δ(exp(tZ)q)|₀ = Zq.
    const GroupElement q = q_of(u);
    Vec phi_f(k);
    for (int i = 0; i < k; ++i)
      phi_f[i] = mu.dot(algebra_coords(g, AlgebraElement::basis(g, i).matrix() * q.matrix() * q.inverse().matrix()));
    const Vec phi_j = t.moment(jplot(u)).head(k);
    moment_res = std::max({moment_res, max_abs(phi_f - mu), max_abs(phi_j - mu)});

    const GroupElement a = random_element(g, rng);
    normalizer = std::max(normalizer, std::abs(coadjoint(a, CoalgebraElement(g, mu)).coords().dot(one_alpha)));
  }
  auto r = acc.finish("T*T² reduced by the α-winding: Liouville identity", "check_kms", opts.tol, opts.seed);
  r.anchor = "liouville-pullback";
  r.set_metric("liouville_residual", acc.max());
  r.set_metric("moment_residual", moment_res);
  r.set_metric("normalizer_defect", normalizer);
  if (moment_res > moment_tolerance || normalizer > moment_tolerance) {
    r.notes.push_back("cotangent moment or normalizer defect above " + std::to_string(moment_tolerance));
    r.verdict = Verdict::Fail;
  }
  return r;
}

CheckReport check_dense_orbit(const KmsInstance& inst, const CheckOptions& opts, double eps, int steps) {
  const PrequantumSpace t = cotangent_group_exact(inst.iota);
  const GroupId g = inst.group;
  const double norm = std::sqrt(1.0 + inst.alpha * inst.alpha);
  Rng rng = Rng::stream(opts.seed, "dense_orbit/" + std::to_string(inst.alpha));
  ResidualAccumulator acc;
  auto angles = [](const GroupElement& q) {
    const Mat& m = q.matrix();
    return Eigen::Vector2d(std::atan2(m(1, 0), m(0, 0)), std::atan2(m(3, 2), m(2, 2)));
  };
  auto wrap = [](double a) { return std::remainder(a, 2 * std::numbers::pi); };
  for (int s = 0; s < opts.samples; ++s) {
    const GroupElement q1 = random_element(g, rng);
    const GroupElement q2 = random_element(g, rng);
    const Vec mu = inst.ann_h * rng.normal_vector(static_cast<int>(inst.ann_h.cols()));
    Vec m1(g.ambient_dim() + g.dim()), m2(g.ambient_dim() + g.dim());
    m1 << to_ambient(q1), mu;
    m2 << to_ambient(q2), mu;
    // q₁ι(t)⁻¹ = q₂ ⇔ t(1, α)/|(1, α)| ≡ θ(q₁) − θ(q₂)
    const Eigen::Vector2d phi = angles(q1) - angles(q2);
    double best = std::numeric_limits<double>::infinity();
    double best_t = 0.0;
    for (int j = 0; j < steps; ++j) {
      const double s1 = phi[0] + 2 * std::numbers::pi * j;
      const double miss = std::abs(wrap(inst.alpha * s1 - phi[1]));
      if (miss < best) {
        best = miss;
        best_t = s1 * norm;
      }
    }
    const GroupElement h = exp(AlgebraElement(inst.iota.source, Vec::Constant(1, best_t)));
    const Vec moved = t.action(product_element(t.group, GroupElement::identity(g), h), m1);
    const double dist = std::max(group_distance(element_from_ambient(g, moved.head(g.ambient_dim())), q2),
                                 max_abs(moved.tail(g.dim()) - mu));
    acc.add(dist, 1.0, [&] { return Witness{m1, {m2}, 0.0, "closest winding translate"}; });
  }
  auto r = acc.finish("T*T² level: same μ, q₂q₁⁻¹ in the closure of H", "check_dense_orbit",
                      Tolerances::absolute(eps, eps), opts.seed);
  r.anchor = "dense-orbit";
  r.verdict = acc.max() <= eps ? Verdict::Approx : Verdict::Fail;
  r.set_metric("epsilon", eps);
  r.set_metric("steps", steps);
  r.notes.push_back("orbit equality for a dense winding is only tested up to epsilon");
  return r;
}

}  // namespace symred
