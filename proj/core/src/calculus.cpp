#include "symred/calculus.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numeric>

#include "symred/errors.hpp"

namespace symred {

// ---------------------------------------------------------------------------
// Linear algebra helpers
// ---------------------------------------------------------------------------

Mat kernel_basis(const Mat& a, double rel_cutoff) {
  const Eigen::Index n = a.cols();
  if (a.rows() == 0 || n == 0) return Mat::Identity(n, n);
  Eigen::JacobiSVD<Mat> svd(a, Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  int rank = 0;
  const double smax = s.size() ? s[0] : 0.0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (smax > 0 && s[i] > rel_cutoff * smax) ++rank;
  return svd.matrixV().rightCols(n - rank);
}

int numerical_rank(const Mat& a, double rel_cutoff) {
  if (a.rows() == 0 || a.cols() == 0) return 0;
  Eigen::JacobiSVD<Mat> svd(a);
  const auto& s = svd.singularValues();
  const double smax = s[0];
  int rank = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (smax > 0 && s[i] > rel_cutoff * smax) ++rank;
  return rank;
}

// ---------------------------------------------------------------------------
// EmbeddedSpace
// ---------------------------------------------------------------------------

EmbeddedSpace::EmbeddedSpace(std::string name, int ambient_dim, ConstraintFn constraint,
                             TangentFn tangent)
    : name_(std::move(name)),
      ambient_dim_(ambient_dim),
      constraint_(std::move(constraint)),
      tangent_(std::move(tangent)) {}

Vec EmbeddedSpace::residual(const Vec& x) const {
  if (x.size() != ambient_dim_)
    throw SpaceMismatch(name_ + ": point has dimension " + std::to_string(x.size()) +
                        ", expected " + std::to_string(ambient_dim_));
  if (!constraint_) return Vec(0);
  return constraint_(x);
}

double EmbeddedSpace::residual_norm(const Vec& x) const {
  const Vec r = residual(x);
  return r.size() ? r.cwiseAbs().maxCoeff() : 0.0;
}

Mat EmbeddedSpace::tangent_basis(const Vec& x) const {
  if (tangent_) return tangent_(x);
  if (!constraint_) return Mat::Identity(ambient_dim_, ambient_dim_);
  const Vec r0 = constraint_(x);
  Mat jac(r0.size(), ambient_dim_);
  for (int i = 0; i < ambient_dim_; ++i)
    jac.col(i) = directional_derivative(constraint_, x, Vec::Unit(ambient_dim_, i));
  return kernel_basis(jac, 1e-8);
}

Vec EmbeddedSpace::project_to_tangent(const Vec& x, const Vec& v) const {
  const Mat t = tangent_basis(x);
  return t * (t.transpose() * v);
}

double EmbeddedSpace::tangent_defect(const Vec& x, const Vec& v) const {
  return (v - project_to_tangent(x, v)).norm();
}

SpacePtr euclidean_space(std::string name, int n) {
  return std::make_shared<EmbeddedSpace>(std::move(name), n);
}

SpacePtr product_space(std::string name, const std::vector<SpacePtr>& factors) {
  std::vector<int> offsets;
  int total = 0;
  for (const auto& f : factors) {
    offsets.push_back(total);
    total += f->ambient_dim();
  }
  auto constraint = [factors, offsets](const Vec& x) {
    std::vector<Vec> parts;
    Eigen::Index n = 0;
    for (std::size_t i = 0; i < factors.size(); ++i) {
      parts.push_back(factors[i]->residual(x.segment(offsets[i], factors[i]->ambient_dim())));
      n += parts.back().size();
    }
    Vec r(n);
    Eigen::Index k = 0;
    for (const auto& p : parts) {
      r.segment(k, p.size()) = p;
      k += p.size();
    }
    return r;
  };
  auto tangent = [factors, offsets, total](const Vec& x) {
    std::vector<Mat> blocks;
    Eigen::Index cols = 0;
    for (std::size_t i = 0; i < factors.size(); ++i) {
      blocks.push_back(factors[i]->tangent_basis(x.segment(offsets[i], factors[i]->ambient_dim())));
      cols += blocks.back().cols();
    }
    Mat t = Mat::Zero(total, cols);
    Eigen::Index c = 0;
    for (std::size_t i = 0; i < factors.size(); ++i) {
      t.block(offsets[i], c, blocks[i].rows(), blocks[i].cols()) = blocks[i];
      c += blocks[i].cols();
    }
    return t;
  };
  return std::make_shared<EmbeddedSpace>(std::move(name), total, constraint, tangent);
}

// ---------------------------------------------------------------------------
// Plots
// ---------------------------------------------------------------------------

Plot::Plot(std::string name, SpacePtr target, Vec lo, Vec hi, EvalFn eval)
    : name_(std::move(name)),
      target_(std::move(target)),
      lo_(std::move(lo)),
      hi_(std::move(hi)),
      eval_(std::move(eval)) {
  if (lo_.size() != hi_.size()) throw SpaceMismatch("plot box bounds differ in dimension");
  for (Eigen::Index i = 0; i < lo_.size(); ++i)
    if (!(lo_[i] < hi_[i])) throw SpaceMismatch("plot box is empty");
}

Plot Plot::on_cube(std::string name, SpacePtr target, int dim, double half_width, EvalFn eval) {
  return Plot(std::move(name), std::move(target), Vec::Constant(dim, -half_width),
              Vec::Constant(dim, half_width), std::move(eval));
}

Plot Plot::constant(std::string name, SpacePtr target, int dim, Vec value) {
  return on_cube(std::move(name), std::move(target), dim, 1.0,
                 [value = std::move(value)](const Vec&) { return value; });
}

Plot Plot::then(std::string name, SpacePtr target, std::function<Vec(const Vec&)> map) const {
  auto inner = eval_;
  return Plot(std::move(name), std::move(target), lo_, hi_,
              [inner, map = std::move(map)](const Vec& u) { return map(inner(u)); });
}

Plot Plot::precompose_affine(const Mat& a, const Vec& b, Vec lo, Vec hi) const {
  auto inner = eval_;
  return Plot(name_ + "∘affine", target_, std::move(lo), std::move(hi),
              [inner, a, b](const Vec& u) { return inner(a * u + b); });
}

double Plot::margin(const Vec& u) const {
  double m = std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < u.size(); ++i) m = std::min({m, u[i] - lo_[i], hi_[i] - u[i]});
  return m;
}

Vec Plot::sample_domain(Rng& rng, double margin_fraction) const {
  const Vec w = hi_ - lo_;
  return rng.uniform_vector(lo_ + margin_fraction * w, hi_ - margin_fraction * w);
}

// ---------------------------------------------------------------------------
// Differentiation
// ---------------------------------------------------------------------------

Vec directional_derivative(const std::function<Vec(const Vec&)>& f, const Vec& x, const Vec& v,
                           const DiffOptions& opts) {
  const double n = v.norm();
  if (n == 0.0) return Vec::Zero(f(x).size());
  const Vec d = v / n;
  const double h = opts.step;
  auto central = [&](double s) -> Vec { return (f(x + s * d) - f(x - s * d)) / (2.0 * s); };
  const Vec d1 = central(h);
  if (!opts.richardson) return n * d1;
  const Vec d2 = central(0.5 * h);
  const Vec r = (4.0 * d2 - d1) / 3.0;
  if (r.size() > 0) {
    const double disagreement = (d1 - d2).cwiseAbs().maxCoeff();
    const double scale = std::max(1.0, r.cwiseAbs().maxCoeff());
    if (!(disagreement <= opts.max_disagreement * scale))
      throw DerivativeFailure("Richardson disagreement " + std::to_string(disagreement));
  }
  return n * r;
}

double directional_derivative_scalar(const std::function<double(const Vec&)>& f, const Vec& x,
                                     const Vec& v, const DiffOptions& opts) {
  auto g = [&f](const Vec& y) { return Vec::Constant(1, f(y)); };
  return directional_derivative(g, x, v, opts)[0];
}

Vec plot_derivative(const Plot& plot, const Vec& u, const Vec& du, const DiffOptions& opts) {
  if (u.size() != plot.domain_dim() || du.size() != plot.domain_dim())
    throw SpaceMismatch("plot_derivative: domain dimension mismatch on " + plot.name());
  if (plot.margin(u) < 2.0 * opts.step)
    throw BoundaryViolation("plot_derivative: point too close to the boundary of " + plot.name());
  return directional_derivative([&plot](const Vec& w) { return plot(w); }, u, du, opts);
}

Mat plot_jacobian(const Plot& plot, const Vec& u, const DiffOptions& opts) {
  const int n = plot.domain_dim();
  const Vec x0 = plot(u);
  Mat j(x0.size(), n);
  for (int i = 0; i < n; ++i) j.col(i) = plot_derivative(plot, u, Vec::Unit(n, i), opts);
  return j;
}

Vec higher_derivative(const Plot& plot, const Vec& u, const Vec& du, int order, double step) {
  if (plot.margin(u) < 2.0 * step * du.norm())
    throw BoundaryViolation("higher_derivative: stencil leaves the domain of " + plot.name());
  auto f = [&](double s) { return plot(u + s * du); };
  const double h = step;
  switch (order) {
    case 1: return (f(h) - f(-h)) / (2 * h);
    case 2: return (f(h) - 2.0 * f(0) + f(-h)) / (h * h);
    case 3: return (f(2 * h) - 2.0 * f(h) + 2.0 * f(-h) - f(-2 * h)) / (2 * h * h * h);
    default: throw DerivativeFailure("higher_derivative supports orders 1..3");
  }
}

// ---------------------------------------------------------------------------
// Forms
// ---------------------------------------------------------------------------

double antisymmetrize(const std::function<double(std::span<const Vec>)>& raw,
                      std::span<const Vec> v) {
  const int k = static_cast<int>(v.size());
  if (k <= 1) return raw(v);
  if (k == 2) {
    const std::array<Vec, 2> sw{v[1], v[0]};
    return 0.5 * (raw(v) - raw(sw));
  }
  std::vector<int> perm(k);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<double> even, odd;
  std::vector<Vec> args(k);
  double factorial = 1.0;
  for (int i = 2; i <= k; ++i) factorial *= i;
  do {
    int inversions = 0;
    for (int i = 0; i < k; ++i)
      for (int j = i + 1; j < k; ++j)
        if (perm[i] > perm[j]) ++inversions;
    for (int i = 0; i < k; ++i) args[i] = v[perm[i]];
    (inversions % 2 == 0 ? even : odd).push_back(raw(args));
  } while (std::next_permutation(perm.begin(), perm.end()));
  std::sort(even.begin(), even.end());
  std::sort(odd.begin(), odd.end());
  const double se = std::accumulate(even.begin(), even.end(), 0.0);
  const double so = std::accumulate(odd.begin(), odd.end(), 0.0);
  return (se - so) / factorial;
}

KForm::KForm(SpacePtr space, int arity, EvalFn raw, std::shared_ptr<const KForm> exact_d)
    : space_(std::move(space)), arity_(arity), exact_d_(std::move(exact_d)) {
  if (arity < 0 || arity > 3) throw ArityMismatch("forms of arity 0..3 are supported");
  if (arity <= 1) {
    eval_ = std::move(raw);
  } else {
    eval_ = [raw = std::move(raw)](const Vec& x, std::span<const Vec> v) {
      return antisymmetrize([&](std::span<const Vec> w) { return raw(x, w); }, v);
    };
  }
}

KForm::KForm(Trusted, SpacePtr space, int arity, EvalFn rule, std::shared_ptr<const KForm> exact_d)
    : space_(std::move(space)), arity_(arity), eval_(std::move(rule)), exact_d_(std::move(exact_d)) {}

KForm KForm::from_alternating(SpacePtr space, int arity, EvalFn rule,
                              std::shared_ptr<const KForm> exact_d) {
  return KForm(Trusted{}, std::move(space), arity, std::move(rule), std::move(exact_d));
}

KForm KForm::zero(SpacePtr space, int arity) {
  auto rule = [](const Vec&, std::span<const Vec>) { return 0.0; };
  std::shared_ptr<const KForm> d;
  if (arity < 3) d = std::make_shared<const KForm>(from_alternating(space, arity + 1, rule));
  return from_alternating(std::move(space), arity, rule, d);
}

double KForm::operator()(const Vec& x, std::span<const Vec> v) const {
  if (static_cast<int>(v.size()) != arity_)
    throw ArityMismatch("form of arity " + std::to_string(arity_) + " given " +
                        std::to_string(v.size()) + " vectors");
  return eval_(x, v);
}

double KForm::operator()(const Vec& x) const { return (*this)(x, std::span<const Vec>{}); }

double KForm::operator()(const Vec& x, const Vec& v) const {
  return (*this)(x, std::span<const Vec>(&v, 1));
}

double KForm::operator()(const Vec& x, const Vec& v, const Vec& w) const {
  const std::array<Vec, 2> args{v, w};
  return (*this)(x, args);
}

KForm KForm::scaled(double c) const {
  std::shared_ptr<const KForm> d;
  if (exact_d_) d = std::make_shared<const KForm>(exact_d_->scaled(c));
  auto inner = eval_;
  return from_alternating(space_, arity_,
                          [inner, c](const Vec& x, std::span<const Vec> v) { return c * inner(x, v); },
                          d);
}

KForm KForm::with_exact_d(const KForm& d) const {
  if (d.arity() != arity_ + 1) throw ArityMismatch("exact_d must have arity k+1");
  return from_alternating(space_, arity_, eval_, std::make_shared<const KForm>(d));
}

KForm KForm::on_space(SpacePtr space) const {
  if (space->ambient_dim() != space_->ambient_dim())
    throw SpaceMismatch("on_space: ambient dimensions differ");
  std::shared_ptr<const KForm> d;
  if (exact_d_) d = std::make_shared<const KForm>(exact_d_->on_space(space));
  return from_alternating(std::move(space), arity_, eval_, d);
}

KForm sum_of_terms(SpacePtr product, int arity, const std::vector<FormTerm>& terms) {
  bool all_d = true;
  for (const auto& t : terms) {
    if (t.form.arity() != arity) throw ArityMismatch("sum_of_terms: arity mismatch");
    if (t.offset + t.form.space()->ambient_dim() > product->ambient_dim())
      throw SpaceMismatch("sum_of_terms: term exceeds product dimension");
    if (!t.form.exact_d()) all_d = false;
  }
  std::shared_ptr<const KForm> d;
  if (all_d && arity < 3) {
    std::vector<FormTerm> dterms;
    for (const auto& t : terms) dterms.push_back({*t.form.exact_d(), t.offset, t.coeff});
    d = std::make_shared<const KForm>(sum_of_terms(product, arity + 1, dterms));
  }
  auto rule = [terms](const Vec& x, std::span<const Vec> v) {
    double total = 0.0;
    std::vector<Vec> slices(v.size());
    for (const auto& t : terms) {
      const int n = t.form.space()->ambient_dim();
      for (std::size_t i = 0; i < v.size(); ++i) slices[i] = v[i].segment(t.offset, n);
      total += t.coeff * t.form(x.segment(t.offset, n), slices);
    }
    return total;
  };
  return KForm::from_alternating(std::move(product), arity, rule, d);
}

// ---------------------------------------------------------------------------
// Domain forms
// ---------------------------------------------------------------------------

DomainForm::DomainForm(int domain_dim, int arity, Vec lo, Vec hi, EvalFn eval)
    : arity_(arity), lo_(std::move(lo)), hi_(std::move(hi)), eval_(std::move(eval)) {
  if (lo_.size() != domain_dim) throw SpaceMismatch("DomainForm: box dimension mismatch");
}

DomainForm DomainForm::constant(int domain_dim, int arity, Vec lo, Vec hi, EvalFn raw) {
  auto rule = [raw = std::move(raw)](const Vec& u, std::span<const Vec> v) {
    return antisymmetrize([&](std::span<const Vec> w) { return raw(u, w); }, v);
  };
  return DomainForm(domain_dim, arity, std::move(lo), std::move(hi), rule);
}

double DomainForm::operator()(const Vec& u, const Vec& a) const {
  return eval_(u, std::span<const Vec>(&a, 1));
}

double DomainForm::operator()(const Vec& u, const Vec& a, const Vec& b) const {
  const std::array<Vec, 2> args{a, b};
  return eval_(u, args);
}

DomainForm pullback(const KForm& form, const Plot& plot, const DiffOptions& opts) {
  if (plot.target()->ambient_dim() != form.space()->ambient_dim())
    throw SpaceMismatch("pullback: plot " + plot.name() + " does not land in " +
                        form.space()->name());
  auto rule = [form, plot, opts](const Vec& u, std::span<const Vec> v) {
    if (static_cast<int>(v.size()) != form.arity())
      throw ArityMismatch("pullback evaluated with the wrong number of vectors");
    std::vector<Vec> pushed;
    pushed.reserve(v.size());
    for (const auto& dv : v) pushed.push_back(plot_derivative(plot, u, dv, opts));
    return form(plot(u), pushed);
  };
  return DomainForm(plot.domain_dim(), form.arity(), plot.lo(), plot.hi(), rule);
}

DomainForm domain_exterior_derivative(const DomainForm& df, const DiffOptions& opts) {
  const int k = df.arity();
  auto rule = [df, opts, k](const Vec& u, std::span<const Vec> v) {
    if (static_cast<int>(v.size()) != k + 1)
      throw ArityMismatch("exterior derivative evaluated with the wrong number of vectors");
    double m = std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < u.size(); ++i)
      m = std::min({m, u[i] - df.lo()[i], df.hi()[i] - u[i]});
    if (m < 2.0 * opts.step) throw BoundaryViolation("exterior derivative near domain boundary");
    double total = 0.0;
    std::vector<Vec> rest(k);
    for (int i = 0; i <= k; ++i) {
      int c = 0;
      for (int j = 0; j <= k; ++j)
        if (j != i) rest[c++] = v[j];
      auto coeff = [&df, &rest](const Vec& w) { return df(w, rest); };
      const double term = directional_derivative_scalar(coeff, u, v[i], opts);
      total += (i % 2 == 0 ? term : -term);
    }
    return total;
  };
  return DomainForm(df.domain_dim(), k + 1, df.lo(), df.hi(), rule);
}

CheckReport forms_equal_on_samples(const DomainForm& f1, const DomainForm& f2,
                                   const SampleSpec& spec) {
  if (f1.domain_dim() != f2.domain_dim() || f1.arity() != f2.arity())
    throw ArityMismatch("forms_equal_on_samples: forms differ in domain or arity");
  Rng rng = Rng::stream(spec.seed, spec.label);
  ResidualAccumulator acc;
  const Vec w = f1.hi() - f1.lo();
  for (int s = 0; s < spec.samples; ++s) {
    const Vec u = rng.uniform_vector(f1.lo() + spec.margin_fraction * w,
                                     f1.hi() - spec.margin_fraction * w);
    std::vector<Vec> vs;
    for (int i = 0; i < f1.arity(); ++i) vs.push_back(rng.normal_vector(f1.domain_dim()));
    const double a = f1(u, vs);
    const double b = f2(u, vs);
    acc.add(std::abs(a - b), std::max(std::abs(a), std::abs(b)),
            [&] { return Witness{u, vs, 0.0, {}}; });
  }
  return acc.finish(spec.label, "forms_equal_on_samples", spec.tol, spec.seed);
}

}  // namespace symred
