#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "symred/report.hpp"
#include "symred/rng.hpp"
#include "symred/types.hpp"

namespace symred {

/// Central differences; one Richardson level unless `richardson` is off.
struct DiffOptions {
  double step = 1e-5;
  bool richardson = true;
  double max_disagreement = 1e-4;  // relative to max(1, |derivative|)
};

/// Outer step used when differentiating coefficients that are themselves
/// finite differences.
inline constexpr double kOuterStep = 1e-3;

// ---------------------------------------------------------------------------
// Embedded spaces
// ---------------------------------------------------------------------------

/// Submanifold of R^n given by a residual map. The tangent space is the
/// kernel of the residual Jacobian unless an explicit tangent rule is given.
class EmbeddedSpace {
 public:
  using ConstraintFn = std::function<Vec(const Vec&)>;
  using TangentFn = std::function<Mat(const Vec&)>;

  EmbeddedSpace(std::string name, int ambient_dim, ConstraintFn constraint = {},
                TangentFn tangent = {});

  const std::string& name() const { return name_; }
  int ambient_dim() const { return ambient_dim_; }
  bool has_constraint() const { return static_cast<bool>(constraint_); }

  Vec residual(const Vec& x) const;
  double residual_norm(const Vec& x) const;

  /// Orthonormal basis (columns) of the tangent space at x.
  Mat tangent_basis(const Vec& x) const;
  Vec project_to_tangent(const Vec& x, const Vec& v) const;
  double tangent_defect(const Vec& x, const Vec& v) const;

 private:
  std::string name_;
  int ambient_dim_;
  ConstraintFn constraint_;
  TangentFn tangent_;
};

using SpacePtr = std::shared_ptr<const EmbeddedSpace>;

SpacePtr euclidean_space(std::string name, int n);

/// Cartesian product; coordinates are concatenated in factor order.
SpacePtr product_space(std::string name, const std::vector<SpacePtr>& factors);

/// Orthonormal basis of ker(A) using a relative singular-value cutoff.
Mat kernel_basis(const Mat& a, double rel_cutoff = 1e-8);

/// Numerical rank with a relative cutoff.
int numerical_rank(const Mat& a, double rel_cutoff = 1e-8);

// ---------------------------------------------------------------------------
// Plots
// ---------------------------------------------------------------------------

class Plot {
 public:
  using EvalFn = std::function<Vec(const Vec&)>;

  Plot(std::string name, SpacePtr target, Vec lo, Vec hi, EvalFn eval);

  /// Plot on the cube [-half_width, half_width]^dim.
  static Plot on_cube(std::string name, SpacePtr target, int dim, double half_width, EvalFn eval);
  static Plot constant(std::string name, SpacePtr target, int dim, Vec value);

  const std::string& name() const { return name_; }
  const SpacePtr& target() const { return target_; }
  int domain_dim() const { return static_cast<int>(lo_.size()); }
  const Vec& lo() const { return lo_; }
  const Vec& hi() const { return hi_; }

  Vec operator()(const Vec& u) const { return eval_(u); }

  /// u ↦ map(plot(u)), landing in `target`.
  Plot then(std::string name, SpacePtr target, std::function<Vec(const Vec&)> map) const;

  /// u ↦ plot(A u + b) on the box [lo, hi].
  Plot precompose_affine(const Mat& a, const Vec& b, Vec lo, Vec hi) const;

  /// Distance from u to the box boundary (negative outside).
  double margin(const Vec& u) const;

  /// Uniform sample with the given relative margin kept free on each side.
  Vec sample_domain(Rng& rng, double margin_fraction = 0.1) const;

 private:
  std::string name_;
  SpacePtr target_;
  Vec lo_;
  Vec hi_;
  EvalFn eval_;
};

/// Directional derivative of f at x along v (v need not be unit).
Vec directional_derivative(const std::function<Vec(const Vec&)>& f, const Vec& x, const Vec& v,
                           const DiffOptions& opts = {});

double directional_derivative_scalar(const std::function<double(const Vec&)>& f, const Vec& x,
                                     const Vec& v, const DiffOptions& opts = {});

Vec plot_derivative(const Plot& plot, const Vec& u, const Vec& du, const DiffOptions& opts = {});

/// Columns are plot_derivative along the coordinate directions.
Mat plot_jacobian(const Plot& plot, const Vec& u, const DiffOptions& opts = {});

/// Derivative of order 1..3 along du by a fixed central stencil.
Vec higher_derivative(const Plot& plot, const Vec& u, const Vec& du, int order, double step);

// ---------------------------------------------------------------------------
// Forms
// ---------------------------------------------------------------------------

/// Alternating k-linear rule on ambient tangent vectors of a carrier.
///
/// `exact_d`, when present, agrees with the exterior derivative after pullback
/// by any plot into the carrier.
class KForm {
 public:
  using EvalFn = std::function<double(const Vec& x, std::span<const Vec> v)>;

  /// The raw rule is antisymmetrized, so transpositions flip the sign exactly.
  KForm(SpacePtr space, int arity, EvalFn raw, std::shared_ptr<const KForm> exact_d = nullptr);

  /// Trusts `rule` to be exactly alternating already.
  static KForm from_alternating(SpacePtr space, int arity, EvalFn rule,
                                std::shared_ptr<const KForm> exact_d = nullptr);
  static KForm zero(SpacePtr space, int arity);

  const SpacePtr& space() const { return space_; }
  int arity() const { return arity_; }
  const KForm* exact_d() const { return exact_d_.get(); }
  std::shared_ptr<const KForm> exact_d_ptr() const { return exact_d_; }

  double operator()(const Vec& x, std::span<const Vec> v) const;
  double operator()(const Vec& x) const;
  double operator()(const Vec& x, const Vec& v) const;
  double operator()(const Vec& x, const Vec& v, const Vec& w) const;

  KForm scaled(double c) const;
  KForm with_exact_d(const KForm& d) const;
  /// Same rule, viewed on another carrier with identical ambient coordinates.
  KForm on_space(SpacePtr space) const;

 private:
  struct Trusted {};
  KForm(Trusted, SpacePtr space, int arity, EvalFn rule, std::shared_ptr<const KForm> exact_d);

  SpacePtr space_;
  int arity_;
  EvalFn eval_;
  std::shared_ptr<const KForm> exact_d_;
};

/// A summand of a form on a product: coeff * form applied to the slice
/// [offset, offset + form.space()->ambient_dim()).
struct FormTerm {
  KForm form;
  int offset = 0;
  double coeff = 1.0;
};

/// Sum of factor forms on a product carrier. exact_d is the sum of the factor
/// exact_d's when every term has one.
KForm sum_of_terms(SpacePtr product, int arity, const std::vector<FormTerm>& terms);

/// Alternating form on an open box of R^n.
class DomainForm {
 public:
  using EvalFn = std::function<double(const Vec& u, std::span<const Vec> v)>;

  DomainForm(int domain_dim, int arity, Vec lo, Vec hi, EvalFn eval);

  /// Constant-coefficient form from a raw k-linear rule (antisymmetrized).
  static DomainForm constant(int domain_dim, int arity, Vec lo, Vec hi, EvalFn raw);

  int domain_dim() const { return static_cast<int>(lo_.size()); }
  int arity() const { return arity_; }
  const Vec& lo() const { return lo_; }
  const Vec& hi() const { return hi_; }

  double operator()(const Vec& u, std::span<const Vec> v) const { return eval_(u, v); }
  double operator()(const Vec& u, const Vec& a) const;
  double operator()(const Vec& u, const Vec& a, const Vec& b) const;

 private:
  int arity_;
  Vec lo_;
  Vec hi_;
  EvalFn eval_;
};

DomainForm pullback(const KForm& form, const Plot& plot, const DiffOptions& opts = {});

/// Coordinate exterior derivative by central differences of the coefficients.
DomainForm domain_exterior_derivative(const DomainForm& df,
                                      const DiffOptions& opts = {kOuterStep, true, 1e-4});

struct SampleSpec {
  std::uint64_t seed = 42;
  std::string label = "samples";
  int samples = 200;
  double margin_fraction = 0.1;
  Tolerances tol{};
};

CheckReport forms_equal_on_samples(const DomainForm& f1, const DomainForm& f2,
                                   const SampleSpec& spec);

/// Alternating sum over permutations, ordered so that a transposition of the
/// inputs negates the result bit for bit.
double antisymmetrize(const std::function<double(std::span<const Vec>)>& raw,
                      std::span<const Vec> v);

}  // namespace symred
