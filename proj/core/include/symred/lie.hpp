#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "symred/calculus.hpp"
#include "symred/types.hpp"

namespace symred {

/// Catalog of embedded matrix groups. U1 and torus factors are realified as
/// 2×2 rotation blocks; `Real` is the additive line, needed as the abstract
/// group behind a dense winding.
enum class GroupKind { Trivial, Real, U1, SO2, SO3, Torus2, Product };

inline constexpr double kGroupTolerance = 1e-10;

class GroupId {
 public:
  static GroupId trivial();
  static GroupId real_line();
  static GroupId u1();
  static GroupId so2();
  static GroupId so3();
  static GroupId torus2();
  /// Direct product; nesting depth is limited to 2.
  static GroupId product(const GroupId& a, const GroupId& b);

  GroupKind kind() const;
  const std::string& name() const;
  int dim() const;
  int matrix_size() const;
  int ambient_dim() const { return matrix_size() * matrix_size(); }
  int depth() const;
  bool is_abelian() const;
  const std::vector<GroupId>& factors() const;

  /// Algebra basis as matrices.
  const std::vector<Mat>& basis() const;
  const Mat& gram_inverse() const;
  /// Block offsets of the factors inside the product matrix.
  int factor_block_offset(int i) const;
  /// Offset of factor i in algebra coordinates.
  int factor_coord_offset(int i) const;

  bool operator==(const GroupId& other) const;
  bool operator!=(const GroupId& other) const { return !(*this == other); }

  struct Data;

 private:
  explicit GroupId(std::shared_ptr<const Data> d) : d_(std::move(d)) {}
  std::shared_ptr<const Data> d_;
};

class GroupElement {
 public:
  GroupElement(GroupId group, Mat matrix);
  static GroupElement identity(const GroupId& group);

  const GroupId& group() const { return group_; }
  const Mat& matrix() const { return matrix_; }
  GroupElement inverse() const;
  /// Max violation of the defining relations.
  double defect() const;

 private:
  GroupId group_;
  Mat matrix_;
};

class AlgebraElement {
 public:
  AlgebraElement(GroupId group, Vec coords);
  static AlgebraElement zero(const GroupId& group);
  static AlgebraElement basis(const GroupId& group, int k);

  const GroupId& group() const { return group_; }
  const Vec& coords() const { return coords_; }
  Mat matrix() const;

 private:
  GroupId group_;
  Vec coords_;
};

class CoalgebraElement {
 public:
  CoalgebraElement(GroupId group, Vec coords);
  static CoalgebraElement zero(const GroupId& group);

  const GroupId& group() const { return group_; }
  const Vec& coords() const { return coords_; }
  double pair(const AlgebraElement& z) const;

 private:
  GroupId group_;
  Vec coords_;
};

GroupElement multiply(const GroupElement& a, const GroupElement& b);
GroupElement exp(const AlgebraElement& z);
AlgebraElement bracket(const AlgebraElement& z, const AlgebraElement& w);
AlgebraElement adjoint(const GroupElement& g, const AlgebraElement& z);
CoalgebraElement coadjoint(const GroupElement& g, const CoalgebraElement& mu);

/// Coordinates of a matrix in the algebra basis (least squares).
Vec algebra_coords(const GroupId& group, const Mat& m);
/// Residual of m against its algebra projection.
double algebra_defect(const GroupId& group, const Mat& m);

/// Matrix of Ad_g in algebra coordinates.
Mat adjoint_matrix(const GroupElement& g);

/// Coordinates of (DQ(u)δu)·Q(u)⁻¹ for a plot Q into the group carrier.
AlgebraElement maurer_cartan(const GroupId& group, const Plot& q, const Vec& u, const Vec& du,
                             const DiffOptions& opts = {});
/// Left version Q(u)⁻¹·(DQ(u)δu).
AlgebraElement left_maurer_cartan(const GroupId& group, const Plot& q, const Vec& u,
                                  const Vec& du, const DiffOptions& opts = {});

/// Row-major flattening used as the ambient embedding of a group.
Vec to_ambient(const GroupElement& g);
GroupElement element_from_ambient(const GroupId& group, const Vec& x);
/// Equations cutting the group out of its ambient space (open conditions such
/// as det = 1 are checked by `defect`).
Vec group_constraints(const GroupId& group, const Mat& m);
SpacePtr group_space(const GroupId& group);

/// Block-diagonal element of a product group.
GroupElement product_element(const GroupId& product, const GroupElement& a, const GroupElement& b);
GroupElement factor(const GroupElement& g, int i);

/// exp of a Gaussian algebra element with the given standard deviation.
GroupElement random_element(const GroupId& group, Rng& rng, double sigma = 1.0);

/// Nearest group element by SVD polar projection (rotation factors only).
GroupElement reorthonormalize(const GroupElement& g);

/// Scaling-and-squaring Taylor exponential of an arbitrary square matrix.
Mat matrix_exp_series(const Mat& a);

/// Geodesic-type distance: rotation angle of a⁻¹b for SO2/U1/SO3, Frobenius
/// norm of the difference otherwise.
double group_distance(const GroupElement& a, const GroupElement& b);

/// Lie group homomorphism source → target with its differential.
struct GroupHom {
  GroupId source;
  GroupId target;
  std::function<GroupElement(const GroupElement&)> map;
  Mat algebra_map;  // target.dim() × source.dim()

  GroupElement operator()(const GroupElement& h) const { return map(h); }
  AlgebraElement push(const AlgebraElement& z) const;
  /// Restriction of target covectors to the source algebra: algebra_mapᵀ μ.
  CoalgebraElement restrict(const CoalgebraElement& mu) const;
};

GroupHom identity_hom(const GroupId& g);
/// Rotations about e₃.
GroupHom so2_into_so3();
/// t ↦ exp(t (1, α)/√(1+α²)) from the real line into the torus.
GroupHom winding(double alpha);
GroupHom trivial_into(const GroupId& g);
GroupHom projection(const GroupId& product, int i);

}  // namespace symred
