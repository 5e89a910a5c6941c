#include "symred/lie.hpp"

#include <algorithm>
#include <cmath>

#include "symred/errors.hpp"

namespace symred {

namespace {

using RowMat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

Mat hat(double a1, double a2, double a3) {
  Mat m(3, 3);
  m << 0, -a3, a2, a3, 0, -a1, -a2, a1, 0;
  return m;
}

Mat rot2(double t) {
  Mat m(2, 2);
  m << std::cos(t), -std::sin(t), std::sin(t), std::cos(t);
  return m;
}

Mat rodrigues(const Eigen::Vector3d& a) {
  const double th = a.norm();
  const Mat k = hat(a[0], a[1], a[2]);
  double s, c;  // sin(θ)/θ and (1 − cos θ)/θ²
  if (th < 1e-4) {
    const double t2 = th * th;
    s = 1.0 - t2 / 6.0 + t2 * t2 / 120.0;
    c = 0.5 - t2 / 24.0 + t2 * t2 / 720.0;
  } else {
    s = std::sin(th) / th;
    c = (1.0 - std::cos(th)) / (th * th);
  }
  return Mat::Identity(3, 3) + s * k + c * k * k;
}

Mat block_diag(const Mat& a, const Mat& b) {
  Mat m = Mat::Zero(a.rows() + b.rows(), a.cols() + b.cols());
  m.topLeftCorner(a.rows(), a.cols()) = a;
  m.bottomRightCorner(b.rows(), b.cols()) = b;
  return m;
}

Vec concat(const Vec& a, const Vec& b) {
  Vec r(a.size() + b.size());
  r << a, b;
  return r;
}

Vec rotation_block_constraints(const Mat& m) {
  Vec r(3);
  r << m(0, 0) - m(1, 1), m(0, 1) + m(1, 0), m(0, 0) * m(0, 0) + m(1, 0) * m(1, 0) - 1.0;
  return r;
}

Mat orthonormal_columns(const Mat& a) {
  Eigen::HouseholderQR<Mat> qr(a);
  return qr.householderQ() * Mat::Identity(a.rows(), a.cols());
}

}  // namespace

// ---------------------------------------------------------------------------
// GroupId
// ---------------------------------------------------------------------------

struct GroupId::Data {
  GroupKind kind;
  std::string name;
  std::vector<GroupId> factors;
  std::vector<Mat> basis;
  Mat gram_inverse;
  int n = 1;
  int depth = 0;
  std::vector<int> block_offsets;
  std::vector<int> coord_offsets;
};

namespace {

void finish_gram(GroupId::Data& d) {
  const int k = static_cast<int>(d.basis.size());
  Mat gram(k, k);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) gram(i, j) = d.basis[i].cwiseProduct(d.basis[j]).sum();
  d.gram_inverse = k ? Mat(gram.inverse()) : Mat(0, 0);
}

}  // namespace

GroupId GroupId::trivial() {
  static const GroupId g = [] {
    auto d = std::make_shared<Data>();
    d->kind = GroupKind::Trivial;
    d->name = "{e}";
    d->n = 1;
    finish_gram(*d);
    return GroupId(d);
  }();
  return g;
}

GroupId GroupId::real_line() {
  static const GroupId g = [] {
    auto d = std::make_shared<Data>();
    d->kind = GroupKind::Real;
    d->name = "R";
    d->n = 2;
    Mat b = Mat::Zero(2, 2);
    b(0, 1) = 1.0;
    d->basis = {b};
    finish_gram(*d);
    return GroupId(d);
  }();
  return g;
}

GroupId GroupId::u1() {
  static const GroupId g = [] {
    auto d = std::make_shared<Data>();
    d->kind = GroupKind::U1;
    d->name = "U1";
    d->n = 2;
    Mat j(2, 2);
    j << 0, -1, 1, 0;
    d->basis = {j};
    finish_gram(*d);
    return GroupId(d);
  }();
  return g;
}

GroupId GroupId::so2() {
  static const GroupId g = [] {
    auto d = std::make_shared<Data>();
    d->kind = GroupKind::SO2;
    d->name = "SO2";
    d->n = 2;
    Mat j(2, 2);
    j << 0, -1, 1, 0;
    d->basis = {j};
    finish_gram(*d);
    return GroupId(d);
  }();
  return g;
}

GroupId GroupId::so3() {
  static const GroupId g = [] {
    auto d = std::make_shared<Data>();
    d->kind = GroupKind::SO3;
    d->name = "SO3";
    d->n = 3;
    d->basis = {hat(1, 0, 0), hat(0, 1, 0), hat(0, 0, 1)};
    finish_gram(*d);
    return GroupId(d);
  }();
  return g;
}

GroupId GroupId::torus2() {
  static const GroupId g = [] {
    auto d = std::make_shared<Data>();
    d->kind = GroupKind::Torus2;
    d->name = "T2";
    d->n = 4;
    Mat j(2, 2);
    j << 0, -1, 1, 0;
    d->basis = {block_diag(j, Mat::Zero(2, 2)), block_diag(Mat::Zero(2, 2), j)};
    finish_gram(*d);
    return GroupId(d);
  }();
  return g;
}

GroupId GroupId::product(const GroupId& a, const GroupId& b) {
  auto d = std::make_shared<Data>();
  d->kind = GroupKind::Product;
  d->name = "(" + a.name() + "×" + b.name() + ")";
  d->factors = {a, b};
  d->depth = 1 + std::max(a.depth(), b.depth());
  if (d->depth > 2) throw GroupMismatch("direct products may nest at most twice");
  d->n = a.matrix_size() + b.matrix_size();
  d->block_offsets = {0, a.matrix_size()};
  d->coord_offsets = {0, a.dim()};
  for (const Mat& m : a.basis()) d->basis.push_back(block_diag(m, Mat::Zero(b.matrix_size(), b.matrix_size())));
  for (const Mat& m : b.basis()) d->basis.push_back(block_diag(Mat::Zero(a.matrix_size(), a.matrix_size()), m));
  finish_gram(*d);
  return GroupId(d);
}

GroupKind GroupId::kind() const { return d_->kind; }
const std::string& GroupId::name() const { return d_->name; }
int GroupId::dim() const { return static_cast<int>(d_->basis.size()); }
int GroupId::matrix_size() const { return d_->n; }
int GroupId::depth() const { return d_->depth; }
const std::vector<GroupId>& GroupId::factors() const { return d_->factors; }
const std::vector<Mat>& GroupId::basis() const { return d_->basis; }
const Mat& GroupId::gram_inverse() const { return d_->gram_inverse; }
int GroupId::factor_block_offset(int i) const { return d_->block_offsets.at(i); }
int GroupId::factor_coord_offset(int i) const { return d_->coord_offsets.at(i); }

bool GroupId::is_abelian() const {
  switch (d_->kind) {
    case GroupKind::SO3: return false;
    case GroupKind::Product: return d_->factors[0].is_abelian() && d_->factors[1].is_abelian();
    default: return true;
  }
}

bool GroupId::operator==(const GroupId& other) const {
  return d_ == other.d_ || d_->name == other.d_->name;
}

// ---------------------------------------------------------------------------
// Elements
// ---------------------------------------------------------------------------

GroupElement::GroupElement(GroupId group, Mat matrix) : group_(std::move(group)), matrix_(std::move(matrix)) {
  if (matrix_.rows() != group_.matrix_size() || matrix_.cols() != group_.matrix_size())
    throw GroupMismatch("matrix size does not match " + group_.name());
}

GroupElement GroupElement::identity(const GroupId& group) {
  return GroupElement(group, Mat::Identity(group.matrix_size(), group.matrix_size()));
}

GroupElement GroupElement::inverse() const {
  switch (group_.kind()) {
    case GroupKind::Real: {
      Mat m = matrix_;
      m(0, 1) = -m(0, 1);
      return GroupElement(group_, m);
    }
    case GroupKind::Product: {
      const GroupElement a = factor(*this, 0).inverse();
      const GroupElement b = factor(*this, 1).inverse();
      return GroupElement(group_, block_diag(a.matrix(), b.matrix()));
    }
    default:
      return GroupElement(group_, matrix_.transpose());
  }
}

double GroupElement::defect() const {
  const Vec r = group_constraints(group_, matrix_);
  double d = r.size() ? r.cwiseAbs().maxCoeff() : 0.0;
  if (group_.kind() == GroupKind::SO3) d = std::max(d, std::abs(matrix_.determinant() - 1.0));
  if (group_.kind() == GroupKind::Product)
    for (int i = 0; i < 2; ++i) d = std::max(d, factor(*this, i).defect());
  return d;
}

AlgebraElement::AlgebraElement(GroupId group, Vec coords) : group_(std::move(group)), coords_(std::move(coords)) {
  if (coords_.size() != group_.dim()) throw GroupMismatch("algebra coordinates have the wrong length");
}

AlgebraElement AlgebraElement::zero(const GroupId& group) { return AlgebraElement(group, Vec::Zero(group.dim())); }

AlgebraElement AlgebraElement::basis(const GroupId& group, int k) {
  return AlgebraElement(group, Vec::Unit(group.dim(), k));
}

Mat AlgebraElement::matrix() const {
  Mat m = Mat::Zero(group_.matrix_size(), group_.matrix_size());
  for (int k = 0; k < group_.dim(); ++k) m += coords_[k] * group_.basis()[k];
  return m;
}

CoalgebraElement::CoalgebraElement(GroupId group, Vec coords) : group_(std::move(group)), coords_(std::move(coords)) {
  if (coords_.size() != group_.dim()) throw GroupMismatch("coalgebra coordinates have the wrong length");
}

CoalgebraElement CoalgebraElement::zero(const GroupId& group) {
  return CoalgebraElement(group, Vec::Zero(group.dim()));
}

double CoalgebraElement::pair(const AlgebraElement& z) const {
  if (z.group() != group_) throw GroupMismatch("pairing across different groups");
  return coords_.dot(z.coords());
}

// ---------------------------------------------------------------------------
// Operations
// ---------------------------------------------------------------------------

GroupElement multiply(const GroupElement& a, const GroupElement& b) {
  if (a.group() != b.group()) throw GroupMismatch(a.group().name() + " vs " + b.group().name());
  return GroupElement(a.group(), a.matrix() * b.matrix());
}

GroupElement exp(const AlgebraElement& z) {
  const GroupId& g = z.group();
  const Vec& c = z.coords();
  switch (g.kind()) {
    case GroupKind::Trivial: return GroupElement::identity(g);
    case GroupKind::Real: {
      Mat m = Mat::Identity(2, 2);
      m(0, 1) = c[0];
      return GroupElement(g, m);
    }
    case GroupKind::U1:
    case GroupKind::SO2: return GroupElement(g, rot2(c[0]));
    case GroupKind::SO3: return GroupElement(g, rodrigues(Eigen::Vector3d(c[0], c[1], c[2])));
    case GroupKind::Torus2: return GroupElement(g, block_diag(rot2(c[0]), rot2(c[1])));
    case GroupKind::Product: {
      const GroupId& a = g.factors()[0];
      const GroupId& b = g.factors()[1];
      const GroupElement ea = exp(AlgebraElement(a, c.head(a.dim())));
      const GroupElement eb = exp(AlgebraElement(b, c.tail(b.dim())));
      return GroupElement(g, block_diag(ea.matrix(), eb.matrix()));
    }
  }
  return GroupElement::identity(g);
}

Vec algebra_coords(const GroupId& group, const Mat& m) {
  const int k = group.dim();
  Vec rhs(k);
  for (int i = 0; i < k; ++i) rhs[i] = group.basis()[i].cwiseProduct(m).sum();
  if (k == 0) return Vec(0);
  return group.gram_inverse() * rhs;
}

double algebra_defect(const GroupId& group, const Mat& m) {
  const AlgebraElement z(group, algebra_coords(group, m));
  return (m - z.matrix()).cwiseAbs().maxCoeff();
}

AlgebraElement bracket(const AlgebraElement& z, const AlgebraElement& w) {
  if (z.group() != w.group()) throw GroupMismatch("bracket across different groups");
  const Mat a = z.matrix();
  const Mat b = w.matrix();
  return AlgebraElement(z.group(), algebra_coords(z.group(), a * b - b * a));
}

Mat adjoint_matrix(const GroupElement& g) {
  const GroupId& id = g.group();
  const Mat gi = g.inverse().matrix();
  Mat ad(id.dim(), id.dim());
  for (int k = 0; k < id.dim(); ++k) ad.col(k) = algebra_coords(id, g.matrix() * id.basis()[k] * gi);
  return ad;
}

AlgebraElement adjoint(const GroupElement& g, const AlgebraElement& z) {
  if (g.group() != z.group()) throw GroupMismatch("adjoint across different groups");
  return AlgebraElement(z.group(), algebra_coords(z.group(), g.matrix() * z.matrix() * g.inverse().matrix()));
}

CoalgebraElement coadjoint(const GroupElement& g, const CoalgebraElement& mu) {
  if (g.group() != mu.group()) throw GroupMismatch("coadjoint across different groups");
  if (mu.group().is_abelian()) return mu;
  return CoalgebraElement(mu.group(), adjoint_matrix(g.inverse()).transpose() * mu.coords());
}

// ---------------------------------------------------------------------------
// Embedding
// ---------------------------------------------------------------------------

Vec to_ambient(const GroupElement& g) {
  const RowMat r = g.matrix();
  return Eigen::Map<const Vec>(r.data(), r.size());
}

GroupElement element_from_ambient(const GroupId& group, const Vec& x) {
  const int n = group.matrix_size();
  if (x.size() != n * n) throw SpaceMismatch("ambient vector does not match " + group.name());
  const RowMat r = Eigen::Map<const RowMat>(x.data(), n, n);
  return GroupElement(group, Mat(r));
}

Vec group_constraints(const GroupId& group, const Mat& m) {
  switch (group.kind()) {
    case GroupKind::Trivial: return Vec::Constant(1, m(0, 0) - 1.0);
    case GroupKind::Real: {
      Vec r(3);
      r << m(0, 0) - 1.0, m(1, 0), m(1, 1) - 1.0;
      return r;
    }
    case GroupKind::U1:
    case GroupKind::SO2: return rotation_block_constraints(m);
    case GroupKind::SO3: {
      const Mat p = m.transpose() * m - Mat::Identity(3, 3);
      Vec r(6);
      r << p(0, 0), p(0, 1), p(0, 2), p(1, 1), p(1, 2), p(2, 2);
      return r;
    }
    case GroupKind::Torus2: {
      Vec r(14);
      r << m(0, 2), m(0, 3), m(1, 2), m(1, 3), m(2, 0), m(2, 1), m(3, 0), m(3, 1),
          rotation_block_constraints(m.topLeftCorner(2, 2)),
          rotation_block_constraints(m.bottomRightCorner(2, 2));
      return r;
    }
    case GroupKind::Product: {
      const GroupId& a = group.factors()[0];
      const GroupId& b = group.factors()[1];
      const int na = a.matrix_size(), nb = b.matrix_size();
      const Mat tr = m.topRightCorner(na, nb);
      const Mat bl = m.bottomLeftCorner(nb, na);
      Vec off(2 * na * nb);
      off << Eigen::Map<const Vec>(tr.data(), tr.size()), Eigen::Map<const Vec>(bl.data(), bl.size());
      return concat(concat(off, group_constraints(a, m.topLeftCorner(na, na))),
                    group_constraints(b, m.bottomRightCorner(nb, nb)));
    }
  }
  return Vec(0);
}

SpacePtr group_space(const GroupId& group) {
  auto constraint = [group](const Vec& x) {
    return group_constraints(group, element_from_ambient(group, x).matrix());
  };
  auto tangent = [group](const Vec& x) {
    const Mat g = element_from_ambient(group, x).matrix();
    Mat t(group.ambient_dim(), group.dim());
    for (int k = 0; k < group.dim(); ++k) t.col(k) = to_ambient(GroupElement(group, group.basis()[k] * g));
    if (group.dim() == 0) return t;
    return orthonormal_columns(t);
  };
  return std::make_shared<EmbeddedSpace>(group.name(), group.ambient_dim(), constraint, tangent);
}

GroupElement product_element(const GroupId& product, const GroupElement& a, const GroupElement& b) {
  if (product.kind() != GroupKind::Product || product.factors()[0] != a.group() ||
      product.factors()[1] != b.group())
    throw GroupMismatch("factors do not match " + product.name());
  return GroupElement(product, block_diag(a.matrix(), b.matrix()));
}

GroupElement factor(const GroupElement& g, int i) {
  const GroupId& p = g.group();
  if (p.kind() != GroupKind::Product) throw GroupMismatch(p.name() + " is not a product");
  const GroupId& f = p.factors().at(i);
  const int off = p.factor_block_offset(i);
  return GroupElement(f, g.matrix().block(off, off, f.matrix_size(), f.matrix_size()));
}

GroupElement random_element(const GroupId& group, Rng& rng, double sigma) {
  return exp(AlgebraElement(group, sigma * rng.normal_vector(group.dim())));
}

GroupElement reorthonormalize(const GroupElement& g) {
  const GroupId& id = g.group();
  switch (id.kind()) {
    case GroupKind::Trivial: return GroupElement::identity(id);
    case GroupKind::Real: {
      Mat m = Mat::Identity(2, 2);
      m(0, 1) = g.matrix()(0, 1);
      return GroupElement(id, m);
    }
    case GroupKind::Product:
      return GroupElement(id, block_diag(reorthonormalize(factor(g, 0)).matrix(),
                                         reorthonormalize(factor(g, 1)).matrix()));
    case GroupKind::Torus2: {
      const Mat a = g.matrix().topLeftCorner(2, 2);
      const Mat b = g.matrix().bottomRightCorner(2, 2);
      return GroupElement(id, block_diag(rot2(std::atan2(a(1, 0) - a(0, 1), a(0, 0) + a(1, 1))),
                                         rot2(std::atan2(b(1, 0) - b(0, 1), b(0, 0) + b(1, 1)))));
    }
    default: {
      Eigen::JacobiSVD<Mat> svd(g.matrix(), Eigen::ComputeFullU | Eigen::ComputeFullV);
      Mat r = svd.matrixU() * svd.matrixV().transpose();
      if (r.determinant() < 0) {
        Mat u = svd.matrixU();
        u.col(u.cols() - 1) *= -1.0;
        r = u * svd.matrixV().transpose();
      }
      return GroupElement(id, r);
    }
  }
}

Mat matrix_exp_series(const Mat& a) {
  const double norm = a.cwiseAbs().rowwise().sum().maxCoeff();
  int s = 0;
  if (norm > 0.5) s = static_cast<int>(std::ceil(std::log2(norm / 0.5)));
  const Mat b = a / std::ldexp(1.0, s);
  Mat term = Mat::Identity(a.rows(), a.cols());
  Mat sum = term;
  for (int k = 1; k <= 24; ++k) {
    term = term * b / static_cast<double>(k);
    sum += term;
  }
  for (int i = 0; i < s; ++i) sum = sum * sum;
  return sum;
}

double group_distance(const GroupElement& a, const GroupElement& b) {
  if (a.group() != b.group()) throw GroupMismatch("distance across different groups");
  const Mat d = a.inverse().matrix() * b.matrix();
  switch (a.group().kind()) {
    case GroupKind::U1:
    case GroupKind::SO2: return std::abs(std::atan2(d(1, 0), d(0, 0)));
    case GroupKind::SO3: {
      const double c = std::clamp((d.trace() - 1.0) / 2.0, -1.0, 1.0);
      // acos is ill-conditioned near 0; use the antisymmetric part there.
      const Mat k = 0.5 * (d - d.transpose());
      const double s = Eigen::Vector3d(k(2, 1), k(0, 2), k(1, 0)).norm();
      return std::atan2(s, c);
    }
    default: return (a.matrix() - b.matrix()).norm();
  }
}

// ---------------------------------------------------------------------------
// Maurer–Cartan
// ---------------------------------------------------------------------------

namespace {

AlgebraElement mc_impl(const GroupId& group, const Plot& q, const Vec& u, const Vec& du,
                       const DiffOptions& opts, bool left) {
  if (q.target()->ambient_dim() != group.ambient_dim())
    throw SpaceMismatch("plot " + q.name() + " does not land in " + group.name());
  const Mat dq = element_from_ambient(group, plot_derivative(q, u, du, opts)).matrix();
  const Mat qi = element_from_ambient(group, q(u)).inverse().matrix();
  const Mat z = left ? Mat(qi * dq) : Mat(dq * qi);
  const double defect = algebra_defect(group, z);
  const double allowed = std::max(1e-6, 100.0 * opts.step * opts.step);
  if (defect > allowed * std::max(1.0, z.cwiseAbs().maxCoeff()))
    throw DerivativeFailure("Maurer–Cartan element leaves the algebra by " + std::to_string(defect));
  return AlgebraElement(group, algebra_coords(group, z));
}

}  // namespace

AlgebraElement maurer_cartan(const GroupId& group, const Plot& q, const Vec& u, const Vec& du,
                             const DiffOptions& opts) {
  return mc_impl(group, q, u, du, opts, false);
}

AlgebraElement left_maurer_cartan(const GroupId& group, const Plot& q, const Vec& u, const Vec& du,
                                  const DiffOptions& opts) {
  return mc_impl(group, q, u, du, opts, true);
}

// ---------------------------------------------------------------------------
// Homomorphisms
// ---------------------------------------------------------------------------

AlgebraElement GroupHom::push(const AlgebraElement& z) const {
  if (z.group() != source) throw GroupMismatch("push: element not in " + source.name());
  return AlgebraElement(target, algebra_map * z.coords());
}

CoalgebraElement GroupHom::restrict(const CoalgebraElement& mu) const {
  if (mu.group() != target) throw GroupMismatch("restrict: covector not in " + target.name());
  return CoalgebraElement(source, algebra_map.transpose() * mu.coords());
}

GroupHom identity_hom(const GroupId& g) {
  return {g, g, [](const GroupElement& x) { return x; }, Mat::Identity(g.dim(), g.dim())};
}

GroupHom so2_into_so3() {
  const GroupId s2 = GroupId::so2();
  const GroupId s3 = GroupId::so3();
  Mat a = Mat::Zero(3, 1);
  a(2, 0) = 1.0;
  return {s2, s3,
          [s3](const GroupElement& h) {
            Mat m = Mat::Identity(3, 3);
            m.topLeftCorner(2, 2) = h.matrix();
            return GroupElement(s3, m);
          },
          a};
}

GroupHom winding(double alpha) {
  const GroupId r = GroupId::real_line();
  const GroupId t = GroupId::torus2();
  const double n = std::sqrt(1.0 + alpha * alpha);
  Mat a(2, 1);
  a << 1.0 / n, alpha / n;
  return {r, t,
          [t, a](const GroupElement& h) {
            return exp(AlgebraElement(t, a.col(0) * h.matrix()(0, 1)));
          },
          a};
}

GroupHom trivial_into(const GroupId& g) {
  return {GroupId::trivial(), g, [g](const GroupElement&) { return GroupElement::identity(g); },
          Mat::Zero(g.dim(), 0)};
}

GroupHom projection(const GroupId& product, int i) {
  if (product.kind() != GroupKind::Product) throw GroupMismatch(product.name() + " is not a product");
  const GroupId f = product.factors().at(i);
  Mat a = Mat::Zero(f.dim(), product.dim());
  a.block(0, product.factor_coord_offset(i), f.dim(), f.dim()).setIdentity();
  return {product, f, [i](const GroupElement& g) { return factor(g, i); }, a};
}

}  // namespace symred
