#include "symred/unitary.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>

#include "symred/errors.hpp"
#include "symred/prequantum.hpp"

namespace symred {

namespace {

constexpr double kRounding = 1e-8;

double multifactorial(const std::array<int, 3>& a) {
  return std::tgamma(a[0] + 1.0) * std::tgamma(a[1] + 1.0) * std::tgamma(a[2] + 1.0);
}

}  // namespace

int WeightProfile::dimension() const {
  int d = 0;
  for (const auto& [m, c] : multiplicities) d += c;
  return d;
}

int WeightProfile::count(int m) const {
  const auto it = multiplicities.find(m);
  return it == multiplicities.end() ? 0 : it->second;
}

Mat symmetric_power_generator(int ell, int axis) {
  if (ell < 0) throw ConfigError("negative degree " + std::to_string(ell));
  const auto mons = monomials(ell);
  const int n = static_cast<int>(mons.size());
  std::map<std::array<int, 3>, int> index;
  for (int i = 0; i < n; ++i) index[mons[static_cast<std::size_t>(i)]] = i;
  Mat a = Mat::Zero(3, 3);
  const int i1 = (axis + 1) % 3, i2 = (axis + 2) % 3;
  a(i2, i1) = -1.0;
  a(i1, i2) = 1.0;
  // x_k ↦ Σ_j a_kj x_j extended as a derivation; a is the transpose of the
  // rotation generator.
  Mat d = Mat::Zero(n, n);
  for (int col = 0; col < n; ++col) {
    const auto& b = mons[static_cast<std::size_t>(col)];
    for (int k = 0; k < 3; ++k) {
      if (b[k] == 0) continue;
      for (int j = 0; j < 3; ++j) {
        if (a(k, j) == 0.0) continue;
        auto e = b;
        --e[k];
        ++e[j];
        const int row = index.at(e);
        d(row, col) += a(k, j) * b[k] * std::sqrt(multifactorial(e) / multifactorial(b));
      }
    }
  }
  return d;
}

WeightProfile weight_profile(int ell) {
  if (ell < 0) throw ConfigError("negative degree " + std::to_string(ell));
  Mat casimir = Mat::Zero(1, 1);
  std::vector<Mat> gens;
  for (int k = 0; k < 3; ++k) {
    gens.push_back(symmetric_power_generator(ell, k));
    if (k == 0) casimir = Mat::Zero(gens[0].rows(), gens[0].cols());
    casimir -= gens.back() * gens.back();
  }
  Eigen::SelfAdjointEigenSolver<Mat> ce(casimir);
  const double target = ell * (ell + 1.0);
  std::vector<int> cols;
  for (int i = 0; i < ce.eigenvalues().size(); ++i)
    if (std::abs(ce.eigenvalues()[i] - target) <= kRounding * std::max(1.0, target)) cols.push_back(i);
  Mat v(casimir.rows(), static_cast<Eigen::Index>(cols.size()));
  for (std::size_t c = 0; c < cols.size(); ++c) v.col(static_cast<Eigen::Index>(c)) = ce.eigenvectors().col(cols[c]);

  const Eigen::MatrixXcd j3 = std::complex<double>(0.0, 1.0) * (v.transpose() * gens[2] * v).cast<std::complex<double>>();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> je(j3);
  WeightProfile p;
  p.ell = ell;
  for (int i = 0; i < je.eigenvalues().size(); ++i) {
    const double w = je.eigenvalues()[i];
    const double m = std::round(w);
    if (std::abs(w - m) > kRounding) throw RankAmbiguity("non-integral weight " + std::to_string(w));
    ++p.multiplicities[static_cast<int>(m)];
  }
  return p;
}

int weight_multiplicity(int ell, int m) { return weight_profile(ell).count(m); }

int frobenius_dimension(int ell, int m0) { return weight_multiplicity(ell, m0); }

}  // namespace symred
