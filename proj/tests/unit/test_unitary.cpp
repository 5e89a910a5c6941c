#include <cmath>

#include <Eigen/Eigenvalues>
#include <gtest/gtest.h>

#include "oracles.hpp"
#include "symred/errors.hpp"
#include "symred/prequantum.hpp"
#include "symred/unitary.hpp"

using namespace symred;
using namespace oracle;

namespace {

/// Spin-ℓ J₊ in the |ℓ, m⟩ basis, m = ℓ..−ℓ.
Eigen::MatrixXd ladder(int ell) {
  const int n = 2 * ell + 1;
  Eigen::MatrixXd jp = Eigen::MatrixXd::Zero(n, n);
  for (int i = 1; i < n; ++i) {
    const double m = ell - i;
    jp(i - 1, i) = std::sqrt(ell * (ell + 1.0) - m * (m + 1.0));
  }
  return jp;
}

}  // namespace

TEST(WeightProfile, LZeroIsTrivial) {
  const auto w = weight_profile(0);
  EXPECT_EQ(w.dimension(), 1);
  EXPECT_EQ(w.count(0), 1);
  EXPECT_EQ(weight_multiplicity(0, 1), 0);
}

TEST(WeightProfile, LTwo) {
  EXPECT_EQ(weight_multiplicity(2, 1), 1);
  EXPECT_EQ(weight_multiplicity(2, 3), 0);
  EXPECT_EQ(weight_multiplicity(2, -2), 1);
}

TEST(WeightProfile, DimensionAndSymmetry) {
  for (int ell = 0; ell <= 12; ++ell) {
    const auto w = weight_profile(ell);
    EXPECT_EQ(w.dimension(), 2 * ell + 1) << ell;
    for (const auto& [m, c] : w.multiplicities) EXPECT_EQ(w.count(-m), c) << ell << " " << m;
  }
}

TEST(WeightProfile, MatchesLadderOracle) {
  for (int ell = 0; ell <= 8; ++ell) {
    const Eigen::MatrixXd jp = ladder(ell);
    const Eigen::MatrixXd jx = 0.5 * (jp + jp.transpose());
    const Eigen::MatrixXcd jy = std::complex<double>(0.0, -0.5) * (jp - jp.transpose()).cast<std::complex<double>>();
    Eigen::MatrixXd jz = Eigen::MatrixXd::Zero(2 * ell + 1, 2 * ell + 1);
    for (int i = 0; i <= 2 * ell; ++i) jz(i, i) = ell - i;
    const Eigen::MatrixXcd cas = (jx * jx + jz * jz).cast<std::complex<double>>() + jy * jy;
    EXPECT_LT((cas - ell * (ell + 1.0) * Eigen::MatrixXcd::Identity(2 * ell + 1, 2 * ell + 1)).cwiseAbs().maxCoeff(), 1e-10);
    const auto w = weight_profile(ell);
    for (int i = 0; i <= 2 * ell; ++i) EXPECT_EQ(w.count(static_cast<int>(std::lround(jz(i, i)))), 1);
  }
}

TEST(WeightProfile, NegativeDegreeRaises) {
  EXPECT_THROW(weight_profile(-1), ConfigError);
  EXPECT_THROW(symmetric_power_generator(-2, 0), ConfigError);
}

TEST(FrobeniusDimension, EqualsZeroWeightMultiplicity) {
  for (int ell = 0; ell <= 20; ++ell) {
    EXPECT_EQ(frobenius_dimension(ell), weight_multiplicity(ell, 0)) << ell;
    EXPECT_EQ(frobenius_dimension(ell), 1) << ell;
  }
}

TEST(FrobeniusDimension, ShiftedCharacter) {
  for (int ell = 0; ell <= 6; ++ell)
    for (int m0 = -8; m0 <= 8; ++m0) EXPECT_EQ(frobenius_dimension(ell, m0), std::abs(m0) <= ell ? 1 : 0);
}

TEST(Generator, IsDerivativeOfSymmetricPower) {
  const double h = 1e-5;
  for (int ell = 1; ell <= 4; ++ell)
    for (int k = 0; k < 3; ++k) {
      Eigen::Vector3d a = Eigen::Vector3d::Zero();
      a[k] = h;
      const Mat fd = (symmetric_power_matrix(rodrigues(a), ell) - symmetric_power_matrix(rodrigues(-a), ell)) / (2 * h);
      EXPECT_LT(max_abs(fd - symmetric_power_generator(ell, k)), 1e-8) << ell << " " << k;
    }
}

TEST(Generator, AntisymmetricWithSo3Brackets) {
  for (int ell = 1; ell <= 5; ++ell) {
    const Mat d1 = symmetric_power_generator(ell, 0), d2 = symmetric_power_generator(ell, 1),
              d3 = symmetric_power_generator(ell, 2);
    EXPECT_LT(max_abs(d1 + d1.transpose()), 1e-14);
    EXPECT_LT(max_abs(d1 * d2 - d2 * d1 - d3), 1e-12);
    EXPECT_LT(max_abs(d2 * d3 - d3 * d2 - d1), 1e-12);
  }
}
