#include <cmath>
#include <limits>

#include <gtest/gtest.h>

#include "symred/errors.hpp"
#include "symred/report.hpp"
#include "symred/rng.hpp"

using namespace symred;

TEST(Rng, StreamsAreReproducible) {
  Rng a = Rng::stream(42, "x");
  Rng b = Rng::stream(42, "x");
  for (int i = 0; i < 100; ++i) EXPECT_EQ(a.next_u64(), b.next_u64());
}

TEST(Rng, LabelsAndSeedsSeparateStreams) {
  Rng a = Rng::stream(42, "x");
  Rng b = Rng::stream(42, "y");
  Rng c = Rng::stream(43, "x");
  const auto va = a.next_u64();
  EXPECT_NE(va, b.next_u64());
  EXPECT_NE(va, c.next_u64());
}

TEST(Rng, UniformStaysInRange) {
  Rng r(7);
  for (int i = 0; i < 10000; ++i) {
    const double u = r.uniform();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
  }
}

TEST(Rng, NormalMoments) {
  Rng r(11);
  double s = 0, s2 = 0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) {
    const double x = r.normal();
    s += x;
    s2 += x * x;
  }
  EXPECT_NEAR(s / n, 0.0, 0.01);
  EXPECT_NEAR(s2 / n, 1.0, 0.02);
}

TEST(Rng, SplitIsIndependentOfParentPosition) {
  Rng a(5);
  Rng b(5);
  b.next_u64();
  EXPECT_EQ(a.split("child").next_u64(), b.split("child").next_u64());
}

TEST(Report, ClassifyBands) {
  EXPECT_EQ(classify(1e-8, 1e-6, 1e-3), Verdict::Pass);
  EXPECT_EQ(classify(1e-4, 1e-6, 1e-3), Verdict::Inconclusive);
  EXPECT_EQ(classify(1e-2, 1e-6, 1e-3), Verdict::Fail);
  EXPECT_EQ(classify(std::nan(""), 1e-6, 1e-3), Verdict::Fail);
}

TEST(Report, VerdictRoundTrip) {
  for (Verdict v : {Verdict::Pass, Verdict::Fail, Verdict::Approx, Verdict::Inconclusive})
    EXPECT_EQ(parse_verdict(to_string(v)), v);
  EXPECT_FALSE(parse_verdict("MAYBE").has_value());
}

TEST(Report, AccumulatorKeepsWorstWitnessOnFailure) {
  ResidualAccumulator acc;
  acc.add(1e-9, 1.0, [] { return Witness{Vec::Constant(1, 1.0), {}, 0, "a"}; });
  acc.add(0.5, 1.0, [] { return Witness{Vec::Constant(1, 2.0), {}, 0, "b"}; });
  acc.add(1e-3, 1.0, [] { return Witness{Vec::Constant(1, 3.0), {}, 0, "c"}; });
  const CheckReport r = acc.finish("t", "op", Tolerances::absolute(1e-6, 1e-3), 1);
  EXPECT_EQ(r.verdict, Verdict::Fail);
  ASSERT_TRUE(r.witness.has_value());
  EXPECT_EQ(r.witness->note, "b");
  EXPECT_DOUBLE_EQ(r.witness->residual, 0.5);
  EXPECT_EQ(r.samples, 3);
}

TEST(Report, PassingReportCarriesNoWitness) {
  ResidualAccumulator acc;
  acc.add(1e-12, 1.0, [] { return Witness{}; });
  const CheckReport r = acc.finish("t", "op", Tolerances::absolute(1e-6, 1e-3));
  EXPECT_TRUE(r.passed());
  EXPECT_FALSE(r.witness.has_value());
}

TEST(Report, NanResidualFails) {
  ResidualAccumulator acc;
  acc.add(std::numeric_limits<double>::quiet_NaN(), 1.0);
  EXPECT_EQ(acc.finish("t", "op", Tolerances{}).verdict, Verdict::Fail);
}

TEST(Report, Metrics) {
  CheckReport r;
  r.set_metric("rank", 3);
  r.set_metric("rank", 2);
  EXPECT_TRUE(r.has_metric("rank"));
  EXPECT_EQ(r.metric("rank"), 2);
  EXPECT_EQ(r.metrics.size(), 1u);
  EXPECT_THROW(r.metric("missing"), std::out_of_range);
}

TEST(Errors, CodesAreCarried) {
  try {
    throw GaugeChartMiss("x");
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::GaugeChartMiss);
    EXPECT_STREQ(to_string(e.code()), "GaugeChartMiss");
  }
}
