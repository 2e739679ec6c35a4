#include "truelearn/gaussian.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <random>

#include "support/oracles.hpp"

namespace truelearn {
namespace {

TEST(Gaussian1D, MomentsRoundTrip) {
  const auto g = Gaussian1D::from_moments(-1.25, 0.3);
  EXPECT_NEAR(g.mean(), -1.25, 1e-15);
  EXPECT_NEAR(g.variance(), 0.3, 1e-15);
  EXPECT_DOUBLE_EQ(g.precision(), 1.0 / 0.3);
  EXPECT_DOUBLE_EQ(g.precision_mean(), -1.25 / 0.3);
}

TEST(Gaussian1D, RejectsNonPositiveVariance) {
  EXPECT_THROW(Gaussian1D::from_moments(0.0, 0.0), std::invalid_argument);
  EXPECT_THROW(Gaussian1D::from_moments(0.0, -1.0), std::invalid_argument);
  EXPECT_THROW(Gaussian1D::from_moments(0.0, std::nan("")), std::invalid_argument);
  EXPECT_THROW(Gaussian1D::from_natural(-1.0, 0.0), std::invalid_argument);
}

TEST(Gaussian1D, InfiniteVarianceIsUninformative) {
  const auto g = Gaussian1D::from_moments(3.0, std::numeric_limits<double>::infinity());
  EXPECT_TRUE(g.is_uninformative());
  EXPECT_TRUE(std::isinf(g.variance()));
}

TEST(Gaussian1D, MultiplyEqualPrecisionsHalvesVariance) {
  const auto g = multiply(Gaussian1D::from_moments(0, 1), Gaussian1D::from_moments(0, 1));
  EXPECT_DOUBLE_EQ(g.mean(), 0.0);
  EXPECT_DOUBLE_EQ(g.variance(), 0.5);
}

TEST(Gaussian1D, UninformativeIsIdentity) {
  const auto a = Gaussian1D::from_moments(0.7, 2.5);
  EXPECT_EQ(multiply(a, Gaussian1D::uninformative()), a);
  EXPECT_EQ(divide(a, Gaussian1D::uninformative()), a);
  EXPECT_TRUE(multiply(Gaussian1D{}, Gaussian1D{}).is_uninformative());
}

TEST(Gaussian1D, MultiplyByHand) {
  // Precisions 0.5 + 0.25 = 0.75, precision-means 0.5 + 0.75 = 1.25.
  const auto g = Gaussian1D::from_moments(1, 2) * Gaussian1D::from_moments(3, 4);
  EXPECT_NEAR(g.mean(), 5.0 / 3.0, 1e-15);
  EXPECT_NEAR(g.variance(), 4.0 / 3.0, 1e-15);
}

TEST(Gaussian1D, DivideInvertsMultiply) {
  auto g = Gaussian1D::from_moments(0, 0.5) / Gaussian1D::from_moments(0, 1);
  EXPECT_NEAR(g.mean(), 0.0, 1e-15);
  EXPECT_NEAR(g.variance(), 1.0, 1e-15);

  g = Gaussian1D::from_moments(5.0 / 3.0, 4.0 / 3.0) / Gaussian1D::from_moments(3, 4);
  EXPECT_NEAR(g.mean(), 1.0, 1e-12);
  EXPECT_NEAR(g.variance(), 2.0, 1e-12);
}

TEST(Gaussian1D, DivideRejectsNegativePrecision) {
  EXPECT_THROW(divide(Gaussian1D::from_moments(0, 2), Gaussian1D::from_moments(0, 1)),
               std::domain_error);
}

TEST(Gaussian1D, MultiplyDivideRoundTripProperty) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> mean(-10, 10);
  std::uniform_real_distribution<double> log_var(-3, 3);
  for (int i = 0; i < 1000; ++i) {
    const auto a = Gaussian1D::from_moments(mean(rng), std::exp(log_var(rng)));
    const auto b = Gaussian1D::from_moments(mean(rng), std::exp(log_var(rng)));
    const auto back = divide(multiply(a, b), b);
    EXPECT_NEAR(back.mean(), a.mean(), 1e-9);
    EXPECT_NEAR(back.variance(), a.variance(), 1e-9);
  }
}

TEST(NormalFunctions, Basics) {
  EXPECT_DOUBLE_EQ(normal_cdf(0.0), 0.5);
  EXPECT_NEAR(normal_cdf(1.0) + normal_sf(1.0), 1.0, 1e-16);
  EXPECT_NEAR(normal_pdf(0.0), 0.3989422804014327, 1e-16);
  // Continuity of the Mills ratio across the continued-fraction switch.
  // d/dx log R(x) = x - 1/R(x), which is about -1/x + 2/x^3 out here.
  const double slope = -1.0 / 37.0 + 2.0 / (37.0 * 37.0 * 37.0);
  EXPECT_NEAR(mills_ratio(36.999999) / mills_ratio(37.0), 1.0 - 1e-6 * slope, 1e-12);
  EXPECT_NEAR(mills_ratio(0.0), 1.2533141373155003, 1e-14);  // sqrt(pi/2)
}

// Frozen values from closed forms evaluated in extended precision.
TEST(TruncatedWithin, SymmetricIntervalHasNoMeanShift) {
  const auto m = truncated_moments_within(0.0, 1.0);
  EXPECT_NEAR(m.v, 0.0, 1e-15);
  EXPECT_NEAR(m.w, 0.70887490522720679, 1e-12);
}

TEST(TruncatedWithin, OffsetInterval) {
  const auto m = truncated_moments_within(0.5, 1.0);
  EXPECT_NEAR(m.v, -0.35627288417705976, 1e-12);
  EXPECT_NEAR(m.w, 0.7197518498487749, 1e-12);
}

TEST(TruncatedWithin, WideMarginMeansNoTruncation) {
  const auto m = truncated_moments_within(0.0, 60.0);
  EXPECT_EQ(m.v, 0.0);
  EXPECT_NEAR(m.w, 0.0, 1e-15);
}

TEST(TruncatedWithin, OddInT) {
  const auto p = truncated_moments_within(1.3, 0.4);
  const auto n = truncated_moments_within(-1.3, 0.4);
  EXPECT_DOUBLE_EQ(p.v, -n.v);
  EXPECT_DOUBLE_EQ(p.w, n.w);
}

TEST(TruncatedWithin, DeepTailStaysFinite) {
  // Interval [-41, -39] relative to the mean: far beyond erfc's range.
  const auto m = truncated_moments_within(40.0, 1.0);
  EXPECT_TRUE(std::isfinite(m.v));
  EXPECT_TRUE(std::isfinite(m.w));
  // The truncated variable hugs the upper end -39.
  EXPECT_NEAR(m.v, -39.0, 0.1);
  EXPECT_GT(m.w, 0.99);
  EXPECT_LE(m.w, 1.0);
}

TEST(TruncatedWithin, RejectsBadArguments) {
  EXPECT_THROW(truncated_moments_within(0.0, 0.0), std::invalid_argument);
  EXPECT_THROW(truncated_moments_within(std::nan(""), 1.0), std::invalid_argument);
}

TEST(TruncatedAbove, HazardAtZero) {
  const auto m = truncated_moments_above(0.0, 0.0);
  EXPECT_NEAR(m.v, 0.79788456080286536, 1e-12);
  EXPECT_NEAR(m.w, 0.63661977236758134, 1e-12);
}

TEST(TruncatedAbove, FarInsideRegion) {
  const auto m = truncated_moments_above(10.0, 0.0);
  EXPECT_NEAR(m.v, 7.6945986267064193e-23, 1e-36);
  EXPECT_NEAR(m.w, 7.6945986267064193e-22, 1e-35);
}

TEST(TruncatedAbove, BelowThreshold) {
  const auto m = truncated_moments_above(-1.0, 0.0);
  EXPECT_NEAR(m.v, 1.5251352761609812, 1e-12);
  EXPECT_NEAR(m.w, 0.80090233442965121, 1e-12);
}

TEST(TruncatedAbove, DeepTailStaysFinite) {
  const auto m = truncated_moments_above(-50.0, 0.0);
  EXPECT_NEAR(m.v, 50.0, 0.05);
  EXPECT_GT(m.w, 0.99);
  EXPECT_LE(m.w, 1.0);
}

TEST(TruncatedMoments, MatchQuadratureOracle) {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> t_dist(-5.0, 5.0);
  std::uniform_real_distribution<double> eps_dist(0.0, 5.0);
  for (int i = 0; i < 100; ++i) {
    const double t = t_dist(rng);
    double eps = eps_dist(rng);
    if (eps == 0.0) eps = 1e-3;

    const auto within = truncated_moments_within(t, eps);
    const auto ref_within = oracle::truncated_standard_normal(-eps - t, eps - t);
    EXPECT_NEAR(within.v, ref_within.mean, 1e-6) << "t=" << t << " eps=" << eps;
    EXPECT_NEAR(within.w, 1.0 - ref_within.variance, 1e-6) << "t=" << t << " eps=" << eps;
    EXPECT_GT(within.w, 0.0);
    EXPECT_LE(within.w, 1.0);

    const auto above = truncated_moments_above(t, eps);
    const auto ref_above =
        oracle::truncated_standard_normal(eps - t, std::numeric_limits<double>::infinity());
    EXPECT_NEAR(above.v, ref_above.mean, 1e-6) << "t=" << t << " eps=" << eps;
    EXPECT_NEAR(above.w, 1.0 - ref_above.variance, 1e-6) << "t=" << t << " eps=" << eps;
    EXPECT_GT(above.w, 0.0);
    EXPECT_LE(above.w, 1.0);
  }
}

}  // namespace
}  // namespace truelearn
