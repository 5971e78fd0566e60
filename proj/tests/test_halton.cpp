#include <gtest/gtest.h>

#include <cmath>

#include "rfscat/halton.hpp"

using namespace rfscat;

TEST(Halton, RadicalInverse) {
  EXPECT_EQ(radical_inverse(1, 2), 0.5);
  EXPECT_EQ(radical_inverse(4, 2), 0.125);
  // 5 = 12 in base 3, reversed 0.21 = 2/3 + 1/9.
  EXPECT_DOUBLE_EQ(radical_inverse(5, 3), 7.0 / 9.0);
  EXPECT_EQ(radical_inverse(0, 7), 0.0);
}

TEST(Halton, FirstPoint) {
  const RealVector u = halton_point(1, 2);
  EXPECT_EQ(u(0), 0.5);
  EXPECT_NEAR(u(1), 1.0 / 3.0, 1e-16);
}

TEST(Halton, BasesArePrimes) {
  const HaltonSampler s(1000);
  const auto &b = s.bases();
  ASSERT_EQ(b.size(), 1000u);
  EXPECT_EQ(b[0], 2u);
  EXPECT_EQ(b[999], 7919u);
  for (std::size_t i = 1; i < b.size(); ++i) EXPECT_LT(b[i - 1], b[i]);
}

TEST(Halton, AffineMapAndRange) {
  const HaltonSampler s(1000);
  EXPECT_EQ(s.sample(0)(0), 0.0);
  for (const auto &y : sample_parameters(s, 200)) {
    EXPECT_GE(y.minCoeff(), -1.0);
    EXPECT_LE(y.maxCoeff(), 1.0);
  }
}

TEST(Halton, StartIndex) {
  const HaltonSampler a(5, 1), b(5, 4);
  EXPECT_EQ(a.sample(3), b.sample(0));
  EXPECT_THROW(HaltonSampler(5, 0), DomainError);
  EXPECT_THROW(HaltonSampler(0), DimensionError);
  EXPECT_THROW(sample_parameters(a, 0), DomainError);
}

TEST(Halton, Reproducible) {
  const auto s1 = sample_parameters(HaltonSampler(50, 3), 64);
  const auto s2 = sample_parameters(HaltonSampler(50, 3), 64);
  for (std::size_t i = 0; i < s1.size(); ++i) EXPECT_EQ(s1[i], s2[i]);
}

TEST(Halton, MeanOfFirstCoordinate) {
  const auto ys = sample_parameters(HaltonSampler(1), 10000);
  double m = 0.0;
  for (const auto &y : ys) m += y(0);
  EXPECT_LT(std::abs(m / ys.size()), 2e-3);
}

TEST(Halton, MomentsConvergeFasterThanMonteCarlo) {
  const HaltonSampler s(5);
  for (int j = 0; j < 5; ++j) {
    for (int n : {100, 1000, 10000}) {
      double m = 0.0, q = 0.0;
      for (int i = 0; i < n; ++i) {
        const double y = s.sample(i)(j);
        m += y;
        q += y * y;
      }
      m /= n;
      q /= n;
      EXPECT_LT(std::abs(m), 1.0 / std::sqrt(double(n))) << j << " " << n;
      EXPECT_LT(std::abs(q - 1.0 / 3.0), 1.0 / std::sqrt(double(n))) << j << " " << n;
    }
  }
}
