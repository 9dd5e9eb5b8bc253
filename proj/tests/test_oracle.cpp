#include <gtest/gtest.h>

#include "kronecker/bounds.hpp"
#include "kronecker/oracle.hpp"

using namespace kronecker;

namespace {

double mid(const AlphaInterval& a) { return a.midpoint().to_double(); }

}  // namespace

TEST(OracleDistance, Examples) {
  const std::vector<std::int64_t> s3{1, 2, 3};
  const std::vector<Rational> zeros(3, Rational(0));
  EXPECT_EQ(oracle_distance(s3, zeros), Rational(0));

  const std::vector<std::int64_t> s1{1};
  const std::vector<Rational> half{Rational(1, 2)};
  EXPECT_EQ(oracle_distance(s1, half), Rational(0));

  const std::vector<std::int64_t> s2{-1, 1};
  const std::vector<Rational> t{Rational(0), Rational(1, 2)};
  EXPECT_EQ(oracle_distance(s2, t), Rational(1, 4));
  const std::vector<Rational> opposite{Rational(1, 5), Rational(4, 5)};
  EXPECT_EQ(oracle_distance(s2, opposite), Rational(0));
}

TEST(OracleDistance, GridModeIsCloseToExact) {
  const std::vector<std::int64_t> s{2, 3, 7};
  const std::vector<Rational> t{Rational(1, 3), Rational(5, 7), Rational(0)};
  OracleConfig cfg;
  cfg.x_grid = 512;
  const Rational exact = oracle_distance(s, t);
  const Rational approx = oracle_distance(s, t, cfg);
  EXPECT_GE(approx.to_double(), exact.to_double() - 1e-12);
  EXPECT_LE(approx.to_double() - exact.to_double(), 7.0 / (2 * 512));
}

TEST(OracleDistance, Errors) {
  const std::vector<std::int64_t> bad{0, 1};
  const std::vector<Rational> t(2, Rational(0));
  EXPECT_THROW(oracle_distance(bad, t), ZeroElement);
  const std::vector<std::int64_t> four{1, 2, 3, 4};
  EXPECT_THROW(oracle_alpha(four), InvalidArgument);
}

TEST(OracleAlpha, Examples) {
  EXPECT_NEAR(mid(oracle_alpha({1, 2, 3})), 0.25, 5e-3);
  EXPECT_NEAR(mid(oracle_alpha({-1, 1, 2})), 1.0 / 3.0, 5e-3);
  EXPECT_NEAR(mid(oracle_alpha({1, 2})), 1.0 / 6.0, 5e-3);
}

TEST(OracleAlpha, EnclosureOrdered) {
  const auto a = oracle_alpha({2, 3, 7});
  EXPECT_LE(a.lo, a.hi);
  EXPECT_EQ(a.method, "oracle");
}

TEST(OracleAlpha, FinerGridStillEnclosesQuarter) {
  OracleConfig coarse;
  coarse.target_grid = 32;
  OracleConfig fine;
  fine.target_grid = 64;
  const auto a = oracle_alpha({1, 2, 3}, coarse);
  const auto b = oracle_alpha({1, 2, 3}, fine);
  for (const auto& iv : {a, b}) {
    EXPECT_LE(iv.lo.to_double(), 0.25 + 1e-12);
    EXPECT_GE(iv.hi.to_double(), 0.25 - 1e-12);
  }
  EXPECT_LE(b.hi.to_double(), a.hi.to_double() + 1e-6);
}

TEST(OracleAlpha, SignAndScaleInvariance) {
  const double base = mid(oracle_alpha({1, 3, 4}));
  EXPECT_NEAR(mid(oracle_alpha({-1, 3, 4})), base, 2e-3);
  EXPECT_NEAR(mid(oracle_alpha({1, -3, 4})), base, 2e-3);
  EXPECT_NEAR(mid(oracle_alpha({-1, -3, -4})), base, 2e-3);
  EXPECT_NEAR(mid(oracle_alpha({2, 6, 8})), base, 2e-3);
}

TEST(OracleAlpha, PairsMatchClosedForm) {
  for (std::int64_t a = -6; a <= 6; ++a) {
    for (std::int64_t b = a + 1; b <= 6; ++b) {
      if (a == 0 || b == 0) continue;
      EXPECT_NEAR(mid(oracle_alpha({a, b})), alpha_pair(a, b).to_double(), 5e-3) << a << ' ' << b;
    }
  }
}

TEST(OracleAlpha, NonDistinctFamilies) {
  for (std::int64_t n = 1; n <= 3; ++n) {
    for (std::int64_t k = 1; k <= 9; ++k) {
      if (k == n) continue;
      const double v = mid(oracle_alpha({-n, n, k}));
      if (k == 2 * n) {
        EXPECT_NEAR(v, 1.0 / 3.0, 5e-3);
      } else {
        EXPECT_LE(v, 0.3 + 5e-3) << n << ' ' << k;
      }
    }
  }
}

TEST(OracleConfigCheck, Validation) {
  OracleConfig cfg;
  cfg.shrink = Rational(2, 3);
  EXPECT_THROW(cfg.validate(), InvalidArgument);
  cfg = {};
  cfg.target_grid = 4;
  EXPECT_THROW(cfg.validate(), InvalidArgument);
}
