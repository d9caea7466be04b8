#include <gtest/gtest.h>

#include <cmath>

#include "fixtures.hpp"
#include "tswarp/monotone.hpp"

using namespace tswarp;
using tswarp::testing::vec;

TEST(Monotone, EvaluatesKnotsAndClamps) {
  const MonotoneFunction<double> f(vec({0, 0.5, 1}), vec({0, 0.2, 1}));
  EXPECT_EQ(f(0.5), 0.2);
  EXPECT_DOUBLE_EQ(f(0.25), 0.1);
  EXPECT_EQ(f(-3), 0.0);
  EXPECT_EQ(f(7), 1.0);
}

TEST(Monotone, RejectsBadKnots) {
  EXPECT_THROW(MonotoneFunction<double>(vec({0, 0, 1}), vec({0, 0.5, 1})), std::invalid_argument);
  EXPECT_THROW(MonotoneFunction<double>(vec({0, 0.5, 1}), vec({0, 0.6, 0.5})), std::invalid_argument);
  EXPECT_THROW(MonotoneFunction<double>(vec({0, 1}), vec({0, 1}), vec({0, 1.5})), std::invalid_argument);
}

TEST(Monotone, JumpSemantics) {
  // 0.1 just before 0.5, 0.3 at 0.5.
  const MonotoneFunction<double> f(vec({0, 0.5, 1}), vec({0, 0.3, 1}), vec({0, 0.1, 1}));
  EXPECT_EQ(f(0.5), 0.3);
  EXPECT_EQ(f.left_limit(0.5), 0.1);
  EXPECT_FALSE(f.continuous_at(0.5));
  EXPECT_TRUE(f.continuous_at(0.25));
}

TEST(Monotone, InverseOfIdentity) {
  const MonotoneFunction<double> f(vec({0, 1}), vec({0, 1}));
  const auto g = generalized_inverse(f);
  for (double y : {0.0, 0.1, 0.5, 0.99, 1.0}) EXPECT_NEAR(g(y), y, 1e-15);
}

TEST(Monotone, InverseOfSquare) {
  const auto grid = uniform_grid<double>(2001);
  const MonotoneFunction<double> f(grid, grid.array().square().matrix());
  const auto g = generalized_inverse(f);
  for (double y : {0.01, 0.1, 0.25, 0.5, 0.81, 1.0}) {
    EXPECT_NEAR(g(y), std::sqrt(y), 1e-3) << "y = " << y;
    EXPECT_NEAR(quantile(f, y), std::sqrt(y), 1e-3) << "y = " << y;
  }
}

TEST(Monotone, LeadingFlatRegionCollapses) {
  // F = 0 on [0, 0.5), 2(x - 0.5) on [0.5, 1].
  const MonotoneFunction<double> f(vec({0, 0.5, 1}), vec({0, 0, 1}));
  for (double y : {0.0, 0.2, 0.5, 0.9}) {
    EXPECT_NEAR(quantile(f, y), 0.5 + y / 2, 1e-15);
    EXPECT_NEAR(generalized_inverse(f)(y), 0.5 + y / 2, 1e-15);
  }
  EXPECT_EQ(quantile(f, 1.0), 1.0);
  EXPECT_EQ(generalized_inverse(f)(1.0), 1.0);
}

TEST(Monotone, EmptySetInfimumIsUpperEnd) {
  const MonotoneFunction<double> f(vec({0, 0.5, 1}), vec({0, 1, 1}));
  EXPECT_EQ(quantile(f, 1.0), 1.0);
  EXPECT_EQ(quantile(f, 2.0), 1.0);
  EXPECT_EQ(quantile(f, -1.0), 0.0);
}

TEST(Monotone, InteriorFlatBecomesJump) {
  const MonotoneFunction<double> f(vec({0, 0.25, 0.75, 1}), vec({0, 0.5, 0.5, 1}));
  const auto g = generalized_inverse(f);
  EXPECT_EQ(g(0.5), 0.75);
  EXPECT_EQ(g.left_limit(0.5), 0.25);
  EXPECT_EQ(quantile(f, 0.5), 0.75);
}

TEST(Monotone, JumpBecomesFlat) {
  const MonotoneFunction<double> f(vec({0, 0.5, 1}), vec({0, 0.8, 1}), vec({0, 0.2, 1}));
  for (double y : {0.2, 0.4, 0.6, 0.79}) EXPECT_NEAR(quantile(f, y), 0.5, 1e-15) << y;
  EXPECT_NEAR(quantile(f, 0.1), 0.25, 1e-15);
  EXPECT_NEAR(quantile(f, 0.9), 0.75, 1e-15);
}

TEST(Monotone, InverseLawsOnCatalog) {
  const auto catalog = tswarp::testing::monotone_catalog();
  ASSERT_GE(catalog.size(), 20U);
  for (std::size_t i = 0; i < catalog.size(); ++i) {
    const auto r = tswarp::testing::check_inverse_laws(catalog[i]);
    EXPECT_LE(r.inverse_of_inverse, 1e-9) << "function " << i;
    EXPECT_LE(r.below_identity, 1e-9) << "function " << i;
    EXPECT_LE(r.right_increasing, 1e-9) << "function " << i;
  }
}

TEST(Monotone, QuantileAgreesWithInverseFunction) {
  for (const auto& f : tswarp::testing::monotone_catalog()) {
    const auto g = generalized_inverse(f);
    const double lo = f.knots_y()(0), hi = f.knots_y()(f.size() - 1);
    for (int k = 0; k <= 500; ++k) {
      const double y = lo + (hi - lo) * k / 500.0;
      EXPECT_NEAR(quantile(f, y), g(y), 1e-12) << "y = " << y;
    }
  }
}
