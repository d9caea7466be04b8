#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "fixtures.hpp"
#include "tswarp/elastic.hpp"
#include "tswarp/synthgen.hpp"

using namespace tswarp;

namespace {

Signal<double> random_signal(std::mt19937_64& rng, Index n) {
  std::uniform_int_distribution<int> level(-3, 3);
  std::normal_distribution<double> z;
  Vector<double> v(n);
  // Small integer levels make ties between paths common.
  const bool integer = rng() % 2 == 0;
  for (Index j = 0; j < n; ++j) v(j) = integer ? level(rng) : z(rng);
  return Signal<double>(v);
}

}  // namespace

TEST(Dtw, IdenticalSignals) {
  const Signal<double> s{0.5, -1, 2, 3, 0};
  const auto r = dtw(s, s);
  EXPECT_EQ(r.cost, 0.0);
  ASSERT_EQ(r.path.steps.size(), 5U);
  for (Index k = 0; k < 5; ++k) EXPECT_EQ(r.path.steps[static_cast<std::size_t>(k)], std::make_pair(k, k));
  EXPECT_EQ(dtw_weighted(s, s).cost, 0.0);
}

TEST(Dtw, HandExample) {
  const Signal<double> s{0, 1, 2};
  const Signal<double> phi{0, 2};
  EXPECT_EQ(dtw(s, phi).cost, 1.0);
  EXPECT_EQ(dtw_cost(s, phi), 1.0);
  EXPECT_EQ(brute_force_dtw(s, phi, Weighting::none), 1.0);
}

TEST(Dtw, WeightedSingleCell) {
  EXPECT_EQ(dtw_weighted(Signal<double>{0, 1}, Signal<double>{0, 1}).cost, 0.0);
  const auto r = dtw_weighted(Signal<double>{0, 1}, Signal<double>{1, 1});
  ASSERT_EQ(r.path.steps.size(), 2U);
  EXPECT_EQ(r.path.weights[0], 0.0);
  EXPECT_EQ(r.path.weights[1], 2.0);
}

TEST(Dtw, WeightedNeedsEqualLengths) {
  EXPECT_THROW(dtw_weighted(Signal<double>{0, 1, 2}, Signal<double>{0, 1}), std::invalid_argument);
}

TEST(Dtw, MatchesBruteForce) {
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 1000; ++trial) {
    const Index n = static_cast<Index>(2 + rng() % 6);
    const Index m = static_cast<Index>(2 + rng() % 6);
    const auto s = random_signal(rng, n);
    const auto phi = random_signal(rng, m);
    EXPECT_EQ(dtw(s, phi).cost, brute_force_dtw(s, phi, Weighting::none)) << "trial " << trial;
    EXPECT_EQ(dtw_cost(s, phi), brute_force_dtw(s, phi, Weighting::none)) << "trial " << trial;
    const auto sq = random_signal(rng, n);
    EXPECT_EQ(dtw_weighted(s, sq).cost, brute_force_dtw(s, sq, Weighting::arc_length)) << "trial " << trial;
    EXPECT_EQ(dtw_weighted_cost(s, sq), brute_force_dtw(s, sq, Weighting::arc_length)) << "trial " << trial;
  }
}

TEST(Dtw, BruteForceRefusesLargeInstances) {
  const auto s = Signal<double>::sample([](double x) { return x; }, 8);
  EXPECT_THROW(brute_force_dtw(s, s, Weighting::none), std::invalid_argument);
}

TEST(Dtw, PathsAreAdmissibleAndConsistent) {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 300; ++trial) {
    const Index n = static_cast<Index>(2 + rng() % 30);
    const Index m = static_cast<Index>(2 + rng() % 30);
    const auto s = random_signal(rng, n);
    const auto phi = random_signal(rng, m);
    const auto r = dtw(s, phi);
    EXPECT_NO_THROW(check_admissible(r.path, n, m));
    EXPECT_GE(r.path.length(), std::min(n, m) - 1);
    EXPECT_LE(r.path.length(), n + m - 2);
    EXPECT_EQ(evaluate_path(s, phi, r.path, Weighting::none), r.cost);
    EXPECT_GE(r.cost, 0.0);

    const auto q = random_signal(rng, n);
    const auto rw = dtw_weighted(s, q);
    EXPECT_NO_THROW(check_admissible(rw.path, n, n));
    EXPECT_NEAR(evaluate_path(s, q, rw.path, Weighting::arc_length), rw.cost, 1e-9);
    const double inv = 1.0 / static_cast<double>(n - 1);
    for (std::size_t k = 1; k < rw.path.weights.size(); ++k) {
      const double w = rw.path.weights[k];
      EXPECT_TRUE(std::abs(w - inv) < 1e-15 || std::abs(w - 2 * inv) < 1e-15) << w;
    }
  }
}

TEST(Dtw, AnyPathCostsAtLeastTheOptimum) {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 200; ++trial) {
    const Index n = static_cast<Index>(2 + rng() % 10);
    const auto s = random_signal(rng, n);
    const auto phi = random_signal(rng, n);
    // Random staircase from (0,0) to (n-1,n-1).
    DiscretePath<double> p;
    Index i = 0, j = 0;
    p.steps.emplace_back(0, 0);
    while (i < n - 1 || j < n - 1) {
      const auto r = rng() % 3;
      if (i < n - 1 && (r == 0 || j == n - 1)) {
        ++i;
      } else if (j < n - 1 && (r == 1 || i == n - 1)) {
        ++j;
      } else {
        ++i;
        ++j;
      }
      p.steps.emplace_back(i, j);
    }
    EXPECT_GE(evaluate_path(s, phi, p, Weighting::none), dtw_cost(s, phi));
    EXPECT_GE(evaluate_path(s, phi, p, Weighting::arc_length) + 1e-12, dtw_weighted_cost(s, phi));
  }
}

TEST(Dtw, DiagonalPathOnIdenticalSignalsCostsNothing) {
  const Signal<double> s{1, 4, 2};
  DiscretePath<double> p;
  p.steps = {{0, 0}, {1, 1}, {2, 2}};
  EXPECT_EQ(evaluate_path(s, s, p, Weighting::none), 0.0);
}

TEST(Dtw, RejectsMalformedPaths) {
  const Signal<double> s{1, 4, 2};
  DiscretePath<double> p;
  EXPECT_THROW(evaluate_path(s, s, p, Weighting::none), AdmissibilityError);
  p.steps = {{0, 0}, {2, 2}};
  EXPECT_THROW(evaluate_path(s, s, p, Weighting::none), AdmissibilityError);
  p.steps = {{0, 0}, {1, 1}, {1, 1}, {2, 2}};
  EXPECT_THROW(evaluate_path(s, s, p, Weighting::none), AdmissibilityError);
  p.steps = {{0, 1}, {1, 1}, {2, 2}};
  EXPECT_THROW(evaluate_path(s, s, p, Weighting::none), AdmissibilityError);
  p.steps = {{0, 0}, {1, 1}};
  EXPECT_THROW(evaluate_path(s, s, p, Weighting::none), AdmissibilityError);
}

TEST(Dtw, Symmetric) {
  std::mt19937_64 rng(6);
  for (int trial = 0; trial < 200; ++trial) {
    const Index n = static_cast<Index>(2 + rng() % 40);
    const auto a = random_signal(rng, n);
    const auto b = random_signal(rng, n);
    EXPECT_NEAR(dtw_cost(a, b), dtw_cost(b, a), 1e-12);
    EXPECT_NEAR(dtw_weighted_cost(a, b), dtw_weighted_cost(b, a), 1e-12);
  }
}

TEST(Dtw, TiesPreferDiagonalThenAdvancingS) {
  // All mismatches are zero, so every path ties.
  const Signal<double> s{1, 1, 1};
  const Signal<double> phi{1, 1};
  const auto r = dtw(s, phi);
  const std::vector<std::pair<Index, Index>> want{{0, 0}, {1, 0}, {2, 1}};
  EXPECT_EQ(r.path.steps, want);
}

TEST(Dtw, WeightedConvergesUnderRefinement) {
  const auto f = [](double x) { return x; };
  const auto g = [](double x) { return x * x; };
  std::vector<double> v;
  for (Index n : {32, 64, 128, 256}) {
    v.push_back(dtw_weighted_cost(Signal<double>::sample(f, n + 1), Signal<double>::sample(g, n + 1)));
  }
  for (std::size_t k = 2; k < v.size(); ++k) {
    EXPECT_LT(std::abs(v[k] - v[k - 1]), std::abs(v[k - 1] - v[k - 2]));
  }
}

TEST(Dtw, WeightedZeroOnSyntheticClass) {
  const Index points = 501;
  const auto templates = template_catalog<double>(4, points);
  auto rng = make_stream(5, 1);
  for (int k = 0; k < 12; ++k) {
    const auto& s = templates[static_cast<std::size_t>(k) % templates.size()];
    const auto w = random_warp<double>(WarpParams{}, rng);
    EXPECT_LE(dtw_weighted_cost(s, apply_warp(s, w)), 5e-2) << "pair " << k;
  }
}

TEST(Dtw, FloatScalar) {
  const Signal<float> s{0.f, 1.f, 2.f};
  const Signal<float> phi{0.f, 2.f};
  EXPECT_EQ(dtw_cost(s, phi), 1.0f);
}
