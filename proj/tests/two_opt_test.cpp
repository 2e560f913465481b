#include <gtest/gtest.h>

#include <cmath>
#include <numeric>

#include "mdc/baselines.hpp"
#include "mdc/two_opt.hpp"
#include "oracles.hpp"
#include "test_support.hpp"

namespace mdc {
namespace {

TEST(TwoOpt, UncrossesSquare) {
  const std::vector<Point2D> square{{0, 0}, {1, 0}, {1, 1}, {0, 1}};
  const Permutation crossed{0, 2, 1, 3};
  EXPECT_DOUBLE_EQ(tour_length(crossed, square, true), 2.0 + 2.0 * std::sqrt(2.0));
  const auto fixed = two_opt(crossed, square, true);
  EXPECT_DOUBLE_EQ(tour_length(fixed, square, true), 4.0);
  EXPECT_DOUBLE_EQ(oracle::brute_force_tsp(square, true).length, 4.0);
}

TEST(TwoOpt, TriangleUnchanged) {
  const std::vector<Point2D> tri{{0, 0}, {3, 0}, {3, 4}};
  EXPECT_EQ(two_opt({2, 0, 1}, tri, true), (Permutation{2, 0, 1}));
  EXPECT_EQ(two_opt({0, 1, 2}, tri, false), (Permutation{0, 1, 2}));
}

TEST(TwoOpt, ZeroPassesReturnsInput) {
  const std::vector<Point2D> square{{0, 0}, {1, 0}, {1, 1}, {0, 1}};
  const auto r = two_opt_detailed({0, 2, 1, 3}, square, true, 0);
  EXPECT_EQ(r.order, (Permutation{0, 2, 1, 3}));
  EXPECT_EQ(r.passes, 0);
  EXPECT_FALSE(r.converged);
}

TEST(TwoOpt, OpenTourFixesEndpoints) {
  // Visiting the far point in the middle of an open path is wasteful.
  const std::vector<Point2D> line{{0, 0}, {10, 0}, {1, 0}, {2, 0}};
  const auto out = two_opt({0, 1, 2, 3}, line, false);
  EXPECT_DOUBLE_EQ(tour_length(out, line, false), 10.0);
}

TEST(TwoOptProperty, NeverLengthensAndEndsTwoOptimal) {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const auto pts = testing::random_points(seed, 12);
    for (bool closed : {true, false}) {
      const Permutation start = random_tour(seed, 12);
      const auto r = two_opt_detailed(start, pts, closed);
      ASSERT_TRUE(r.converged);
      EXPECT_LE(tour_length(r.order, pts, closed), tour_length(start, pts, closed) + 1e-12);
      const int m = 12;
      for (int i = closed ? 0 : -1; i < m - 1; ++i) {
        for (int j = i + 2; j < m; ++j) {
          if (closed && i == 0 && j == m - 1) continue;
          if (!closed && i == -1 && j == m - 1) continue;
          EXPECT_GE(two_opt_delta(r.order, pts, closed, i, j), -1e-9);
        }
      }
    }
  }
}

TEST(TwoOpt, NearestNeighborPlusTwoOptNearOptimalOnEightPoints) {
  double ratio_sum = 0.0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto pts = testing::random_points(1000 + seed, 8);
    const auto order = two_opt(nearest_neighbor_tour(pts, 0), pts, true);
    const double ratio =
        tour_length(order, pts, true) / oracle::brute_force_tsp(pts, true).length;
    EXPECT_LE(ratio, 1.25) << seed;
    EXPECT_GE(ratio, 1.0 - 1e-12);
    ratio_sum += ratio;
  }
  EXPECT_LE(ratio_sum / 100.0, 1.05);
}

}  // namespace
}  // namespace mdc
