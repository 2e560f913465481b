#include <gtest/gtest.h>

#include <cmath>
#include <map>

#include "mdc/baselines.hpp"
#include "oracles.hpp"
#include "test_support.hpp"

namespace mdc {
namespace {

TEST(RandomTour, SingleAndReproducible) {
  EXPECT_EQ(random_tour(3, 1), (Permutation{0}));
  EXPECT_EQ(random_tour(99, 10), random_tour(99, 10));
  EXPECT_NE(random_tour(99, 10), random_tour(100, 10));
  EXPECT_TRUE(is_permutation_of(random_tour(5, 17), 17));
  EXPECT_THROW(random_tour(1, 0), std::invalid_argument);
}

TEST(RandomTour, UniformOverThreeElementPermutations) {
  std::map<Permutation, int> counts;
  const int draws = 60000;
  for (int s = 0; s < draws; ++s) ++counts[random_tour(static_cast<std::uint64_t>(s), 3)];
  ASSERT_EQ(counts.size(), 6u);
  const double p = 1.0 / 6.0;
  const double mean = draws * p;
  const double sigma = std::sqrt(draws * p * (1 - p));
  for (const auto& [perm, c] : counts) EXPECT_LE(std::abs(c - mean), 3.0 * sigma);
}

TEST(NearestNeighbor, CollinearFromOneEnd) {
  const std::vector<Point2D> pts{{30, 0}, {0, 0}, {20, 0}, {10, 0}};
  EXPECT_EQ(nearest_neighbor_tour(pts, 1), (Permutation{1, 3, 2, 0}));
  EXPECT_EQ(nearest_neighbor_tour(pts, Point2D{-5, 0}), (Permutation{1, 3, 2, 0}));
}

TEST(NearestNeighbor, TwoPointsStartNearestAnchor) {
  const std::vector<Point2D> pts{{100, 100}, {10, 10}};
  EXPECT_EQ(nearest_neighbor_tour(pts, Point2D{0, 0}), (Permutation{1, 0}));
  EXPECT_THROW(nearest_neighbor_tour(pts, 2), std::invalid_argument);
}

TEST(NearestNeighbor, MatchesExhaustiveGreedyRerun) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const auto pts = testing::random_points(seed, 8);
    // Re-run the greedy chain by scanning every unvisited point with an
    // explicit distance sort.
    std::vector<int> expect{0};
    std::vector<bool> used(8, false);
    used[0] = true;
    for (int step = 1; step < 8; ++step) {
      std::vector<std::pair<double, int>> cand;
      for (int j = 0; j < 8; ++j) {
        if (!used[j]) cand.push_back({std::hypot(pts[j].x - pts[expect.back()].x,
                                                 pts[j].y - pts[expect.back()].y), j});
      }
      std::sort(cand.begin(), cand.end());
      expect.push_back(cand.front().second);
      used[cand.front().second] = true;
    }
    EXPECT_EQ(nearest_neighbor_tour(pts, 0), expect);
  }
}

TEST(GreedyInsertion, SmallCases) {
  EXPECT_EQ(greedy_insertion_tour(std::vector<Point2D>{{1, 1}}, true), (Permutation{0}));
  const std::vector<Point2D> tri{{0, 0}, {3, 0}, {3, 4}};
  const auto t = greedy_insertion_tour(tri, true);
  EXPECT_TRUE(is_permutation_of(t, 3));
  EXPECT_EQ(t, greedy_insertion_tour(tri, true));
}

TEST(GreedyInsertion, SquareGivesPerimeter) {
  const std::vector<Point2D> square{{0, 0}, {1, 1}, {1, 0}, {0, 1}};
  EXPECT_DOUBLE_EQ(tour_length(greedy_insertion_tour(square, true), square, true), 4.0);
}

TEST(GreedyInsertion, BeatsRandomTours) {
  int wins = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto pts = testing::random_points(500 + seed, 8);
    const double gi = tour_length(greedy_insertion_tour(pts, true), pts, true);
    const double rnd = tour_length(random_tour(seed, 8), pts, true);
    wins += gi <= rnd ? 1 : 0;
  }
  EXPECT_GE(wins, 95);
}

TEST(GreedyInsertion, OpenToursValid) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto pts = testing::random_points(seed, 9);
    const auto t = greedy_insertion_tour(pts, false);
    EXPECT_TRUE(is_permutation_of(t, 9));
    EXPECT_LE(tour_length(t, pts, false), 1.6 * oracle::brute_force_tsp(pts, false).length);
  }
}

}  // namespace
}  // namespace mdc
