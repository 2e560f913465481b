#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "mdc/geometry.hpp"
#include "mdc/rng.hpp"

namespace mdc::testing {

inline std::vector<Point2D> random_points(std::uint64_t seed, int m, double side = 100.0) {
  StreamRng rng = StreamRng(seed).derive("test/points");
  std::vector<Point2D> pts;
  for (int i = 0; i < m; ++i) pts.push_back({rng.uniform() * side, rng.uniform() * side});
  return pts;
}

inline bool near_rel(double a, double b, double rel) {
  return std::abs(a - b) <= rel * std::max({1.0, std::abs(a), std::abs(b)});
}

}  // namespace mdc::testing
