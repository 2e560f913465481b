#pragma once

#include <span>
#include <vector>

#include "mdc/geometry.hpp"

namespace mdc::oracle {

struct TspSolution {
  std::vector<int> order;
  double length = 0.0;
};

/// Exhaustive optimum over all visiting orders (closed tours fix the first
/// point). Refuses more than 10 points.
TspSolution brute_force_tsp(std::span<const Point2D> points, bool closed);

}  // namespace mdc::oracle
