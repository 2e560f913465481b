#include "mdc/two_opt.hpp"

#include <algorithm>

namespace mdc {

namespace {
// Absolute slack below which an exchange does not count as an improvement.
constexpr double kImprovementEps = 1e-10;
}  // namespace

double two_opt_delta(std::span<const int> order, std::span<const Point2D> pos, bool closed, int i,
                     int j) {
  const int m = static_cast<int>(order.size());
  const Point2D b = pos[order[i + 1]];
  const Point2D c = pos[order[j]];
  double delta = 0.0;
  const bool has_prev = i >= 0;
  const bool has_next = closed || j + 1 < m;
  if (has_prev) {
    const Point2D a = pos[order[i]];
    delta += distance(a, c) - distance(a, b);
  }
  if (has_next) {
    const Point2D d = pos[order[(j + 1) % m]];
    delta += distance(b, d) - distance(c, d);
  }
  return delta;
}

TwoOptResult two_opt_detailed(Permutation order, std::span<const Point2D> rp_positions,
                              bool closed, int max_passes) {
  require_permutation(order, rp_positions.size());
  TwoOptResult result;
  const int m = static_cast<int>(order.size());
  if (max_passes <= 0) {
    result.order = std::move(order);
    return result;
  }
  if (m < 4 && closed) {
    // Every closed tour on three or fewer points is optimal.
    result.order = std::move(order);
    result.converged = true;
    return result;
  }

  const int first_i = closed ? 0 : -1;
  while (result.passes < max_passes) {
    ++result.passes;
    bool improved = false;
    for (int i = first_i; i < m - 1; ++i) {
      for (int j = i + 2; j < m; ++j) {
        // Closed: edges (i,i+1) and (j,j+1) must be distinct and non-adjacent.
        if (closed && i == 0 && j == m - 1) continue;
        // Open: reversing the whole sequence changes nothing.
        if (!closed && i == -1 && j == m - 1) continue;
        if (two_opt_delta(order, rp_positions, closed, i, j) < -kImprovementEps) {
          std::reverse(order.begin() + (i + 1), order.begin() + (j + 1));
          ++result.exchanges;
          improved = true;
        }
      }
    }
    if (!improved) {
      result.converged = true;
      break;
    }
  }
  result.order = std::move(order);
  return result;
}

}  // namespace mdc
