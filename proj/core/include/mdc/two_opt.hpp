#pragma once

#include <span>

#include "mdc/model.hpp"

namespace mdc {

struct TwoOptResult {
  Permutation order;
  int passes = 0;
  int exchanges = 0;
  /// True when the last pass found no improving exchange.
  bool converged = false;
};

/// First-improvement 2-opt with a lexicographic (i, j) scan.
///
/// A pass scans every segment reversal once, applying each improving exchange as
/// soon as it is found. Stops after a pass without improvement or after
/// max_passes passes. Open tours also consider reversing a prefix or suffix.
TwoOptResult two_opt_detailed(Permutation order, std::span<const Point2D> rp_positions,
                              bool closed, int max_passes = 64);

inline Permutation two_opt(Permutation order, std::span<const Point2D> rp_positions, bool closed,
                           int max_passes = 64) {
  return two_opt_detailed(std::move(order), rp_positions, closed, max_passes).order;
}

/// Length change of reversing order[i+1 .. j]; i == -1 means a prefix reversal (open tours).
double two_opt_delta(std::span<const int> order, std::span<const Point2D> rp_positions,
                     bool closed, int i, int j);

}  // namespace mdc
