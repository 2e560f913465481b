#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace mdc::oracle {

TspSolution brute_force_tsp(std::span<const Point2D> points, bool closed) {
  const int m = static_cast<int>(points.size());
  if (m < 1) throw std::invalid_argument("brute_force_tsp: no points");
  if (m > 10) throw std::invalid_argument("brute_force_tsp: at most 10 points");

  auto leg = [&](int a, int b) {
    return std::sqrt((points[a].x - points[b].x) * (points[a].x - points[b].x) +
                     (points[a].y - points[b].y) * (points[a].y - points[b].y));
  };

  std::vector<int> perm(m);
  std::iota(perm.begin(), perm.end(), 0);
  TspSolution best{perm, std::numeric_limits<double>::infinity()};
  // Closed tours are rotation invariant, so only permute the tail.
  const auto first = closed ? perm.begin() + 1 : perm.begin();
  do {
    double len = 0.0;
    for (int k = 0; k + 1 < m; ++k) len += leg(perm[k], perm[k + 1]);
    if (closed && m > 1) len += leg(perm[m - 1], perm[0]);
    if (len < best.length) best = {perm, len};
  } while (std::next_permutation(first, perm.end()));
  return best;
}

}  // namespace mdc::oracle
