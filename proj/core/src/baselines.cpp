#include "mdc/baselines.hpp"

#include <limits>
#include <numeric>
#include <stdexcept>

#include "mdc/rng.hpp"

namespace mdc {

Permutation random_tour(std::uint64_t seed, int m) {
  if (m < 1) throw std::invalid_argument("random_tour: m must be >= 1");
  Permutation order(m);
  std::iota(order.begin(), order.end(), 0);
  StreamRng rng = StreamRng(seed).derive("planner/random");
  for (int i = m - 1; i > 0; --i) {
    const auto k = static_cast<int>(rng.below(static_cast<std::uint64_t>(i) + 1));
    std::swap(order[i], order[k]);
  }
  return order;
}

Permutation nearest_neighbor_tour(std::span<const Point2D> pos, NnStart start) {
  const int m = static_cast<int>(pos.size());
  if (m < 1) throw std::invalid_argument("nearest_neighbor_tour: no RPs");

  auto nearest_to = [&](Point2D p, const std::vector<bool>& used) {
    int best = -1;
    double best_d = std::numeric_limits<double>::infinity();
    for (int j = 0; j < m; ++j) {
      if (used[j]) continue;
      const double d = squared_distance(p, pos[j]);
      if (d < best_d) {
        best_d = d;
        best = j;
      }
    }
    return best;
  };

  std::vector<bool> used(m, false);
  int current = 0;
  if (const int* idx = std::get_if<int>(&start)) {
    if (*idx < 0 || *idx >= m) throw std::invalid_argument("nearest_neighbor_tour: bad start");
    current = *idx;
  } else {
    current = nearest_to(std::get<Point2D>(start), used);
  }

  Permutation order;
  order.reserve(m);
  order.push_back(current);
  used[current] = true;
  for (int step = 1; step < m; ++step) {
    current = nearest_to(pos[current], used);
    order.push_back(current);
    used[current] = true;
  }
  return order;
}

Permutation greedy_insertion_tour(std::span<const Point2D> pos, bool closed) {
  const int m = static_cast<int>(pos.size());
  if (m < 1) throw std::invalid_argument("greedy_insertion_tour: no RPs");
  if (m == 1) return {0};

  int fa = 0;
  int fb = 1;
  double far = -1.0;
  for (int a = 0; a < m; ++a) {
    for (int b = a + 1; b < m; ++b) {
      const double d = squared_distance(pos[a], pos[b]);
      if (d > far) {
        far = d;
        fa = a;
        fb = b;
      }
    }
  }

  Permutation tour{fa, fb};
  std::vector<bool> in_tour(m, false);
  in_tour[fa] = in_tour[fb] = true;

  // Cost of inserting k before tour[p]; p == size() appends (open only).
  auto insertion_cost = [&](int k, std::size_t p) {
    const std::size_t n = tour.size();
    const Point2D q = pos[k];
    if (!closed) {
      if (p == 0) return distance(q, pos[tour.front()]);
      if (p == n) return distance(pos[tour.back()], q);
    } else if (p == 0) {
      p = n;  // the wrap edge (back -> front)
    }
    const Point2D prev = pos[tour[p - 1]];
    const Point2D next = pos[tour[p % n]];
    return distance(prev, q) + distance(q, next) - distance(prev, next);
  };

  while (static_cast<int>(tour.size()) < m) {
    int best_k = -1;
    std::size_t best_p = 0;
    double best_cost = std::numeric_limits<double>::infinity();
    const std::size_t slots = closed ? tour.size() : tour.size() + 1;
    for (int k = 0; k < m; ++k) {
      if (in_tour[k]) continue;
      for (std::size_t p = 0; p < slots; ++p) {
        // Closed slot 0 is the wrap edge; insert it at the end to keep tour[0] fixed.
        const double c = insertion_cost(k, p);
        if (c < best_cost) {
          best_cost = c;
          best_k = k;
          best_p = p;
        }
      }
    }
    if (closed && best_p == 0) best_p = tour.size();
    tour.insert(tour.begin() + static_cast<std::ptrdiff_t>(best_p), best_k);
    in_tour[best_k] = true;
  }
  return tour;
}

}  // namespace mdc
