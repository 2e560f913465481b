#pragma once

#include <cstdint>
#include <span>
#include <variant>

#include "mdc/model.hpp"

namespace mdc {

/// Uniform random permutation drawn from the "planner/random" stream of `seed`.
Permutation random_tour(std::uint64_t seed, int m);

/// Where a nearest-neighbor chain starts: a given RP, or the RP nearest a point.
using NnStart = std::variant<int, Point2D>;

/// Greedy nearest-unvisited chain; distance ties go to the lowest index.
Permutation nearest_neighbor_tour(std::span<const Point2D> rp_positions, NnStart start);

/// Cheapest insertion seeded with the two mutually farthest RPs.
Permutation greedy_insertion_tour(std::span<const Point2D> rp_positions, bool closed);

}  // namespace mdc
