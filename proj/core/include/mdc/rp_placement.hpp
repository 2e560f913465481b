#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "mdc/deployment.hpp"
#include "mdc/model.hpp"

namespace mdc {

/// Selected rendezvous points plus the sensor association.
///
/// `assoc`, `coverage_flag` and `sensor_distance_m` are indexed by the sensor's
/// position in NetworkScenario::sensors.
struct RpPlan {
  std::vector<Point2D> rp_positions;
  std::vector<int> assoc;
  std::vector<double> rp_rate_bps;
  std::vector<bool> coverage_flag;
  std::vector<double> sensor_distance_m;

  /// Candidate index chosen at each greedy iteration.
  std::vector<int> selected_candidate;
  /// Offered load over the uncovered set at the time of each selection.
  std::vector<double> selected_load_bps;
  /// Iteration from which the uncovered set offered no load (M when never).
  std::size_t fallback_from = 0;

  std::size_t size() const { return rp_positions.size(); }
};

/// Indices (into `sensors`) of the sensors in `uncovered` within `r_c` of `c`, boundary inclusive.
std::vector<int> coverage_neighborhood(Point2D c, std::span<const int> uncovered,
                                       std::span<const SensorNode> sensors, double r_c);

/// Sum of rates over coverage_neighborhood(c, uncovered, r_c).
double offered_load(Point2D c, std::span<const int> uncovered,
                    std::span<const SensorNode> sensors, double r_c);

/// Nearest-RP association; distance ties go to the lowest RP index.
std::vector<int> associate(const NetworkScenario& scenario, std::span<const Point2D> rp_positions);

/// Greedy load-aware placement of m RPs followed by nearest-RP association.
///
/// Each iteration takes the candidate with the largest offered load over the
/// still-uncovered sensors (lowest candidate index on ties) and removes its
/// neighborhood. Once no candidate offers uncovered load, the remaining RPs go
/// to the not-yet-selected candidates with the largest load over all sensors.
RpPlan select_rps(const NetworkScenario& scenario, const CandidateSet& candidates, int m);

/// Recompute Lambda_j, coverage flags and distances for a given association.
void fill_plan_loads(const NetworkScenario& scenario, RpPlan& plan);

}  // namespace mdc
