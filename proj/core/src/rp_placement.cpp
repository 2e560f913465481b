#include "mdc/rp_placement.hpp"

#include <limits>
#include <stdexcept>
#include <string>

namespace mdc {

std::vector<int> coverage_neighborhood(Point2D c, std::span<const int> uncovered,
                                       std::span<const SensorNode> sensors, double r_c) {
  if (!(r_c > 0.0)) throw std::invalid_argument("coverage_neighborhood: r_c must be > 0");
  std::vector<int> out;
  const double r2 = r_c * r_c;
  for (int i : uncovered) {
    if (squared_distance(sensors[i].position, c) <= r2) out.push_back(i);
  }
  return out;
}

double offered_load(Point2D c, std::span<const int> uncovered,
                    std::span<const SensorNode> sensors, double r_c) {
  if (!(r_c > 0.0)) throw std::invalid_argument("offered_load: r_c must be > 0");
  double load = 0.0;
  const double r2 = r_c * r_c;
  for (int i : uncovered) {
    if (squared_distance(sensors[i].position, c) <= r2) load += sensors[i].rate_bps;
  }
  return load;
}

std::vector<int> associate(const NetworkScenario& scenario, std::span<const Point2D> rp_positions) {
  if (rp_positions.empty()) throw std::invalid_argument("associate: no RPs");
  std::vector<int> assoc(scenario.sensors.size(), 0);
  for (std::size_t i = 0; i < scenario.sensors.size(); ++i) {
    const Point2D p = scenario.sensors[i].position;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < rp_positions.size(); ++j) {
      const double d2 = squared_distance(p, rp_positions[j]);
      if (d2 < best) {
        best = d2;
        assoc[i] = static_cast<int>(j);
      }
    }
  }
  return assoc;
}

void fill_plan_loads(const NetworkScenario& scenario, RpPlan& plan) {
  const std::size_t n = scenario.sensors.size();
  if (plan.assoc.size() != n) throw std::invalid_argument("plan association size mismatch");
  plan.rp_rate_bps.assign(plan.rp_positions.size(), 0.0);
  plan.coverage_flag.assign(n, false);
  plan.sensor_distance_m.assign(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const int j = plan.assoc[i];
    if (j < 0 || static_cast<std::size_t>(j) >= plan.rp_positions.size())
      throw std::invalid_argument("plan association references unknown RP");
    const double d = distance(scenario.sensors[i].position, plan.rp_positions[j]);
    plan.rp_rate_bps[j] += scenario.sensors[i].rate_bps;
    plan.sensor_distance_m[i] = d;
    plan.coverage_flag[i] = d <= scenario.comm_range_m;
  }
}

RpPlan select_rps(const NetworkScenario& scenario, const CandidateSet& candidates, int m) {
  if (m < 1) throw std::invalid_argument("select_rps: m must be >= 1");
  if (candidates.points.empty()) throw std::invalid_argument("select_rps: empty candidate set");
  if (static_cast<std::size_t>(m) > candidates.points.size())
    throw std::invalid_argument("select_rps: m = " + std::to_string(m) + " exceeds " +
                                std::to_string(candidates.points.size()) + " candidates");

  const auto& sensors = scenario.sensors;
  const double r_c = scenario.comm_range_m;
  std::vector<int> uncovered(sensors.size());
  for (std::size_t i = 0; i < sensors.size(); ++i) uncovered[i] = static_cast<int>(i);
  std::vector<int> everyone = uncovered;
  std::vector<bool> taken(candidates.points.size(), false);

  RpPlan plan;
  plan.fallback_from = static_cast<std::size_t>(m);
  bool fallback = false;

  for (int iter = 0; iter < m; ++iter) {
    int best = -1;
    double best_load = -1.0;
    if (!fallback) {
      for (std::size_t c = 0; c < candidates.points.size(); ++c) {
        const double w = offered_load(candidates.points[c], uncovered, sensors, r_c);
        if (w > best_load) {
          best_load = w;
          best = static_cast<int>(c);
        }
      }
      if (best_load <= 0.0) {
        fallback = true;
        plan.fallback_from = static_cast<std::size_t>(iter);
      }
    }
    if (fallback) {
      best = -1;
      double best_all = -1.0;
      for (std::size_t c = 0; c < candidates.points.size(); ++c) {
        if (taken[c]) continue;
        const double w = offered_load(candidates.points[c], everyone, sensors, r_c);
        if (w > best_all) {
          best_all = w;
          best = static_cast<int>(c);
        }
      }
      best_load = 0.0;
    }

    const Point2D chosen = candidates.points[best];
    taken[best] = true;
    plan.rp_positions.push_back(chosen);
    plan.selected_candidate.push_back(best);
    plan.selected_load_bps.push_back(best_load);

    if (!fallback) {
      const auto covered = coverage_neighborhood(chosen, uncovered, sensors, r_c);
      std::vector<int> rest;
      rest.reserve(uncovered.size() - covered.size());
      std::size_t k = 0;
      for (int i : uncovered) {
        if (k < covered.size() && covered[k] == i) {
          ++k;
        } else {
          rest.push_back(i);
        }
      }
      uncovered = std::move(rest);
    }
  }

  plan.assoc = associate(scenario, plan.rp_positions);
  fill_plan_loads(scenario, plan);
  return plan;
}

}  // namespace mdc
