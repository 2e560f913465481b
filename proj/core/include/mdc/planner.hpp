#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mdc/diffusion.hpp"
#include "mdc/metrics.hpp"
#include "mdc/model.hpp"
#include "mdc/rp_placement.hpp"
#include "mdc/service.hpp"

namespace mdc {

struct PlanningContext {
  const NetworkScenario& scenario;
  const RpPlan& plan;
  const IntentWeights& weights;
  std::uint64_t seed = 0;
  /// Receives diffusion snapshots in meters; ignored by the baselines.
  SnapshotObserver observer;
};

struct PlannerOutput {
  Permutation order;
  /// Order before 2-opt (equal to `order` when no refinement ran).
  Permutation unrefined_order;
  std::optional<WaypointTrajectory> trajectory;
};

/// Common surface for every tour constructor so they share one evaluation path.
class TourPlanner {
 public:
  virtual ~TourPlanner() = default;
  virtual std::string name() const = 0;
  virtual PlannerOutput plan(const PlanningContext& ctx) const = 0;
};

/// Recognized names: diffusion, nn, greedy_insertion, random, each optionally
/// suffixed with "+2opt" (diffusion always refines unless config.refine is off).
bool is_known_planner(std::string_view name);
std::unique_ptr<TourPlanner> make_planner(std::string_view name, const DiffusionConfig& config);

struct TourEvaluation {
  TourSchedule schedule;
  ServiceSolution service;
  MetricReport report;
  double objective = 0.0;
};

/// Travel time, dwell fixed point, metrics and objective for a given order.
TourEvaluation evaluate_tour(const NetworkScenario& scenario, const RpPlan& plan,
                             const Permutation& order, const IntentWeights& weights,
                             const ServiceOptions& service_options = {},
                             const MetricsOptions& metrics_options = {});

}  // namespace mdc
