#include "mdc/planner.hpp"

#include <stdexcept>

#include "mdc/baselines.hpp"
#include "mdc/objective.hpp"
#include "mdc/two_opt.hpp"

namespace mdc {

namespace {

constexpr std::string_view kRefineSuffix = "+2opt";

std::string_view base_name(std::string_view name) {
  if (name.size() > kRefineSuffix.size() && name.ends_with(kRefineSuffix))
    return name.substr(0, name.size() - kRefineSuffix.size());
  return name;
}

class DiffusionPlanner final : public TourPlanner {
 public:
  DiffusionPlanner(std::string name, DiffusionConfig config)
      : name_(std::move(name)), config_(std::move(config)) {}

  std::string name() const override { return name_; }

  PlannerOutput plan(const PlanningContext& ctx) const override {
    TourPlan tp = plan_tour(ctx.seed, ctx.scenario, ctx.plan, ctx.weights, config_, ctx.observer);
    return {std::move(tp.order), std::move(tp.sampled_order), std::move(tp.trajectory)};
  }

 private:
  std::string name_;
  DiffusionConfig config_;
};

class BaselinePlanner final : public TourPlanner {
 public:
  BaselinePlanner(std::string name, std::string_view kind, bool refine, int max_passes)
      : name_(std::move(name)), kind_(kind), refine_(refine), max_passes_(max_passes) {}

  std::string name() const override { return name_; }

  PlannerOutput plan(const PlanningContext& ctx) const override {
    const auto& pos = ctx.plan.rp_positions;
    Permutation order;
    if (kind_ == "nn") {
      order = nearest_neighbor_tour(pos, ctx.scenario.sink);
    } else if (kind_ == "greedy_insertion") {
      order = greedy_insertion_tour(pos, ctx.scenario.closed_tour);
    } else {
      order = random_tour(ctx.seed, static_cast<int>(pos.size()));
    }
    PlannerOutput out;
    out.unrefined_order = order;
    out.order = refine_ ? two_opt(std::move(order), pos, ctx.scenario.closed_tour, max_passes_)
                        : std::move(order);
    return out;
  }

 private:
  std::string name_;
  std::string kind_;
  bool refine_;
  int max_passes_;
};

}  // namespace

bool is_known_planner(std::string_view name) {
  const auto base = base_name(name);
  return base == "diffusion" || base == "nn" || base == "greedy_insertion" || base == "random";
}

std::unique_ptr<TourPlanner> make_planner(std::string_view name, const DiffusionConfig& config) {
  if (!is_known_planner(name))
    throw std::invalid_argument("unknown planner '" + std::string(name) + "'");
  const auto base = base_name(name);
  const bool suffixed = base.size() != name.size();
  if (base == "diffusion") {
    DiffusionConfig c = config;
    c.refine = c.refine || suffixed;
    return std::make_unique<DiffusionPlanner>(std::string(name), std::move(c));
  }
  return std::make_unique<BaselinePlanner>(std::string(name), base, suffixed,
                                           config.two_opt_max_passes);
}

TourEvaluation evaluate_tour(const NetworkScenario& scenario, const RpPlan& plan,
                             const Permutation& order, const IntentWeights& weights,
                             const ServiceOptions& service_options,
                             const MetricsOptions& metrics_options) {
  TourEvaluation ev;
  const double t_tr =
      travel_time(order, plan.rp_positions, scenario.mdc_speed_mps, scenario.closed_tour);
  const auto capacity = scenario.upload_rates(plan.size());
  ev.service = solve_dwell(plan, t_tr, capacity, service_options);
  ev.schedule = make_schedule(order, plan, scenario, ev.service);
  ev.report = full_report(scenario, plan, ev.schedule, ev.service, metrics_options);
  ev.objective = objective(ev.schedule, weights, ev.report);
  return ev;
}

}  // namespace mdc
