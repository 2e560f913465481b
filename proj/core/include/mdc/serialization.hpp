#pragma once

#include <string>
#include <string_view>

#include "mdc/metrics.hpp"
#include "mdc/model.hpp"
#include "mdc/rp_placement.hpp"

namespace mdc {

inline constexpr std::string_view kScenarioSchema = "mdc.scenario/1";
inline constexpr std::string_view kPlanSchema = "mdc.rp_plan/1";
inline constexpr std::string_view kReportSchema = "mdc.metric_report/1";

/// JSON documents in SI units with a "schema" tag. Output is deterministic:
/// equal inputs give equal bytes.
std::string scenario_to_json(const NetworkScenario& scenario);
/// Throws std::invalid_argument on malformed documents or a schema mismatch.
NetworkScenario scenario_from_json(std::string_view text);

std::string plan_to_json(const RpPlan& plan);
RpPlan plan_from_json(std::string_view text);

std::string report_to_json(const MetricReport& report);

/// Shortest round-trip decimal form of a double, used for every CSV cell.
std::string format_number(double v);

}  // namespace mdc
