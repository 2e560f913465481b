#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "mdc/deployment.hpp"
#include "mdc/diffusion.hpp"
#include "mdc/metrics.hpp"
#include "mdc/rp_placement.hpp"
#include "mdc/service.hpp"

namespace mdc {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NotFoundError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when a computed result breaks a library invariant.
class InvariantViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

enum class RpCountRule { fixed, proportional };
enum class ImportanceRule { uniform, load };

struct CampaignConfig {
  ScenarioTemplate scenario;
  std::vector<int> sweep_n{100};
  int m_rps = 15;
  RpCountRule m_rule = RpCountRule::fixed;
  int seeds = 30;
  std::uint64_t base_seed = 1;
  /// Label that selects an independent family of deployments.
  std::string seed_set = "wsn1";
  CandidateMode candidates = CandidateMode::grid(10.0);
  std::vector<std::string> planners{"diffusion", "nn", "nn+2opt", "greedy_insertion", "random"};
  DiffusionConfig diffusion;
  IntentWeights weights;
  ImportanceRule importance = ImportanceRule::load;
  MetricsOptions metrics;
  ServiceOptions service;

  std::filesystem::path output_dir = "results";
  std::string runs_csv = "runs.csv";
  std::string summary_csv = "summary.csv";
  int jobs = 1;
  bool dump_geometry = false;
  /// Diffusion snapshot spacing in steps; 0 disables snapshots.
  int snapshot_every = 0;

  /// Throws ConfigError.
  void validate() const;
  /// M for a deployment of n sensors.
  int rp_count(int n) const;
};

/// Parses the JSON config; unit-suffixed keys are converted to SI. Throws ConfigError.
CampaignConfig parse_campaign_config(std::string_view json_text);
CampaignConfig load_campaign_config(const std::filesystem::path& path);

/// Seed for deployment `seed_index` at sweep value `n`.
std::uint64_t run_seed(const CampaignConfig& config, int n, int seed_index);

struct CampaignRow {
  std::string planner;
  int n_sensors = 0;
  int seed_index = 0;
  std::uint64_t seed = 0;
  int m_rps = 0;
  bool feasible = true;
  Permutation order;
  MetricReport report;
  double objective = 0.0;
};

struct SummaryRow {
  std::string planner;
  int n_sensors = 0;
  int runs = 0;
  /// Mean and sample standard deviation per column of kMetricColumns.
  std::vector<double> mean;
  std::vector<double> stddev;
};

struct RunGeometry {
  NetworkScenario scenario;
  RpPlan plan;
  Permutation order;
  /// Diffusion snapshots in meters keyed by step k.
  std::map<int, WaypointTrajectory> snapshots;
};

struct CampaignResult {
  std::vector<CampaignRow> rows;
  std::vector<SummaryRow> summary;
  std::map<std::string, RunGeometry> geometry;
};

/// Metric columns shared by the per-run and summary CSVs, in frozen order.
const std::vector<std::string_view>& metric_columns();
std::vector<double> metric_values(const CampaignRow& row);

/// "<planner>_n<N>_s<seed index>"
std::string run_id(std::string_view planner, int n, int seed_index);

/// Every (N, seed) deployment through every planner. Rows are sorted by
/// (N, seed index, planner position in the config) regardless of `jobs`.
CampaignResult run_campaign(const CampaignConfig& config);

std::vector<SummaryRow> summarize(const std::vector<CampaignRow>& rows,
                                  const std::vector<std::string>& planner_order);

std::string runs_csv(const CampaignResult& result);
std::string summary_csv(const CampaignResult& result);

/// Writes both CSVs (and geometry when requested) under config.output_dir. Throws IoError.
void write_campaign(const CampaignResult& result, const CampaignConfig& config);

/// Sensor, RP, association, tour and snapshot CSVs for one run under `dir/<run id>/`.
/// Throws NotFoundError for an unknown run id and IoError on write failure.
void emit_geometry(const CampaignResult& result, std::string_view id,
                   const std::filesystem::path& dir);

}  // namespace mdc
