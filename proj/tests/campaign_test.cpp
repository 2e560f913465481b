#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "mdc/campaign.hpp"
#include "mdc/serialization.hpp"

namespace mdc {
namespace {

namespace fs = std::filesystem;

CampaignConfig small_config(std::vector<std::string> planners, int seeds = 1) {
  CampaignConfig c;
  c.sweep_n = {50};
  c.seeds = seeds;
  c.planners = std::move(planners);
  c.diffusion.steps = 20;
  c.diffusion.waypoints = 40;
  return c;
}

fs::path scratch_dir(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("mdc_campaign_test_" + name);
  fs::remove_all(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::size_t line_count(const std::string& text) {
  return static_cast<std::size_t>(std::count(text.begin(), text.end(), '\n'));
}

TEST(Campaign, SingleRunProducesOneRowAndOneSummary) {
  const auto result = run_campaign(small_config({"nn"}));
  ASSERT_EQ(result.rows.size(), 1u);
  ASSERT_EQ(result.summary.size(), 1u);
  EXPECT_EQ(result.summary[0].runs, 1);
  const std::string runs = runs_csv(result);
  EXPECT_EQ(line_count(runs), 2u);
  EXPECT_EQ(runs.substr(0, runs.find('\n')),
            "planner,n_sensors,seed_index,seed,m_rps,feasible,converged,tour_length_m,"
            "travel_time_s,total_dwell_s,tour_time_s,freshness_s,collection_ratio,pdr,energy_j,"
            "energy_efficiency,throughput_bps,fairness,utilization,objective");
  EXPECT_EQ(line_count(summary_csv(result)), 2u);
}

TEST(Campaign, ByteIdenticalAcrossRunsAndJobCounts) {
  auto c = small_config({"diffusion", "nn+2opt", "greedy_insertion", "random"}, 3);
  const auto a = run_campaign(c);
  c.jobs = 3;
  const auto b = run_campaign(c);
  EXPECT_EQ(runs_csv(a), runs_csv(b));
  EXPECT_EQ(summary_csv(a), summary_csv(b));
}

TEST(Campaign, PlannerRowsIndependentOfPlannerSet) {
  const auto both = run_campaign(small_config({"random", "nn"}, 2));
  const auto alone = run_campaign(small_config({"nn"}, 2));
  std::vector<Permutation> from_both;
  for (const auto& r : both.rows)
    if (r.planner == "nn") from_both.push_back(r.order);
  ASSERT_EQ(from_both.size(), alone.rows.size());
  for (std::size_t i = 0; i < alone.rows.size(); ++i) EXPECT_EQ(from_both[i], alone.rows[i].order);
}

TEST(Campaign, SummaryMatchesRecomputedStatistics) {
  const auto result = run_campaign(small_config({"nn+2opt", "random"}, 4));
  const auto& cols = metric_columns();
  for (const auto& s : result.summary) {
    std::vector<std::vector<double>> vals;
    for (const auto& r : result.rows)
      if (r.planner == s.planner && r.n_sensors == s.n_sensors) vals.push_back(metric_values(r));
    ASSERT_EQ(static_cast<int>(vals.size()), s.runs);
    for (std::size_t k = 0; k < cols.size(); ++k) {
      double mean = 0.0;
      for (const auto& v : vals) mean += v[k];
      mean /= static_cast<double>(vals.size());
      double ss = 0.0;
      for (const auto& v : vals) ss += (v[k] - mean) * (v[k] - mean);
      const double sd = std::sqrt(ss / static_cast<double>(vals.size() - 1));
      EXPECT_NEAR(s.mean[k], mean, 1e-9 * std::max(1.0, std::abs(mean))) << cols[k];
      EXPECT_NEAR(s.stddev[k], sd, 1e-9 * std::max(1.0, sd)) << cols[k];
    }
  }
}

TEST(Campaign, RunSeedsAreDistinctAcrossCells) {
  CampaignConfig c;
  std::set<std::uint64_t> seen;
  for (int n : {50, 100}) {
    for (int s = 0; s < 30; ++s) seen.insert(run_seed(c, n, s));
  }
  EXPECT_EQ(seen.size(), 60u);
  CampaignConfig other = c;
  other.seed_set = "wsn2";
  EXPECT_NE(run_seed(c, 100, 0), run_seed(other, 100, 0));
}

TEST(Config, UnitSuffixesConvertToSi) {
  const auto c = parse_campaign_config(R"({
    "schema_version": 1,
    "scenario": {"area_m": [0, 0, 300, 150], "sensor_rate_kbps": 0.5, "upload_rate_mbps": 2,
                 "buffer_mbytes": 50, "sink_m": [10, 20]},
    "metrics": {"e_elec_nj_per_bit": 50, "eps_fs_pj_per_bit_m2": 10},
    "m_rule": "proportional"
  })");
  EXPECT_DOUBLE_EQ(c.scenario.area.width(), 300.0);
  EXPECT_DOUBLE_EQ(c.scenario.area.height(), 150.0);
  EXPECT_DOUBLE_EQ(c.scenario.sensor_rate_bps, 500.0);
  EXPECT_DOUBLE_EQ(c.scenario.upload_rate_bps, 2e6);
  EXPECT_DOUBLE_EQ(c.scenario.buffer_capacity_bits, 4e8);
  EXPECT_EQ(c.scenario.sink, (Point2D{10, 20}));
  EXPECT_DOUBLE_EQ(c.metrics.e_elec, 50e-9);
  EXPECT_DOUBLE_EQ(c.metrics.eps_fs, 10e-12);
  EXPECT_EQ(c.rp_count(50), 15);
  EXPECT_EQ(c.rp_count(500), 75);
}

TEST(Config, RejectsBadInput) {
  EXPECT_THROW(parse_campaign_config(R"({"schema_version": 1, "planners": ["dijkstra"]})"), ConfigError);
  EXPECT_THROW(parse_campaign_config(R"({"schema_version": 1, "sweep": [100]})"), ConfigError);
  EXPECT_THROW(parse_campaign_config(R"({"schema_version": 1, "scenario": {"colour": 1}})"), ConfigError);
  EXPECT_THROW(parse_campaign_config(R"({"schema_version": 1, "seeds": "many"})"), ConfigError);
  EXPECT_THROW(parse_campaign_config(R"({"schema_version": 1, "seeds": 0})"), ConfigError);
  EXPECT_THROW(parse_campaign_config("{not json"), ConfigError);
  EXPECT_THROW(parse_campaign_config(
                   R"({"schema_version": 1, "scenario": {"sensor_rate_bps": 1, "sensor_rate_kbps": 1}})"),
               ConfigError);
  EXPECT_THROW(load_campaign_config("/nonexistent/mdc.json"), IoError);
}

TEST(Config, ShippedConfigsParse) {
  const auto nominal = load_campaign_config(fs::path(MDC_SOURCE_DIR) / "configs/nominal.json");
  EXPECT_EQ(nominal.seeds, 30);
  EXPECT_EQ(nominal.m_rps, 15);
  EXPECT_NO_THROW(load_campaign_config(fs::path(MDC_SOURCE_DIR) / "configs/quick.json"));
}

TEST(Geometry, FilesForOneRun) {
  auto c = small_config({"diffusion"});
  c.diffusion.steps = 50;
  c.dump_geometry = true;
  c.snapshot_every = 10;
  const auto result = run_campaign(c);
  const fs::path dir = scratch_dir("geometry");
  const std::string id = run_id("diffusion", 50, 0);
  emit_geometry(result, id, dir);
  const fs::path root = dir / id;
  EXPECT_EQ(line_count(slurp(root / "tour.csv")), 1u + 16u);
  EXPECT_EQ(line_count(slurp(root / "assoc.csv")), 1u + 50u);
  EXPECT_EQ(line_count(slurp(root / "sensors.csv")), 1u + 50u);
  EXPECT_EQ(line_count(slurp(root / "rps.csv")), 1u + 15u);
  int snapshots = 0;
  for (const auto& e : fs::directory_iterator(root))
    if (e.path().filename().string().rfind("trajectory_k", 0) == 0) ++snapshots;
  EXPECT_EQ(snapshots, 6);
  EXPECT_TRUE(fs::exists(root / "trajectory_k050.csv"));
  EXPECT_TRUE(fs::exists(root / "trajectory_k000.csv"));
  EXPECT_THROW(emit_geometry(result, "diffusion_n50_s9", dir), NotFoundError);
  fs::remove_all(dir);
}

TEST(Output, WritesCsvFilesAndReportsIoErrors) {
  auto c = small_config({"nn"});
  const auto result = run_campaign(c);
  c.output_dir = scratch_dir("out");
  write_campaign(result, c);
  EXPECT_EQ(slurp(c.output_dir / "runs.csv"), runs_csv(result));
  EXPECT_EQ(slurp(c.output_dir / "summary.csv"), summary_csv(result));

  const fs::path blocker = c.output_dir / "file";
  std::ofstream(blocker) << "x";
  c.output_dir = blocker / "nested";
  EXPECT_THROW(write_campaign(result, c), IoError);
  fs::remove_all(blocker.parent_path());
}

TEST(Serialization, ReportJsonCarriesSchemaAndVersion) {
  const auto result = run_campaign(small_config({"nn"}));
  const std::string text = report_to_json(result.rows[0].report);
  EXPECT_NE(text.find("mdc.metric_report/1"), std::string::npos);
  EXPECT_NE(text.find("metrics/1"), std::string::npos);
  EXPECT_EQ(format_number(0.5), "0.5");
  for (double v : {1e6, 461.53846153846155, 1.0 / 3.0, -2.5e-12}) EXPECT_EQ(std::stod(format_number(v)), v);
}

}  // namespace
}  // namespace mdc
