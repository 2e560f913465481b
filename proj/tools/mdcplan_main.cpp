// mdcplan: config-driven experiment campaigns and oracle helpers.
//
// Exit codes: 0 ok, 1 config error, 2 I/O error, 3 internal invariant violation.

#include <cstdio>
#include <iostream>
#include <regex>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "mdc/campaign.hpp"
#include "mdc/serialization.hpp"
#include "mdc/service.hpp"
#include "oracles.hpp"

namespace {

enum ExitCode { kOk = 0, kConfigError = 1, kIoError = 2, kInvariant = 3 };

mdc::Point2D parse_point(const std::string& text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos) throw mdc::ConfigError("point '" + text + "' is not x,y");
  try {
    return {std::stod(text.substr(0, comma)), std::stod(text.substr(comma + 1))};
  } catch (const std::exception&) {
    throw mdc::ConfigError("point '" + text + "' is not x,y");
  }
}

int run_command(const std::string& config_path, const std::string& out_dir, int seeds,
                bool dump_geometry, int snapshot_every, int jobs) {
  mdc::CampaignConfig config = mdc::load_campaign_config(config_path);
  if (!out_dir.empty()) config.output_dir = out_dir;
  if (seeds > 0) config.seeds = seeds;
  if (dump_geometry) config.dump_geometry = true;
  if (snapshot_every >= 0) config.snapshot_every = snapshot_every;
  if (jobs > 0) config.jobs = jobs;
  config.validate();

  const mdc::CampaignResult result = mdc::run_campaign(config);
  mdc::write_campaign(result, config);
  std::size_t infeasible = 0;
  for (const auto& r : result.rows) infeasible += r.feasible ? 0 : 1;
  std::cout << "wrote " << result.rows.size() << " runs and " << result.summary.size()
            << " summary rows to " << config.output_dir.string() << "\n";
  if (infeasible > 0) std::cout << infeasible << " runs flagged infeasible (utilization >= 1)\n";
  return kOk;
}

int geometry_command(const std::string& config_path, const std::string& id,
                     const std::string& out_dir, int snapshot_every) {
  mdc::CampaignConfig config = mdc::load_campaign_config(config_path);
  static const std::regex pattern(R"((.+)_n(\d+)_s(\d+))");
  std::smatch m;
  if (!std::regex_match(id, m, pattern))
    throw mdc::NotFoundError("run id '" + id + "' is not of the form <planner>_n<N>_s<seed>");
  const std::string planner = m[1];
  const int n = std::stoi(m[2]);
  const int seed_index = std::stoi(m[3]);
  const bool listed = std::find(config.planners.begin(), config.planners.end(), planner) !=
                      config.planners.end();
  const bool swept = std::find(config.sweep_n.begin(), config.sweep_n.end(), n) !=
                     config.sweep_n.end();
  if (!listed || !swept || seed_index >= config.seeds)
    throw mdc::NotFoundError("run '" + id + "' is not part of this campaign");

  // Each cell depends only on (base seed, seed set, N, seed index), so a reduced
  // campaign reproduces the requested run exactly.
  config.planners = {planner};
  config.sweep_n = {n};
  config.seeds = seed_index + 1;
  config.dump_geometry = true;
  if (snapshot_every >= 0) config.snapshot_every = snapshot_every;
  const mdc::CampaignResult result = mdc::run_campaign(config);
  const std::string dir = out_dir.empty() ? (config.output_dir / "geometry").string() : out_dir;
  mdc::emit_geometry(result, id, dir);
  std::cout << "wrote geometry for " << id << " to " << dir << "\n";
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Rendezvous-point placement and guided-diffusion tour planning for a mobile data collector"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  int seeds = 0;
  bool dump_geometry = false;
  int snapshot_every = -1;
  int jobs = 0;
  auto* run = app.add_subcommand("run", "Run an experiment campaign");
  run->add_option("config", config_path, "Campaign config (JSON)")->required();
  run->add_option("--out", out_dir, "Output directory (overrides output.dir)");
  run->add_option("--seeds", seeds, "Deployments per sweep value (overrides seeds)");
  run->add_flag("--dump-geometry", dump_geometry, "Write per-run geometry CSVs");
  run->add_option("--snapshot-every", snapshot_every, "Diffusion snapshot spacing in steps");
  run->add_option("--jobs", jobs, "Worker threads");

  auto* validate = app.add_subcommand("validate", "Check a campaign config");
  validate->add_option("config", config_path, "Campaign config (JSON)")->required();

  std::string run_id;
  auto* geometry = app.add_subcommand("geometry", "Write the geometry of one campaign run");
  geometry->add_option("config", config_path, "Campaign config (JSON)")->required();
  geometry->add_option("--run", run_id, "Run id <planner>_n<N>_s<seed index>")->required();
  geometry->add_option("--out", out_dir, "Output directory");
  geometry->add_option("--snapshot-every", snapshot_every, "Diffusion snapshot spacing in steps");

  auto* oracle = app.add_subcommand("oracle", "Reference solvers for test tooling");
  oracle->require_subcommand(1);
  std::vector<std::string> points;
  bool open_tour = false;
  auto* tsp = oracle->add_subcommand("tsp", "Exhaustive optimal tour (<= 10 points)");
  tsp->add_option("--point", points, "Point as x,y (repeat)")->required();
  tsp->add_flag("--open", open_tour, "Open tour (no return edge)");

  double travel = 0.0;
  std::vector<double> loads;
  std::vector<double> capacities;
  auto* fixed = oracle->add_subcommand("fixed-point", "Closed-form and iterated tour time");
  fixed->add_option("--travel-time", travel, "Travel time T_tr in seconds")->required();
  fixed->add_option("--load", loads, "Aggregate rate per RP in bit/s (repeat)")->required();
  fixed->add_option("--capacity", capacities,
                    "Upload rate in bit/s, one value or one per RP")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) {
      return run_command(config_path, out_dir, seeds, dump_geometry, snapshot_every, jobs);
    }
    if (*validate) {
      const auto config = mdc::load_campaign_config(config_path);
      std::cout << "ok: " << config.sweep_n.size() << " sweep values x " << config.seeds
                << " seeds x " << config.planners.size() << " planners\n";
      return kOk;
    }
    if (*geometry) return geometry_command(config_path, run_id, out_dir, snapshot_every);
    if (*tsp) {
      std::vector<mdc::Point2D> pts;
      for (const auto& p : points) pts.push_back(parse_point(p));
      const auto sol = mdc::oracle::brute_force_tsp(pts, !open_tour);
      std::cout << "length " << mdc::format_number(sol.length) << "\norder";
      for (int v : sol.order) std::cout << ' ' << v;
      std::cout << '\n';
      return kOk;
    }
    if (*fixed) {
      if (capacities.size() == 1) capacities.assign(loads.size(), capacities.front());
      const double rho = mdc::utilization(loads, capacities);
      const auto sol = mdc::solve_dwell(loads, travel, capacities);
      std::cout << "utilization " << mdc::format_number(rho) << '\n';
      std::cout << "iterated " << mdc::format_number(sol.tour_time_s) << " converged "
                << (sol.converged ? "yes" : "no") << " iterations " << sol.iterations << '\n';
      std::cout << "closed_form " << mdc::format_number(mdc::closed_form_tour_time(travel, loads, capacities))
                << '\n';
      return kOk;
    }
  } catch (const mdc::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const mdc::NotFoundError& e) {
    std::cerr << "not found: " << e.what() << '\n';
    return kConfigError;
  } catch (const mdc::IoError& e) {
    std::cerr << "I/O error: " << e.what() << '\n';
    return kIoError;
  } catch (const mdc::InfeasibleSystemError& e) {
    std::cerr << "infeasible: " << e.what() << '\n';
    return kConfigError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid argument: " << e.what() << '\n';
    return kConfigError;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kInvariant;
  }
  return kOk;
}
