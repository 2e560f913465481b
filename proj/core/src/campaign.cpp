#include "mdc/campaign.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

#include <nlohmann/json.hpp>

#include "mdc/planner.hpp"
#include "mdc/rng.hpp"
#include "mdc/serialization.hpp"

namespace mdc {

using nlohmann::json;

namespace {

// Strict view of one JSON object: every key must be consumed or it is reported.
class Section {
 public:
  Section(const json& obj, std::string path) : obj_(obj), path_(std::move(path)) {
    if (!obj_.is_object()) throw ConfigError(path_ + ": expected an object");
  }

  bool has(const std::string& key) const { return obj_.contains(key); }

  const json* get(const std::string& key) {
    seen_.insert(key);
    auto it = obj_.find(key);
    return it == obj_.end() ? nullptr : &*it;
  }

  template <class T>
  void read(const std::string& key, T& out) {
    if (const json* v = get(key)) {
      try {
        out = v->get<T>();
      } catch (const json::exception&) {
        throw ConfigError(path_ + "." + key + ": wrong type");
      }
    }
  }

  // One of several unit-suffixed keys, scaled to SI.
  void read_scaled(std::initializer_list<std::pair<const char*, double>> keys, double& out) {
    int found = 0;
    for (const auto& [key, scale] : keys) {
      if (const json* v = get(key)) {
        if (!v->is_number()) throw ConfigError(path_ + "." + key + ": expected a number");
        out = v->get<double>() * scale;
        ++found;
      }
    }
    if (found > 1) throw ConfigError(path_ + ": give only one of the unit variants");
  }

  Section child(const std::string& key) {
    const json* v = get(key);
    static const json empty = json::object();
    return Section(v ? *v : empty, path_ + "." + key);
  }

  void finish() const {
    for (auto it = obj_.begin(); it != obj_.end(); ++it) {
      if (!seen_.count(it.key())) throw ConfigError(path_ + ": unknown key '" + it.key() + "'");
    }
  }

  const std::string& path() const { return path_; }

 private:
  const json& obj_;
  std::string path_;
  std::set<std::string> seen_;
};

DenoiserKind parse_denoiser(const std::string& s) {
  if (s == "analytic_reference") return DenoiserKind::analytic_reference;
  if (s == "zero") return DenoiserKind::zero;
  if (s == "external")
    throw ConfigError("diffusion.denoiser: external models cannot be loaded from a config file");
  throw ConfigError("diffusion.denoiser: unknown kind '" + s + "'");
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::error_code ec;
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << content;
  out.close();
  if (!out) throw IoError("failed writing " + path.string());
}

std::vector<double> bind_importance(const CampaignConfig& config, const RpPlan& plan) {
  if (config.importance == ImportanceRule::uniform || plan.size() == 0)
    return std::vector<double>(plan.size(), 1.0);
  const double peak = *std::max_element(plan.rp_rate_bps.begin(), plan.rp_rate_bps.end());
  if (peak <= 0.0) return std::vector<double>(plan.size(), 1.0);
  std::vector<double> w;
  w.reserve(plan.size());
  for (double r : plan.rp_rate_bps) w.push_back(r / peak);
  return w;
}

}  // namespace

void CampaignConfig::validate() const {
  if (seeds < 1) throw ConfigError("seeds must be >= 1");
  if (sweep_n.empty()) throw ConfigError("sweep_n must not be empty");
  for (int n : sweep_n) {
    if (n < 1) throw ConfigError("sweep_n values must be >= 1");
  }
  if (m_rps < 1) throw ConfigError("m_rps must be >= 1");
  if (planners.empty()) throw ConfigError("planners must not be empty");
  std::set<std::string> names;
  for (const auto& p : planners) {
    if (!is_known_planner(p)) throw ConfigError("unknown planner '" + p + "'");
    if (!names.insert(p).second) throw ConfigError("planner '" + p + "' listed twice");
  }
  if (scenario.area.degenerate()) throw ConfigError("scenario area is degenerate");
  if (!(scenario.comm_range_m > 0.0)) throw ConfigError("comm_range_m must be > 0");
  if (!(scenario.mdc_speed_mps > 0.0)) throw ConfigError("mdc_speed_mps must be > 0");
  if (!(scenario.upload_rate_bps > 0.0)) throw ConfigError("upload rate must be > 0");
  if (!(scenario.sensor_rate_bps >= 0.0)) throw ConfigError("sensor rate must be >= 0");
  if (!(scenario.buffer_capacity_bits >= 0.0)) throw ConfigError("buffer must be >= 0");
  if (candidates.source == CandidateSource::grid && !(candidates.spacing_m > 0.0))
    throw ConfigError("candidates.spacing_m must be > 0");
  if (diffusion.waypoints < 2) throw ConfigError("diffusion.waypoints must be >= 2");
  if (diffusion.steps < 1) throw ConfigError("diffusion.steps must be >= 1");
  if (!(diffusion.beta_start > 0.0 && diffusion.beta_end < 1.0 &&
        diffusion.beta_start <= diffusion.beta_end))
    throw ConfigError("diffusion beta range must satisfy 0 < beta_start <= beta_end < 1");
  if (!(diffusion.guidance_scale >= 0.0)) throw ConfigError("guidance_scale must be >= 0");
  if (!(diffusion.softmin_temperature > 0.0))
    throw ConfigError("softmin_temperature must be > 0");
  for (int n : sweep_n) {
    if (diffusion.waypoints < rp_count(n))
      throw ConfigError("diffusion.waypoints must be >= the RP count");
  }
  try {
    weights.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  if (!(metrics.p_link >= 0.0 && metrics.p_link <= 1.0)) throw ConfigError("p_link outside [0,1]");
  if (metrics.hop_max < 1) throw ConfigError("hop_max must be >= 1");
  if (!(metrics.e_elec >= 0.0 && metrics.eps_fs >= 0.0))
    throw ConfigError("radio energies must be >= 0");
  if (!(service.epsilon_s > 0.0) || service.max_iter < 1)
    throw ConfigError("service epsilon must be > 0 and max_iter >= 1");
  if (jobs < 1) throw ConfigError("jobs must be >= 1");
  if (snapshot_every < 0) throw ConfigError("snapshot_every must be >= 0");
}

int CampaignConfig::rp_count(int n) const {
  if (m_rule == RpCountRule::fixed) return m_rps;
  return std::max(m_rps, static_cast<int>(std::lround(0.15 * n)));
}

CampaignConfig parse_campaign_config(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  CampaignConfig c;
  Section root(doc, "config");
  int version = 1;
  root.read("schema_version", version);
  if (version != 1) throw ConfigError("unsupported schema_version " + std::to_string(version));

  {
    Section s = root.child("scenario");
    if (const json* a = s.get("area_m")) {
      if (!a->is_array() || a->size() != 4)
        throw ConfigError("scenario.area_m: expected [min_x, min_y, max_x, max_y]");
      c.scenario.area = {(*a)[0].get<double>(), (*a)[1].get<double>(), (*a)[2].get<double>(),
                         (*a)[3].get<double>()};
    }
    double w = c.scenario.area.width();
    double h = c.scenario.area.height();
    s.read("area_width_m", w);
    s.read("area_height_m", h);
    c.scenario.area.max_x = c.scenario.area.min_x + w;
    c.scenario.area.max_y = c.scenario.area.min_y + h;
    s.read_scaled({{"sensor_rate_bps", 1.0}, {"sensor_rate_kbps", 1e3}}, c.scenario.sensor_rate_bps);
    s.read("comm_range_m", c.scenario.comm_range_m);
    if (const json* p = s.get("sink_m")) {
      if (!p->is_array() || p->size() != 2) throw ConfigError("scenario.sink_m: expected [x, y]");
      c.scenario.sink = {(*p)[0].get<double>(), (*p)[1].get<double>()};
    }
    s.read("mdc_speed_mps", c.scenario.mdc_speed_mps);
    s.read_scaled({{"upload_rate_bps", 1.0}, {"upload_rate_kbps", 1e3}, {"upload_rate_mbps", 1e6}},
                  c.scenario.upload_rate_bps);
    s.read_scaled({{"buffer_bits", 1.0}, {"buffer_mbits", 1e6}, {"buffer_mbytes", 8e6}},
                  c.scenario.buffer_capacity_bits);
    s.read("closed_tour", c.scenario.closed_tour);
    s.finish();
  }

  root.read("sweep_n", c.sweep_n);
  root.read("m_rps", c.m_rps);
  std::string m_rule = "fixed";
  root.read("m_rule", m_rule);
  if (m_rule == "fixed") {
    c.m_rule = RpCountRule::fixed;
  } else if (m_rule == "proportional") {
    c.m_rule = RpCountRule::proportional;
  } else {
    throw ConfigError("m_rule must be 'fixed' or 'proportional'");
  }
  root.read("seeds", c.seeds);
  root.read("base_seed", c.base_seed);
  root.read("seed_set", c.seed_set);
  root.read("planners", c.planners);
  root.read("jobs", c.jobs);

  {
    Section s = root.child("candidates");
    std::string mode = "grid";
    s.read("mode", mode);
    if (mode == "grid") {
      double spacing = 10.0;
      s.read("spacing_m", spacing);
      c.candidates = CandidateMode::grid(spacing);
    } else if (mode == "sensor_positions") {
      c.candidates = CandidateMode::sensors();
    } else {
      throw ConfigError("candidates.mode must be 'grid' or 'sensor_positions'");
    }
    s.finish();
  }
  {
    Section s = root.child("diffusion");
    s.read("waypoints", c.diffusion.waypoints);
    s.read("steps", c.diffusion.steps);
    s.read("beta_start", c.diffusion.beta_start);
    s.read("beta_end", c.diffusion.beta_end);
    s.read("guidance_scale", c.diffusion.guidance_scale);
    s.read("softmin_temperature", c.diffusion.softmin_temperature);
    std::string denoiser = "analytic_reference";
    s.read("denoiser", denoiser);
    c.diffusion.denoiser = parse_denoiser(denoiser);
    s.read("refine", c.diffusion.refine);
    s.read("two_opt_max_passes", c.diffusion.two_opt_max_passes);
    s.finish();
  }
  {
    Section s = root.child("intent");
    s.read("eta_T", c.weights.eta_T);
    s.read("eta_E", c.weights.eta_E);
    s.read("eta_F", c.weights.eta_F);
    s.read("eta_P", c.weights.eta_P);
    std::string rule = "load";
    s.read("rp_importance", rule);
    if (rule == "load") {
      c.importance = ImportanceRule::load;
    } else if (rule == "uniform") {
      c.importance = ImportanceRule::uniform;
    } else {
      throw ConfigError("intent.rp_importance must be 'load' or 'uniform'");
    }
    s.finish();
  }
  {
    Section s = root.child("metrics");
    s.read("p_link", c.metrics.p_link);
    s.read("hop_max", c.metrics.hop_max);
    s.read_scaled({{"e_elec_j_per_bit", 1.0}, {"e_elec_nj_per_bit", 1e-9}}, c.metrics.e_elec);
    s.read_scaled({{"eps_fs_j_per_bit_m2", 1.0}, {"eps_fs_pj_per_bit_m2", 1e-12}},
                  c.metrics.eps_fs);
    s.finish();
  }
  {
    Section s = root.child("service");
    s.read("epsilon_s", c.service.epsilon_s);
    s.read("max_iter", c.service.max_iter);
    s.finish();
  }
  {
    Section s = root.child("output");
    std::string dir = c.output_dir.string();
    s.read("dir", dir);
    c.output_dir = dir;
    s.read("runs_csv", c.runs_csv);
    s.read("summary_csv", c.summary_csv);
    s.read("dump_geometry", c.dump_geometry);
    s.read("snapshot_every", c.snapshot_every);
    s.finish();
  }
  root.finish();
  c.validate();
  return c;
}

CampaignConfig load_campaign_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read config " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_campaign_config(buf.str());
}

std::uint64_t run_seed(const CampaignConfig& config, int n, int seed_index) {
  return StreamRng(config.base_seed)
      .derive(config.seed_set)
      .derive(static_cast<std::uint64_t>(n))
      .derive(static_cast<std::uint64_t>(seed_index))
      .key();
}

std::string run_id(std::string_view planner, int n, int seed_index) {
  return std::string(planner) + "_n" + std::to_string(n) + "_s" + std::to_string(seed_index);
}

const std::vector<std::string_view>& metric_columns() {
  static const std::vector<std::string_view> cols = {
      "tour_length_m", "travel_time_s",    "total_dwell_s", "tour_time_s",
      "freshness_s",   "collection_ratio", "pdr",           "energy_j",
      "energy_efficiency", "throughput_bps", "fairness",    "utilization",
      "objective"};
  return cols;
}

std::vector<double> metric_values(const CampaignRow& row) {
  const MetricReport& r = row.report;
  return {r.tour_length_m,     r.travel_time_s,  r.total_dwell_s, r.tour_time_s,
          r.freshness_s,       r.collection_ratio, r.pdr,         r.energy_j,
          r.energy_efficiency, r.throughput_bps, r.fairness,      r.utilization,
          row.objective};
}

CampaignResult run_campaign(const CampaignConfig& config) {
  config.validate();

  struct Cell {
    int n;
    int seed_index;
  };
  std::vector<Cell> cells;
  for (int n : config.sweep_n) {
    for (int s = 0; s < config.seeds; ++s) cells.push_back({n, s});
  }

  std::vector<std::unique_ptr<TourPlanner>> planners;
  for (const auto& name : config.planners) planners.push_back(make_planner(name, config.diffusion));

  const std::size_t per_cell = planners.size();
  std::vector<CampaignRow> rows(cells.size() * per_cell);
  std::vector<std::vector<std::pair<std::string, RunGeometry>>> geometry(cells.size());

  auto run_cell = [&](std::size_t c) {
    const Cell cell = cells[c];
    const std::uint64_t seed = run_seed(config, cell.n, cell.seed_index);
    const NetworkScenario scenario = generate_scenario(seed, cell.n, config.scenario);
    const CandidateSet candidates = build_candidates(scenario, config.candidates);
    const int m = config.rp_count(cell.n);
    const RpPlan plan = select_rps(scenario, candidates, m);
    IntentWeights weights = config.weights;
    weights.rp_importance = bind_importance(config, plan);

    for (std::size_t p = 0; p < per_cell; ++p) {
      const TourPlanner& planner = *planners[p];
      RunGeometry geo;
      PlanningContext ctx{scenario, plan, weights, seed, {}};
      if (config.dump_geometry && config.snapshot_every > 0) {
        ctx.observer = [&](int k, const WaypointTrajectory& x) {
          if (k % config.snapshot_every == 0) geo.snapshots[k] = x;
        };
      }
      PlannerOutput out = planner.plan(ctx);
      if (!is_permutation_of(out.order, plan.size()))
        throw InvariantViolation("planner " + planner.name() + " returned an invalid permutation");

      const TourEvaluation ev =
          evaluate_tour(scenario, plan, out.order, weights, config.service, config.metrics);
      if (ev.service.converged &&
          std::abs(ev.report.tour_time_s - ev.service.tour_time_s) > 1e-6 * (1.0 + ev.report.tour_time_s))
        throw InvariantViolation("tour time accounting mismatch");

      CampaignRow& row = rows[c * per_cell + p];
      row.planner = planner.name();
      row.n_sensors = cell.n;
      row.seed_index = cell.seed_index;
      row.seed = seed;
      row.m_rps = m;
      row.feasible = ev.service.utilization < 1.0;
      row.order = out.order;
      row.report = ev.report;
      row.objective = ev.objective;

      if (config.dump_geometry) {
        geo.scenario = scenario;
        geo.plan = plan;
        geo.order = out.order;
        geometry[c].emplace_back(run_id(planner.name(), cell.n, cell.seed_index), std::move(geo));
      }
    }
  };

  const int workers = std::min<int>(config.jobs, static_cast<int>(cells.size()));
  if (workers <= 1) {
    for (std::size_t c = 0; c < cells.size(); ++c) run_cell(c);
  } else {
    std::atomic<std::size_t> next{0};
    std::mutex error_mutex;
    std::exception_ptr error;
    {
      std::vector<std::jthread> pool;
      for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
          for (std::size_t c = next++; c < cells.size(); c = next++) {
            try {
              run_cell(c);
            } catch (...) {
              std::lock_guard lock(error_mutex);
              if (!error) error = std::current_exception();
            }
          }
        });
      }
    }
    if (error) std::rethrow_exception(error);
  }

  CampaignResult result;
  result.rows = std::move(rows);
  result.summary = summarize(result.rows, config.planners);
  for (auto& per : geometry) {
    for (auto& [id, geo] : per) result.geometry.emplace(id, std::move(geo));
  }
  return result;
}

std::vector<SummaryRow> summarize(const std::vector<CampaignRow>& rows,
                                  const std::vector<std::string>& planner_order) {
  std::vector<int> ns;
  for (const auto& r : rows) {
    if (std::find(ns.begin(), ns.end(), r.n_sensors) == ns.end()) ns.push_back(r.n_sensors);
  }
  const std::size_t k = metric_columns().size();
  std::vector<SummaryRow> out;
  for (int n : ns) {
    for (const auto& name : planner_order) {
      std::vector<std::vector<double>> values;
      for (const auto& r : rows) {
        if (r.n_sensors == n && r.planner == name) values.push_back(metric_values(r));
      }
      if (values.empty()) continue;
      SummaryRow s;
      s.planner = name;
      s.n_sensors = n;
      s.runs = static_cast<int>(values.size());
      s.mean.assign(k, 0.0);
      s.stddev.assign(k, 0.0);
      for (std::size_t c = 0; c < k; ++c) {
        double sum = 0.0;
        for (const auto& v : values) sum += v[c];
        const double mean = sum / static_cast<double>(values.size());
        double ss = 0.0;
        for (const auto& v : values) ss += (v[c] - mean) * (v[c] - mean);
        s.mean[c] = mean;
        s.stddev[c] = values.size() > 1 ? std::sqrt(ss / static_cast<double>(values.size() - 1)) : 0.0;
      }
      out.push_back(std::move(s));
    }
  }
  return out;
}

std::string runs_csv(const CampaignResult& result) {
  std::string out = "planner,n_sensors,seed_index,seed,m_rps,feasible,converged";
  for (auto c : metric_columns()) {
    out += ',';
    out += c;
  }
  out += '\n';
  for (const auto& r : result.rows) {
    out += r.planner + ',' + std::to_string(r.n_sensors) + ',' + std::to_string(r.seed_index) +
           ',' + std::to_string(r.seed) + ',' + std::to_string(r.m_rps) + ',' +
           (r.feasible ? "1" : "0") + ',' + (r.report.converged ? "1" : "0");
    for (double v : metric_values(r)) {
      out += ',';
      out += format_number(v);
    }
    out += '\n';
  }
  return out;
}

std::string summary_csv(const CampaignResult& result) {
  std::string out = "planner,n_sensors,runs";
  for (auto c : metric_columns()) {
    out += ',';
    out += c;
    out += "_mean,";
    out += c;
    out += "_std";
  }
  out += '\n';
  for (const auto& s : result.summary) {
    out += s.planner + ',' + std::to_string(s.n_sensors) + ',' + std::to_string(s.runs);
    for (std::size_t c = 0; c < s.mean.size(); ++c) {
      out += ',' + format_number(s.mean[c]) + ',' + format_number(s.stddev[c]);
    }
    out += '\n';
  }
  return out;
}

void write_campaign(const CampaignResult& result, const CampaignConfig& config) {
  std::error_code ec;
  std::filesystem::create_directories(config.output_dir, ec);
  if (ec) throw IoError("cannot create " + config.output_dir.string() + ": " + ec.message());
  write_file(config.output_dir / config.runs_csv, runs_csv(result));
  write_file(config.output_dir / config.summary_csv, summary_csv(result));
  if (config.dump_geometry) {
    for (const auto& [id, geo] : result.geometry) {
      emit_geometry(result, id, config.output_dir / "geometry");
    }
  }
}

void emit_geometry(const CampaignResult& result, std::string_view id,
                   const std::filesystem::path& dir) {
  const auto it = result.geometry.find(std::string(id));
  if (it == result.geometry.end())
    throw NotFoundError("no geometry recorded for run '" + std::string(id) + "'");
  const RunGeometry& g = it->second;
  const std::filesystem::path root = dir / std::string(id);
  std::error_code ec;
  std::filesystem::create_directories(root, ec);
  if (ec) throw IoError("cannot create " + root.string() + ": " + ec.message());

  std::string sensors = "id,x_m,y_m,rate_bps\n";
  for (const auto& s : g.scenario.sensors) {
    sensors += std::to_string(s.id) + ',' + format_number(s.position.x) + ',' +
               format_number(s.position.y) + ',' + format_number(s.rate_bps) + '\n';
  }
  write_file(root / "sensors.csv", sensors);

  std::string rps = "rp,x_m,y_m,rate_bps\n";
  for (std::size_t j = 0; j < g.plan.size(); ++j) {
    rps += std::to_string(j) + ',' + format_number(g.plan.rp_positions[j].x) + ',' +
           format_number(g.plan.rp_positions[j].y) + ',' + format_number(g.plan.rp_rate_bps[j]) +
           '\n';
  }
  write_file(root / "rps.csv", rps);

  std::string assoc = "sensor,rp,distance_m,covered\n";
  for (std::size_t i = 0; i < g.plan.assoc.size(); ++i) {
    assoc += std::to_string(g.scenario.sensors[i].id) + ',' + std::to_string(g.plan.assoc[i]) +
             ',' + format_number(g.plan.sensor_distance_m[i]) + ',' +
             (g.plan.coverage_flag[i] ? "1" : "0") + '\n';
  }
  write_file(root / "assoc.csv", assoc);

  std::string tour = "step,rp,x_m,y_m\n";
  auto tour_row = [&](std::size_t step, int rp) {
    const Point2D p = g.plan.rp_positions[rp];
    tour += std::to_string(step) + ',' + std::to_string(rp) + ',' + format_number(p.x) + ',' +
            format_number(p.y) + '\n';
  };
  for (std::size_t k = 0; k < g.order.size(); ++k) tour_row(k, g.order[k]);
  if (g.scenario.closed_tour && !g.order.empty()) tour_row(g.order.size(), g.order.front());
  write_file(root / "tour.csv", tour);

  for (const auto& [k, traj] : g.snapshots) {
    std::string csv = "h,x_m,y_m\n";
    for (std::size_t h = 0; h < traj.h(); ++h) {
      csv += std::to_string(h) + ',' + format_number(traj.points[h].x) + ',' +
             format_number(traj.points[h].y) + '\n';
    }
    char name[32];
    std::snprintf(name, sizeof name, "trajectory_k%03d.csv", k);
    write_file(root / name, csv);
  }
}

}  // namespace mdc
