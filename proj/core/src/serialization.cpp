#include "mdc/serialization.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace mdc {

using nlohmann::json;

namespace {

json point(Point2D p) { return json::array({p.x, p.y}); }

Point2D point_from(const json& j) {
  if (!j.is_array() || j.size() != 2) throw std::invalid_argument("expected [x, y]");
  return {j.at(0).get<double>(), j.at(1).get<double>()};
}

json parse_tagged(std::string_view text, std::string_view schema) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("malformed JSON: ") + e.what());
  }
  if (!doc.is_object() || doc.value("schema", "") != schema)
    throw std::invalid_argument("expected a document with schema " + std::string(schema));
  return doc;
}

}  // namespace

std::string scenario_to_json(const NetworkScenario& s) {
  json sensors = json::array();
  for (const auto& n : s.sensors) {
    sensors.push_back({{"id", n.id}, {"position_m", point(n.position)}, {"rate_bps", n.rate_bps}});
  }
  json doc = {
      {"schema", kScenarioSchema},
      {"area_m", {s.area.min_x, s.area.min_y, s.area.max_x, s.area.max_y}},
      {"comm_range_m", s.comm_range_m},
      {"sink_m", point(s.sink)},
      {"mdc_speed_mps", s.mdc_speed_mps},
      {"upload_rate_bps", s.upload_rate_bps},
      {"upload_rate_override_bps", s.upload_rate_override_bps},
      {"buffer_capacity_bits", s.buffer_capacity_bits},
      {"closed_tour", s.closed_tour},
      {"sensors", sensors},
  };
  return doc.dump(1);
}

NetworkScenario scenario_from_json(std::string_view text) {
  const json doc = parse_tagged(text, kScenarioSchema);
  NetworkScenario s;
  try {
    const auto& a = doc.at("area_m");
    s.area = {a.at(0).get<double>(), a.at(1).get<double>(), a.at(2).get<double>(),
              a.at(3).get<double>()};
    s.comm_range_m = doc.at("comm_range_m").get<double>();
    s.sink = point_from(doc.at("sink_m"));
    s.mdc_speed_mps = doc.at("mdc_speed_mps").get<double>();
    s.upload_rate_bps = doc.at("upload_rate_bps").get<double>();
    s.upload_rate_override_bps =
        doc.value("upload_rate_override_bps", std::vector<double>{});
    s.buffer_capacity_bits = doc.at("buffer_capacity_bits").get<double>();
    s.closed_tour = doc.at("closed_tour").get<bool>();
    for (const auto& n : doc.at("sensors")) {
      s.sensors.push_back({n.at("id").get<int>(), point_from(n.at("position_m")),
                           n.at("rate_bps").get<double>()});
    }
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("scenario document: ") + e.what());
  }
  s.validate();
  return s;
}

std::string plan_to_json(const RpPlan& p) {
  json rps = json::array();
  for (std::size_t j = 0; j < p.size(); ++j) {
    rps.push_back({{"position_m", point(p.rp_positions[j])},
                   {"rate_bps", p.rp_rate_bps[j]},
                   {"candidate", p.selected_candidate.empty() ? -1 : p.selected_candidate[j]},
                   {"selected_load_bps",
                    p.selected_load_bps.empty() ? 0.0 : p.selected_load_bps[j]}});
  }
  json covered = json::array();
  for (bool c : p.coverage_flag) covered.push_back(c);
  json doc = {{"schema", kPlanSchema},
              {"rps", rps},
              {"assoc", p.assoc},
              {"covered", covered},
              {"sensor_distance_m", p.sensor_distance_m},
              {"fallback_from", p.fallback_from}};
  return doc.dump(1);
}

RpPlan plan_from_json(std::string_view text) {
  const json doc = parse_tagged(text, kPlanSchema);
  RpPlan p;
  try {
    for (const auto& r : doc.at("rps")) {
      p.rp_positions.push_back(point_from(r.at("position_m")));
      p.rp_rate_bps.push_back(r.at("rate_bps").get<double>());
      p.selected_candidate.push_back(r.at("candidate").get<int>());
      p.selected_load_bps.push_back(r.at("selected_load_bps").get<double>());
    }
    p.assoc = doc.at("assoc").get<std::vector<int>>();
    p.coverage_flag = doc.at("covered").get<std::vector<bool>>();
    p.sensor_distance_m = doc.at("sensor_distance_m").get<std::vector<double>>();
    p.fallback_from = doc.at("fallback_from").get<std::size_t>();
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("plan document: ") + e.what());
  }
  return p;
}

std::string report_to_json(const MetricReport& r) {
  json doc = {{"schema", kReportSchema},
              {"model_version", MetricReport::kModelVersion},
              {"tour_time_s", r.tour_time_s},
              {"tour_length_m", r.tour_length_m},
              {"travel_time_s", r.travel_time_s},
              {"total_dwell_s", r.total_dwell_s},
              {"freshness_s", r.freshness_s},
              {"collection_ratio", r.collection_ratio},
              {"pdr", r.pdr},
              {"energy_j", r.energy_j},
              {"energy_efficiency", r.energy_efficiency},
              {"throughput_bps", r.throughput_bps},
              {"fairness", r.fairness},
              {"generated_bits", r.generated_bits},
              {"collected_bits", r.collected_bits},
              {"delivered_bits", r.delivered_bits},
              {"overflowed_rps", r.overflowed_rps},
              {"converged", r.converged},
              {"utilization", r.utilization},
              {"t_ref_s", r.t_ref_s},
              {"e_ref_j", r.e_ref_j},
              {"delta_ref_s", r.delta_ref_s}};
  return doc.dump(1);
}

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  std::array<char, 32> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), res.ptr);
}

}  // namespace mdc
