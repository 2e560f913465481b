#include "mdc/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace mdc {

double freshness(std::span<const double> visit_time_s, std::span<const double> stored_bits,
                 double tour_time_s) {
  if (visit_time_s.size() != stored_bits.size())
    throw std::invalid_argument("freshness: visit/buffer size mismatch");
  double total = 0.0;
  for (double d : stored_bits) total += d;
  if (total <= 0.0) return 0.0;
  double age = 0.0;
  for (std::size_t j = 0; j < stored_bits.size(); ++j) {
    age += stored_bits[j] / total * (tour_time_s / 2.0 + (tour_time_s - visit_time_s[j]));
  }
  return age;
}

DeliveryModel delivery_model(const NetworkScenario& scenario, const RpPlan& plan,
                             double tour_time_s, const MetricsOptions& options) {
  const std::size_t n = scenario.sensors.size();
  if (plan.assoc.size() != n || plan.sensor_distance_m.size() != n)
    throw std::invalid_argument("delivery_model: plan does not match scenario");
  DeliveryModel out;
  out.accept.resize(plan.size());
  for (std::size_t j = 0; j < plan.size(); ++j) {
    const double offered = plan.rp_rate_bps[j] * tour_time_s;
    out.accept[j] = offered > 0.0 ? std::min(1.0, scenario.buffer_capacity_bits / offered) : 1.0;
  }
  out.hops.resize(n);
  out.collected_fraction.resize(n);
  out.delivered_fraction.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double d = plan.sensor_distance_m[i];
    const int hops = std::max(1, static_cast<int>(std::ceil(d / scenario.comm_range_m)));
    out.hops[i] = hops;
    if (hops > options.hop_max) {
      out.collected_fraction[i] = 0.0;
      out.delivered_fraction[i] = 0.0;
      continue;
    }
    const double accept = out.accept[plan.assoc[i]];
    out.collected_fraction[i] = accept;
    out.delivered_fraction[i] = std::pow(options.p_link, hops) * accept;
  }
  return out;
}

EnergyReport energy_report(const NetworkScenario& scenario, const RpPlan& plan,
                           const DeliveryModel& delivery, double tour_time_s,
                           const MetricsOptions& options) {
  EnergyReport out;
  double delivered = 0.0;
  for (std::size_t i = 0; i < scenario.sensors.size(); ++i) {
    const int hops = delivery.hops[i];
    if (hops > options.hop_max) continue;
    const double bits = scenario.sensors[i].rate_bps * tour_time_s;
    const double per_bit =
        transmit_energy_per_bit(plan.sensor_distance_m[i] / hops, options) + options.e_elec;
    double entering = bits;
    for (int k = 0; k < hops; ++k) {
      out.total_j += entering * per_bit;
      entering *= options.p_link;
    }
    delivered += bits * delivery.delivered_fraction[i];
  }
  if (out.total_j > 0.0 && delivered > 0.0) {
    const double reference = transmit_energy_per_bit(scenario.comm_range_m, options);
    out.efficiency = std::clamp(delivered * reference / out.total_j, 0.0, 1.0);
  }
  return out;
}

double throughput(double delivered_bits, double tour_time_s) {
  if (!(tour_time_s > 0.0)) throw std::invalid_argument("throughput: tour time must be > 0");
  return delivered_bits / tour_time_s;
}

double fairness(std::span<const double> x) {
  if (x.empty()) throw std::invalid_argument("fairness: empty allocation");
  double sum = 0.0;
  double sum_sq = 0.0;
  for (double v : x) {
    sum += v;
    sum_sq += v * v;
  }
  if (sum_sq <= 0.0) return 1.0;
  const double j = sum * sum / (static_cast<double>(x.size()) * sum_sq);
  // Rounding can push an equal allocation a hair above 1.
  return std::clamp(j, 1.0 / static_cast<double>(x.size()), 1.0);
}

MetricReport full_report(const NetworkScenario& scenario, const RpPlan& plan,
                         const TourSchedule& schedule, const ServiceSolution& service,
                         const MetricsOptions& options) {
  require_permutation(schedule.order, plan.size());
  if (schedule.dwell_s.size() != plan.size())
    throw std::invalid_argument("full_report: dwell vector does not match RP count");

  MetricReport r;
  r.tour_length_m = schedule.tour_length_m;
  r.travel_time_s = schedule.travel_time_s;
  for (double tau : schedule.dwell_s) r.total_dwell_s += tau;
  r.tour_time_s = schedule.travel_time_s + r.total_dwell_s;
  r.converged = service.converged;
  r.utilization = service.utilization;

  const double t = r.tour_time_s;
  const std::vector<double> capacity(plan.size(), scenario.buffer_capacity_bits);
  const BufferState buffers = buffered_data(plan.rp_rate_bps, t, capacity);
  for (bool o : buffers.overflowed) r.overflowed_rps += o ? 1 : 0;

  const auto arrivals =
      visit_times(schedule.order, plan.rp_positions, schedule.dwell_s, scenario.mdc_speed_mps);
  r.freshness_s = freshness(arrivals, buffers.stored_bits, t);

  const DeliveryModel delivery = delivery_model(scenario, plan, t, options);
  for (std::size_t i = 0; i < scenario.sensors.size(); ++i) {
    const double bits = scenario.sensors[i].rate_bps * t;
    r.generated_bits += bits;
    r.collected_bits += bits * delivery.collected_fraction[i];
    r.delivered_bits += bits * delivery.delivered_fraction[i];
  }
  if (r.generated_bits > 0.0) {
    r.collection_ratio = std::min(1.0, r.collected_bits / r.generated_bits);
    r.pdr = std::min(r.collection_ratio, r.delivered_bits / r.generated_bits);
  }

  const EnergyReport energy = energy_report(scenario, plan, delivery, t, options);
  r.energy_j = energy.total_j;
  r.energy_efficiency = energy.efficiency;
  r.throughput_bps = t > 0.0 ? throughput(r.delivered_bits, t) : 0.0;
  r.fairness = scenario.sensors.empty() ? 1.0 : fairness(delivery.delivered_fraction);

  const Area& a = scenario.area;
  r.t_ref_s = 2.0 * (a.width() + a.height()) / scenario.mdc_speed_mps;
  r.delta_ref_s = r.t_ref_s;
  r.e_ref_j = r.generated_bits *
              (transmit_energy_per_bit(scenario.comm_range_m, options) + options.e_elec);
  return r;
}

}  // namespace mdc
