#pragma once

#include <span>
#include <string_view>
#include <vector>

#include "mdc/model.hpp"
#include "mdc/rp_placement.hpp"
#include "mdc/service.hpp"

namespace mdc {

/// Loss and radio parameters. Energies in J/bit and J/bit/m^2.
struct MetricsOptions {
  double p_link = 0.98;
  int hop_max = 3;
  double e_elec = 50e-9;
  double eps_fs = 10e-12;
};

/// The evaluation metrics for one (scenario, plan, schedule) triple.
struct MetricReport {
  static constexpr std::string_view kModelVersion = "metrics/1";

  double tour_time_s = 0.0;
  double tour_length_m = 0.0;
  double travel_time_s = 0.0;
  double total_dwell_s = 0.0;
  double freshness_s = 0.0;
  double collection_ratio = 0.0;
  double pdr = 0.0;
  double energy_j = 0.0;
  double energy_efficiency = 0.0;
  double throughput_bps = 0.0;
  double fairness = 1.0;

  double generated_bits = 0.0;
  double collected_bits = 0.0;
  double delivered_bits = 0.0;
  int overflowed_rps = 0;
  bool converged = false;
  double utilization = 0.0;

  // Normalizers for the intent objective.
  double t_ref_s = 0.0;
  double e_ref_j = 0.0;
  double delta_ref_s = 0.0;
};

/// Data-weighted mean age at sink delivery: sum_j (D_j / sum D) (T/2 + T - t_j).
/// Returns 0 when no data was buffered.
double freshness(std::span<const double> visit_time_s, std::span<const double> stored_bits,
                 double tour_time_s);

struct DeliveryModel {
  std::vector<int> hops;
  /// Share of generated data that reaches the RP buffer (0 beyond hop_max).
  std::vector<double> collected_fraction;
  /// Share that also survives every link: p_link^hops * accept_j.
  std::vector<double> delivered_fraction;
  /// min(1, B_j / (Lambda_j T)) per RP.
  std::vector<double> accept;
};

/// hops = max(1, ceil(d / R_c)); sensors needing more than hop_max hops deliver nothing.
DeliveryModel delivery_model(const NetworkScenario& scenario, const RpPlan& plan,
                             double tour_time_s, const MetricsOptions& options = {});

/// e(d) = E_elec + eps_fs d^2 per transmitted bit.
inline double transmit_energy_per_bit(double d, const MetricsOptions& o) {
  return o.e_elec + o.eps_fs * d * d;
}

struct EnergyReport {
  double total_j = 0.0;
  double efficiency = 0.0;
};

/// First-order radio model charged per hop on the bits entering that hop
/// (transmit plus receive); efficiency = delivered * e(R_c) / total, clamped to [0, 1].
EnergyReport energy_report(const NetworkScenario& scenario, const RpPlan& plan,
                           const DeliveryModel& delivery, double tour_time_s,
                           const MetricsOptions& options = {});

/// delivered / T. Throws std::invalid_argument when T <= 0.
double throughput(double delivered_bits, double tour_time_s);

/// Jain's index; an all-zero vector scores 1.
double fairness(std::span<const double> fractions);

MetricReport full_report(const NetworkScenario& scenario, const RpPlan& plan,
                         const TourSchedule& schedule, const ServiceSolution& service,
                         const MetricsOptions& options = {});

}  // namespace mdc
