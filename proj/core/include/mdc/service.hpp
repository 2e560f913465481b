#pragma once

#include <span>
#include <stdexcept>
#include <vector>

#include "mdc/model.hpp"
#include "mdc/rp_placement.hpp"

namespace mdc {

/// Raised when the offered load saturates the collector (utilization >= 1).
class InfeasibleSystemError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ServiceOptions {
  double epsilon_s = 1e-6;
  int max_iter = 10000;
};

struct ServiceSolution {
  std::vector<double> dwell_s;
  double tour_time_s = 0.0;
  double travel_time_s = 0.0;
  int iterations = 0;
  bool converged = false;
  double utilization = 0.0;
};

/// rho = sum_j Lambda_j / C_j. Throws std::invalid_argument on C_j <= 0 or size mismatch.
double utilization(std::span<const double> rp_rate_bps, std::span<const double> upload_rates_bps);

/// Iterates T <- T_tr + sum_j Lambda_j T / C_j from T = T_tr until successive
/// iterates differ by at most epsilon. Saturated systems (rho >= 1) come back
/// with converged = false after a single step; they are not an error.
ServiceSolution solve_dwell(std::span<const double> rp_rate_bps, double travel_time_s,
                            std::span<const double> upload_rates_bps,
                            ServiceOptions options = {});

inline ServiceSolution solve_dwell(const RpPlan& plan, double travel_time_s,
                                   std::span<const double> upload_rates_bps,
                                   ServiceOptions options = {}) {
  return solve_dwell(plan.rp_rate_bps, travel_time_s, upload_rates_bps, options);
}

/// T* = T_tr / (1 - rho). Throws InfeasibleSystemError when rho >= 1.
double closed_form_tour_time(double travel_time_s, std::span<const double> rp_rate_bps,
                             std::span<const double> upload_rates_bps);

struct BufferState {
  /// D_j after the buffer cap.
  std::vector<double> stored_bits;
  std::vector<double> overflow_bits;
  std::vector<bool> overflowed;
};

/// D_j = Lambda_j * T capped at B_j; the excess is lost.
BufferState buffered_data(std::span<const double> rp_rate_bps, double tour_time_s,
                          std::span<const double> buffer_capacity_bits);

/// Arrival time at each RP (indexed by RP id) measured from the start of the tour:
/// travel up to the stop plus dwell spent at earlier stops.
std::vector<double> visit_times(std::span<const int> order, std::span<const Point2D> rp_positions,
                                std::span<const double> dwell_s, double speed_mps);

/// Assembles a TourSchedule for `order` on the scenario's speed and closure.
TourSchedule make_schedule(const Permutation& order, const RpPlan& plan,
                           const NetworkScenario& scenario, const ServiceSolution& service);

}  // namespace mdc
