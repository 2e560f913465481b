#include "mdc/service.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace mdc {

double utilization(std::span<const double> rates, std::span<const double> capacity) {
  if (rates.size() != capacity.size())
    throw std::invalid_argument("utilization: " + std::to_string(rates.size()) + " loads vs " +
                                std::to_string(capacity.size()) + " upload rates");
  double rho = 0.0;
  for (std::size_t j = 0; j < rates.size(); ++j) {
    if (!(capacity[j] > 0.0)) throw std::invalid_argument("upload rate C_j must be > 0");
    if (!(rates[j] >= 0.0)) throw std::invalid_argument("aggregate rate must be >= 0");
    rho += rates[j] / capacity[j];
  }
  return rho;
}

ServiceSolution solve_dwell(std::span<const double> rates, double travel_time_s,
                            std::span<const double> capacity, ServiceOptions options) {
  if (!(travel_time_s >= 0.0)) throw std::invalid_argument("solve_dwell: travel time must be >= 0");
  if (!(options.epsilon_s > 0.0)) throw std::invalid_argument("solve_dwell: epsilon must be > 0");
  if (options.max_iter < 1) throw std::invalid_argument("solve_dwell: max_iter must be >= 1");

  ServiceSolution sol;
  sol.travel_time_s = travel_time_s;
  sol.utilization = utilization(rates, capacity);
  sol.dwell_s.assign(rates.size(), 0.0);

  const bool saturated = sol.utilization >= 1.0;
  double t_prev = travel_time_s;
  while (true) {
    double t_next = travel_time_s;
    for (std::size_t j = 0; j < rates.size(); ++j) {
      sol.dwell_s[j] = rates[j] * t_prev / capacity[j];
      t_next += sol.dwell_s[j];
    }
    ++sol.iterations;
    const double step = std::abs(t_next - t_prev);
    sol.tour_time_s = t_next;
    if (saturated) break;
    if (step <= options.epsilon_s) {
      sol.converged = true;
      break;
    }
    if (sol.iterations >= options.max_iter) break;
    t_prev = t_next;
  }
  return sol;
}

double closed_form_tour_time(double travel_time_s, std::span<const double> rates,
                             std::span<const double> capacity) {
  const double rho = utilization(rates, capacity);
  if (rho >= 1.0)
    throw InfeasibleSystemError("utilization " + std::to_string(rho) +
                                " >= 1: no finite tour time");
  return travel_time_s / (1.0 - rho);
}

BufferState buffered_data(std::span<const double> rates, double tour_time_s,
                          std::span<const double> buffer) {
  if (!(tour_time_s >= 0.0)) throw std::invalid_argument("buffered_data: tour time must be >= 0");
  if (rates.size() != buffer.size())
    throw std::invalid_argument("buffered_data: rate/buffer size mismatch");
  BufferState state;
  state.stored_bits.resize(rates.size());
  state.overflow_bits.resize(rates.size());
  state.overflowed.resize(rates.size());
  for (std::size_t j = 0; j < rates.size(); ++j) {
    const double d = rates[j] * tour_time_s;
    state.stored_bits[j] = std::min(d, buffer[j]);
    state.overflow_bits[j] = std::max(0.0, d - buffer[j]);
    state.overflowed[j] = d > buffer[j];
  }
  return state;
}

std::vector<double> visit_times(std::span<const int> order, std::span<const Point2D> pos,
                                std::span<const double> dwell_s, double speed_mps) {
  require_permutation(order, pos.size());
  if (!(speed_mps > 0.0)) throw std::invalid_argument("visit_times: speed must be > 0");
  std::vector<double> t(pos.size(), 0.0);
  double clock = 0.0;
  for (std::size_t k = 0; k < order.size(); ++k) {
    if (k > 0) clock += distance(pos[order[k - 1]], pos[order[k]]) / speed_mps;
    t[order[k]] = clock;
    clock += dwell_s[order[k]];
  }
  return t;
}

TourSchedule make_schedule(const Permutation& order, const RpPlan& plan,
                           const NetworkScenario& scenario, const ServiceSolution& service) {
  TourSchedule s;
  s.order = order;
  s.dwell_s = service.dwell_s;
  s.tour_length_m = tour_length(order, plan.rp_positions, scenario.closed_tour);
  s.travel_time_s = s.tour_length_m / scenario.mdc_speed_mps;
  s.tour_time_s = service.tour_time_s;
  return s;
}

}  // namespace mdc
