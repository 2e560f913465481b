#include "mdc/model.hpp"

#include <numeric>
#include <stdexcept>
#include <string>
#include <unordered_set>

namespace mdc {

void NetworkScenario::validate() const {
  if (area.degenerate()) throw std::invalid_argument("scenario: degenerate area");
  if (!(mdc_speed_mps > 0.0)) throw std::invalid_argument("scenario: mdc_speed must be > 0");
  if (!(upload_rate_bps > 0.0)) throw std::invalid_argument("scenario: upload_rate must be > 0");
  if (!(comm_range_m > 0.0)) throw std::invalid_argument("scenario: comm_range must be > 0");
  if (!(buffer_capacity_bits >= 0.0))
    throw std::invalid_argument("scenario: buffer_capacity must be >= 0");
  for (double c : upload_rate_override_bps) {
    if (!(c > 0.0)) throw std::invalid_argument("scenario: per-RP upload rate must be > 0");
  }
  if (!is_finite(sink)) throw std::invalid_argument("scenario: sink must be finite");
  std::unordered_set<int> ids;
  for (const auto& s : sensors) {
    if (!is_finite(s.position) || !area.contains(s.position))
      throw std::invalid_argument("scenario: sensor " + std::to_string(s.id) +
                                  " lies outside the area");
    if (!(s.rate_bps >= 0.0))
      throw std::invalid_argument("scenario: sensor " + std::to_string(s.id) +
                                  " has negative rate");
    if (!ids.insert(s.id).second)
      throw std::invalid_argument("scenario: duplicate sensor id " + std::to_string(s.id));
  }
}

std::vector<double> NetworkScenario::upload_rates(std::size_t m) const {
  if (upload_rate_override_bps.size() == m) return upload_rate_override_bps;
  return std::vector<double>(m, upload_rate_bps);
}

double NetworkScenario::total_rate_bps() const {
  double total = 0.0;
  for (const auto& s : sensors) total += s.rate_bps;
  return total;
}

void IntentWeights::validate() const {
  if (!(eta_T >= 0.0 && eta_E >= 0.0 && eta_F >= 0.0 && eta_P >= 0.0))
    throw std::invalid_argument("intent weights must be >= 0");
  for (double w : rp_importance) {
    if (!(w >= 0.0)) throw std::invalid_argument("rp importance must be >= 0");
  }
}

std::vector<double> IntentWeights::importance_for(std::size_t m) const {
  if (rp_importance.empty()) return std::vector<double>(m, 1.0);
  if (rp_importance.size() != m)
    throw std::invalid_argument("rp_importance length " + std::to_string(rp_importance.size()) +
                                " does not match RP count " + std::to_string(m));
  return rp_importance;
}

bool is_permutation_of(std::span<const int> order, std::size_t m) {
  if (order.size() != m) return false;
  std::vector<bool> seen(m, false);
  for (int v : order) {
    if (v < 0 || static_cast<std::size_t>(v) >= m || seen[v]) return false;
    seen[v] = true;
  }
  return true;
}

void require_permutation(std::span<const int> order, std::size_t m) {
  if (m == 0) throw std::invalid_argument("tour needs at least one RP");
  if (!is_permutation_of(order, m))
    throw std::invalid_argument("order is not a permutation of the RP index set");
}

double tour_length(std::span<const int> order, std::span<const Point2D> rp_positions,
                   bool closed) {
  require_permutation(order, rp_positions.size());
  double length = 0.0;
  for (std::size_t k = 0; k + 1 < order.size(); ++k) {
    length += distance(rp_positions[order[k]], rp_positions[order[k + 1]]);
  }
  if (closed && order.size() > 1) {
    length += distance(rp_positions[order.back()], rp_positions[order.front()]);
  }
  return length;
}

double travel_time(std::span<const int> order, std::span<const Point2D> rp_positions,
                   double speed_mps, bool closed) {
  if (!(speed_mps > 0.0)) throw std::invalid_argument("travel_time: speed must be > 0");
  return tour_length(order, rp_positions, closed) / speed_mps;
}

}  // namespace mdc
