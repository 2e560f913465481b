#include "mdc/objective.hpp"

#include <stdexcept>
#include <string>

namespace mdc {

double early_visit_score(const Permutation& order, const IntentWeights& weights) {
  const std::size_t m = order.size();
  require_permutation(order, m);
  const auto w = weights.importance_for(m);
  if (m == 1) return 1.0;
  double total = 0.0;
  double score = 0.0;
  for (std::size_t pos = 0; pos < m; ++pos) {
    const double wj = w[order[pos]];
    total += wj;
    score += wj * static_cast<double>(m - 1 - pos) / static_cast<double>(m - 1);
  }
  return total > 0.0 ? score / total : 1.0;
}

namespace {

// value / reference, where a zero reference is only acceptable for a zero value
// (a single-RP tour takes no time and moves no data).
double normalized(double value, double reference, const char* what) {
  if (reference > 0.0) return value / reference;
  if (reference == 0.0 && value == 0.0) return 0.0;
  throw std::invalid_argument(std::string("objective: ") + what + " reference must be > 0");
}

}  // namespace

double objective(const TourSchedule& schedule, const IntentWeights& weights,
                 const MetricReport& metrics) {
  weights.validate();
  double j = 0.0;
  if (weights.eta_T != 0.0) j += weights.eta_T * normalized(metrics.tour_time_s, metrics.t_ref_s, "T");
  if (weights.eta_E != 0.0) j += weights.eta_E * normalized(metrics.energy_j, metrics.e_ref_j, "E");
  if (weights.eta_F != 0.0)
    j += weights.eta_F * normalized(metrics.freshness_s, metrics.delta_ref_s, "Delta");
  if (weights.eta_P != 0.0) j += weights.eta_P * (1.0 - early_visit_score(schedule.order, weights));
  return j;
}

}  // namespace mdc
