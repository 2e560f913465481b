#pragma once

#include "mdc/metrics.hpp"
#include "mdc/model.hpp"

namespace mdc {

/// Importance-weighted early-visit score in [0, 1]: sum_j w_j (M-1-pos_j)/(M-1) / sum_j w_j.
/// A single RP, or all-zero importance, scores 1.
double early_visit_score(const Permutation& order, const IntentWeights& weights);

/// J = eta_T T/T_ref + eta_E E/E_ref + eta_F freshness/Delta_ref + eta_P (1 - early-visit score).
/// Throws std::invalid_argument when a reference value is not positive.
double objective(const TourSchedule& schedule, const IntentWeights& weights,
                 const MetricReport& metrics);

}  // namespace mdc
