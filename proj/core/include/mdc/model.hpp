#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "mdc/geometry.hpp"

namespace mdc {

/// Visiting order over RP indices {0, ..., M-1}.
using Permutation = std::vector<int>;

struct SensorNode {
  int id = 0;
  Point2D position;
  double rate_bps = 0.0;

  friend bool operator==(const SensorNode&, const SensorNode&) = default;
};

/// The world an experiment runs in. All quantities in SI units (m, s, bits).
struct NetworkScenario {
  Area area{0.0, 0.0, 200.0, 200.0};
  std::vector<SensorNode> sensors;
  double comm_range_m = 25.0;
  Point2D sink{0.0, 0.0};
  double mdc_speed_mps = 2.0;
  double upload_rate_bps = 2.0e6;
  /// Per-RP upload rates; used instead of upload_rate_bps when its size equals M.
  std::vector<double> upload_rate_override_bps;
  double buffer_capacity_bits = 4.0e8;
  bool closed_tour = true;

  /// Throws std::invalid_argument when an invariant is broken.
  void validate() const;

  /// C_j for a plan with m RPs.
  std::vector<double> upload_rates(std::size_t m) const;

  double total_rate_bps() const;

  friend bool operator==(const NetworkScenario&, const NetworkScenario&) = default;
};

struct IntentWeights {
  double eta_T = 0.5;
  double eta_E = 0.0;
  double eta_F = 0.3;
  double eta_P = 0.2;
  /// w_j, one per RP once bound to a plan. Empty means uniform 1.
  std::vector<double> rp_importance;

  void validate() const;
  /// Importance vector of length m (uniform when unbound).
  std::vector<double> importance_for(std::size_t m) const;
};

struct TourSchedule {
  Permutation order;
  /// tau_j indexed by RP id, not by visit position.
  std::vector<double> dwell_s;
  double travel_time_s = 0.0;
  double tour_time_s = 0.0;
  double tour_length_m = 0.0;
};

/// Throws std::invalid_argument unless `order` is a permutation of {0, ..., m-1}.
void require_permutation(std::span<const int> order, std::size_t m);
bool is_permutation_of(std::span<const int> order, std::size_t m);

/// Sum of consecutive segment lengths along `order`; closed adds the return edge.
double tour_length(std::span<const int> order, std::span<const Point2D> rp_positions,
                   bool closed);

double travel_time(std::span<const int> order, std::span<const Point2D> rp_positions,
                   double speed_mps, bool closed);

}  // namespace mdc
