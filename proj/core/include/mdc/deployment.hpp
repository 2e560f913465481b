#pragma once

#include <cstdint>
#include <vector>

#include "mdc/model.hpp"

namespace mdc {

/// Everything about a scenario except the sensor layout.
struct ScenarioTemplate {
  Area area{0.0, 0.0, 200.0, 200.0};
  double sensor_rate_bps = 500.0;
  double comm_range_m = 25.0;
  Point2D sink{0.0, 0.0};
  double mdc_speed_mps = 2.0;
  double upload_rate_bps = 2.0e6;
  double buffer_capacity_bits = 4.0e8;
  bool closed_tour = true;

  friend bool operator==(const ScenarioTemplate&, const ScenarioTemplate&) = default;
};

/// Sensors i.i.d. uniform over the area, drawn from the "scenario" stream of `seed`.
NetworkScenario generate_scenario(std::uint64_t seed, int n_sensors,
                                  const ScenarioTemplate& params);

enum class CandidateSource { grid, sensor_positions };

struct CandidateMode {
  CandidateSource source = CandidateSource::grid;
  double spacing_m = 10.0;  // grid only

  static CandidateMode grid(double spacing_m) { return {CandidateSource::grid, spacing_m}; }
  static CandidateMode sensors() { return {CandidateSource::sensor_positions, 0.0}; }
};

struct CandidateSet {
  std::vector<Point2D> points;
  CandidateMode mode;
};

/// Grid mode: every lattice point min + k*spacing inside the closed area, row-major
/// (y outer, x inner). Sensor mode: sensor coordinates in sensor order.
CandidateSet build_candidates(const NetworkScenario& scenario, CandidateMode mode);

}  // namespace mdc
