#include "mdc/deployment.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "mdc/rng.hpp"

namespace mdc {

NetworkScenario generate_scenario(std::uint64_t seed, int n_sensors,
                                  const ScenarioTemplate& params) {
  if (n_sensors < 1) throw std::invalid_argument("generate_scenario: n_sensors must be >= 1");
  if (params.area.degenerate()) throw std::invalid_argument("generate_scenario: degenerate area");

  NetworkScenario scenario;
  scenario.area = params.area;
  scenario.comm_range_m = params.comm_range_m;
  scenario.sink = params.sink;
  scenario.mdc_speed_mps = params.mdc_speed_mps;
  scenario.upload_rate_bps = params.upload_rate_bps;
  scenario.buffer_capacity_bits = params.buffer_capacity_bits;
  scenario.closed_tour = params.closed_tour;

  StreamRng rng = StreamRng(seed).derive("scenario");
  const Area& a = params.area;
  scenario.sensors.reserve(n_sensors);
  for (int i = 0; i < n_sensors; ++i) {
    const double x = a.min_x + rng.uniform() * a.width();
    const double y = a.min_y + rng.uniform() * a.height();
    scenario.sensors.push_back({i, {x, y}, params.sensor_rate_bps});
  }
  scenario.validate();
  return scenario;
}

CandidateSet build_candidates(const NetworkScenario& scenario, CandidateMode mode) {
  CandidateSet out{{}, mode};
  if (mode.source == CandidateSource::sensor_positions) {
    out.points.reserve(scenario.sensors.size());
    for (const auto& s : scenario.sensors) out.points.push_back(s.position);
  } else {
    if (!(mode.spacing_m > 0.0) || !std::isfinite(mode.spacing_m))
      throw std::invalid_argument("build_candidates: grid spacing must be > 0");
    const Area& a = scenario.area;
    // Relative slack so that e.g. 200/10 lands on the boundary despite rounding.
    const double slack = 1e-9;
    const auto nx = static_cast<long>(std::floor(a.width() / mode.spacing_m + slack));
    const auto ny = static_cast<long>(std::floor(a.height() / mode.spacing_m + slack));
    out.points.reserve(static_cast<std::size_t>((nx + 1) * (ny + 1)));
    for (long iy = 0; iy <= ny; ++iy) {
      for (long ix = 0; ix <= nx; ++ix) {
        Point2D p{std::min(a.min_x + ix * mode.spacing_m, a.max_x),
                  std::min(a.min_y + iy * mode.spacing_m, a.max_y)};
        out.points.push_back(p);
      }
    }
  }
  if (out.points.empty()) throw std::invalid_argument("build_candidates: empty candidate set");
  return out;
}

}  // namespace mdc
