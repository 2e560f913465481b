#include "mdc/diffusion.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

#include "mdc/baselines.hpp"
#include "mdc/rng.hpp"
#include "mdc/two_opt.hpp"

namespace mdc {

bool WaypointTrajectory::finite() const {
  return std::all_of(points.begin(), points.end(), [](Point2D p) { return is_finite(p); });
}

AreaMap::AreaMap(const Area& area)
    : center_{(area.min_x + area.max_x) / 2.0, (area.min_y + area.max_y) / 2.0},
      half_w_(area.width() / 2.0),
      half_h_(area.height() / 2.0) {
  if (area.degenerate()) throw std::invalid_argument("AreaMap: degenerate area");
}

Point2D AreaMap::normalize(Point2D p) const {
  return {(p.x - center_.x) / half_w_, (p.y - center_.y) / half_h_};
}

Point2D AreaMap::denormalize(Point2D q) const {
  return {center_.x + q.x * half_w_, center_.y + q.y * half_h_};
}

std::vector<Point2D> AreaMap::normalize(std::span<const Point2D> ps) const {
  std::vector<Point2D> out;
  out.reserve(ps.size());
  for (Point2D p : ps) out.push_back(normalize(p));
  return out;
}

WaypointTrajectory AreaMap::denormalize(const WaypointTrajectory& x) const {
  WaypointTrajectory out;
  out.points.reserve(x.h());
  for (Point2D q : x.points) out.points.push_back(denormalize(q));
  return out;
}

NoiseSchedule NoiseSchedule::linear(int k_steps, double beta_start, double beta_end,
                                    double guidance_scale) {
  if (k_steps < 1) throw std::invalid_argument("noise schedule needs K >= 1");
  if (!(guidance_scale >= 0.0)) throw std::invalid_argument("guidance scale must be >= 0");
  NoiseSchedule s;
  double running = 1.0;
  for (int i = 0; i < k_steps; ++i) {
    const double t = k_steps == 1 ? 0.0 : static_cast<double>(i) / (k_steps - 1);
    const double b = beta_start + (beta_end - beta_start) * t;
    running *= 1.0 - b;
    s.beta.push_back(b);
    s.alpha.push_back(1.0 - b);
    s.alpha_bar.push_back(running);
    s.sigma.push_back(std::sqrt(b));
    s.gamma.push_back(guidance_scale * (1.0 - running));
  }
  s.validate();
  return s;
}

void NoiseSchedule::validate() const {
  const std::size_t k = beta.size();
  if (k == 0) throw std::invalid_argument("noise schedule is empty");
  if (alpha.size() != k || alpha_bar.size() != k || sigma.size() != k || gamma.size() != k)
    throw std::invalid_argument("noise schedule arrays have different lengths");
  for (std::size_t i = 0; i < k; ++i) {
    if (!(beta[i] > 0.0 && beta[i] < 1.0))
      throw std::invalid_argument("beta_" + std::to_string(i + 1) + " outside (0, 1)");
    if (!(alpha_bar[i] > 0.0 && alpha_bar[i] < 1.0))
      throw std::invalid_argument("alpha_bar outside (0, 1)");
    if (i > 0 && !(alpha_bar[i] < alpha_bar[i - 1]))
      throw std::invalid_argument("alpha_bar must be strictly decreasing");
    if (!(sigma[i] >= 0.0) || !(gamma[i] >= 0.0))
      throw std::invalid_argument("sigma and gamma must be >= 0");
  }
}

double safe_norm(double dx, double dy) { return std::sqrt(dx * dx + dy * dy + 1e-12); }

namespace {

struct SoftStats {
  double softmin = 0.0;
  double soft_index = 0.0;
};

// Softmin and soft-argmin index of the distances from every waypoint to one RP.
// `weights_out` receives the softmax(-beta d) weights, `dist_out` the distances.
SoftStats soft_stats(const WaypointTrajectory& x, Point2D rp, double beta,
                     std::vector<double>& weights_out, std::vector<double>& dist_out) {
  const std::size_t h = x.h();
  weights_out.resize(h);
  dist_out.resize(h);
  double d_min = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < h; ++i) {
    dist_out[i] = safe_norm(x.points[i].x - rp.x, x.points[i].y - rp.y);
    d_min = std::min(d_min, dist_out[i]);
  }
  double z = 0.0;
  for (std::size_t i = 0; i < h; ++i) {
    weights_out[i] = std::exp(-beta * (dist_out[i] - d_min));
    z += weights_out[i];
  }
  SoftStats s;
  s.softmin = d_min - std::log(z) / beta;
  for (std::size_t i = 0; i < h; ++i) {
    weights_out[i] /= z;
    s.soft_index += static_cast<double>(i) * weights_out[i];
  }
  return s;
}

void check_guidance_inputs(const WaypointTrajectory& x, const GuidanceOptions& options) {
  if (x.h() < 2) throw std::invalid_argument("guidance needs at least two waypoints");
  if (!(options.softmin_temperature > 0.0))
    throw std::invalid_argument("softmin temperature must be > 0");
}

}  // namespace

double guidance_loss(const WaypointTrajectory& x, std::span<const Point2D> rps,
                     const IntentWeights& weights, GuidanceOptions options) {
  check_guidance_inputs(x, options);
  const auto w = weights.importance_for(rps.size());
  const double beta = options.softmin_temperature;
  const double h = static_cast<double>(x.h());

  double length = 0.0;
  for (std::size_t i = 0; i + 1 < x.h(); ++i) {
    length += safe_norm(x.points[i + 1].x - x.points[i].x, x.points[i + 1].y - x.points[i].y);
  }
  double reach = 0.0;
  double lateness = 0.0;
  if (weights.eta_P != 0.0 || weights.eta_F != 0.0) {
    std::vector<double> p;
    std::vector<double> d;
    for (std::size_t j = 0; j < rps.size(); ++j) {
      const SoftStats s = soft_stats(x, rps[j], beta, p, d);
      reach += w[j] * s.softmin;
      lateness += w[j] * s.soft_index / h;
    }
  }
  return weights.eta_T * length + weights.eta_P * reach + weights.eta_F * lateness;
}

std::vector<Point2D> guidance_gradient(const WaypointTrajectory& x, std::span<const Point2D> rps,
                                       const IntentWeights& weights, GuidanceOptions options) {
  check_guidance_inputs(x, options);
  const auto w = weights.importance_for(rps.size());
  const double beta = options.softmin_temperature;
  const std::size_t h = x.h();
  std::vector<Point2D> g(h, Point2D{0.0, 0.0});

  if (weights.eta_T != 0.0) {
    for (std::size_t i = 0; i + 1 < h; ++i) {
      const double dx = x.points[i + 1].x - x.points[i].x;
      const double dy = x.points[i + 1].y - x.points[i].y;
      const double n = safe_norm(dx, dy);
      const double ux = weights.eta_T * dx / n;
      const double uy = weights.eta_T * dy / n;
      g[i].x -= ux;
      g[i].y -= uy;
      g[i + 1].x += ux;
      g[i + 1].y += uy;
    }
  }

  if (weights.eta_P != 0.0 || weights.eta_F != 0.0) {
    std::vector<double> p;
    std::vector<double> d;
    const double inv_h = 1.0 / static_cast<double>(h);
    for (std::size_t j = 0; j < rps.size(); ++j) {
      if (w[j] == 0.0) continue;
      const SoftStats s = soft_stats(x, rps[j], beta, p, d);
      for (std::size_t i = 0; i < h; ++i) {
        // dL/dd_i: softmin contributes p_i, the soft index -beta p_i (i - E).
        const double dl_dd =
            weights.eta_P * w[j] * p[i] -
            weights.eta_F * w[j] * inv_h * beta * p[i] * (static_cast<double>(i) - s.soft_index);
        g[i].x += dl_dd * (x.points[i].x - rps[j].x) / d[i];
        g[i].y += dl_dd * (x.points[i].y - rps[j].y) / d[i];
      }
    }
  }
  return g;
}

WaypointTrajectory resample_polyline(std::span<const int> order, std::span<const Point2D> pos,
                                     int h) {
  require_permutation(order, pos.size());
  if (h < 1) throw std::invalid_argument("resample_polyline: h must be >= 1");
  std::vector<double> cum(order.size(), 0.0);
  for (std::size_t k = 1; k < order.size(); ++k) {
    cum[k] = cum[k - 1] + distance(pos[order[k - 1]], pos[order[k]]);
  }
  const double total = cum.back();
  WaypointTrajectory out;
  out.points.reserve(h);
  std::size_t seg = 0;
  for (int i = 0; i < h; ++i) {
    if (total <= 0.0 || order.size() == 1) {
      out.points.push_back(pos[order.front()]);
      continue;
    }
    const double s = h == 1 ? 0.0 : total * static_cast<double>(i) / (h - 1);
    while (seg + 2 < order.size() && cum[seg + 1] < s) ++seg;
    const double len = cum[seg + 1] - cum[seg];
    const double t = len > 0.0 ? std::clamp((s - cum[seg]) / len, 0.0, 1.0) : 0.0;
    const Point2D a = pos[order[seg]];
    const Point2D b = pos[order[seg + 1]];
    out.points.push_back({a.x + t * (b.x - a.x), a.y + t * (b.y - a.y)});
  }
  return out;
}

WaypointTrajectory sample_trajectory(std::uint64_t seed, std::span<const Point2D> rps,
                                     const IntentWeights& weights, const NoiseSchedule& schedule,
                                     const DenoiserSpec& denoiser, int h, GuidanceOptions options,
                                     const SnapshotObserver& observer) {
  schedule.validate();
  if (h < static_cast<int>(rps.size()) || h < 2)
    throw std::invalid_argument("sample_trajectory: need H >= max(M, 2), got H = " +
                                std::to_string(h));

  WaypointTrajectory reference;
  switch (denoiser.kind) {
    case DenoiserKind::zero:
      break;
    case DenoiserKind::analytic_reference:
      if (!is_permutation_of(denoiser.reference_order, rps.size()))
        throw std::invalid_argument("analytic denoiser: reference order does not match RP count");
      reference = resample_polyline(denoiser.reference_order, rps, h);
      break;
    case DenoiserKind::external:
      if (!denoiser.external) throw std::invalid_argument("external denoiser handle is empty");
      break;
  }

  const auto n = static_cast<std::size_t>(h);
  StreamRng rng = StreamRng(seed).derive("diffusion/noise");
  WaypointTrajectory x;
  x.points.resize(n);
  for (auto& p : x.points) {
    p.x = rng.normal();
    p.y = rng.normal();
  }

  const int k_steps = schedule.steps();
  if (observer) observer(k_steps, x);

  WaypointTrajectory eps;
  eps.points.assign(n, Point2D{0.0, 0.0});
  WaypointTrajectory next;
  next.points.resize(n);

  for (int k = k_steps; k >= 1; --k) {
    const std::size_t idx = static_cast<std::size_t>(k - 1);
    const double alpha = schedule.alpha[idx];
    const double alpha_bar = schedule.alpha_bar[idx];
    const double one_minus_bar = 1.0 - alpha_bar;

    switch (denoiser.kind) {
      case DenoiserKind::zero:
        break;
      case DenoiserKind::analytic_reference: {
        const double a = std::sqrt(alpha_bar);
        const double inv = 1.0 / std::sqrt(one_minus_bar);
        for (std::size_t i = 0; i < n; ++i) {
          eps.points[i] = {(x.points[i].x - a * reference.points[i].x) * inv,
                           (x.points[i].y - a * reference.points[i].y) * inv};
        }
        break;
      }
      case DenoiserKind::external:
        denoiser.external->predict(x, rps, weights, k, eps);
        if (eps.h() != n)
          throw std::invalid_argument("external denoiser returned a mismatched trajectory");
        break;
    }

    const double inv_sqrt_alpha = 1.0 / std::sqrt(alpha);
    const double eps_coeff = (1.0 - alpha) / std::sqrt(one_minus_bar);
    const double sigma = k > 1 ? schedule.sigma[idx] : 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      next.points[i].x = inv_sqrt_alpha * (x.points[i].x - eps_coeff * eps.points[i].x);
      next.points[i].y = inv_sqrt_alpha * (x.points[i].y - eps_coeff * eps.points[i].y);
    }
    if (k > 1) {
      // Drawn even when sigma is zero so the stream position depends on k only.
      for (std::size_t i = 0; i < n; ++i) {
        next.points[i].x += sigma * rng.normal();
        next.points[i].y += sigma * rng.normal();
      }
    }

    const double gamma = schedule.gamma[idx];
    if (gamma != 0.0) {
      const auto g = guidance_gradient(next, rps, weights, options);
      for (std::size_t i = 0; i < n; ++i) {
        next.points[i].x -= gamma * g[i].x;
        next.points[i].y -= gamma * g[i].y;
      }
    }
    std::swap(x, next);
    if (observer) observer(k - 1, x);
  }
  return x;
}

Permutation extract_order(const WaypointTrajectory& x, std::span<const Point2D> rp_positions) {
  const std::size_t m = rp_positions.size();
  if (x.h() < m || x.h() == 0)
    throw std::invalid_argument("extract_order: trajectory shorter than RP count");
  std::vector<std::size_t> first(m, 0);
  std::vector<double> best(m, std::numeric_limits<double>::infinity());
  for (std::size_t j = 0; j < m; ++j) {
    for (std::size_t i = 0; i < x.h(); ++i) {
      const double d = squared_distance(x.points[i], rp_positions[j]);
      if (d < best[j]) {
        best[j] = d;
        first[j] = i;
      }
    }
  }
  Permutation order(m);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (first[a] != first[b]) return first[a] < first[b];
    if (best[a] != best[b]) return best[a] < best[b];
    return a < b;
  });
  return order;
}

TourPlan plan_tour(std::uint64_t seed, const NetworkScenario& scenario, const RpPlan& plan,
                   const IntentWeights& weights, const DiffusionConfig& config,
                   const SnapshotObserver& observer) {
  const std::size_t m = plan.size();
  if (m == 0) throw std::invalid_argument("plan_tour: plan has no RPs");
  weights.validate();

  const AreaMap map(scenario.area);
  const auto rps_norm = map.normalize(plan.rp_positions);

  DenoiserSpec denoiser;
  denoiser.kind = config.denoiser;
  if (config.denoiser == DenoiserKind::analytic_reference) {
    denoiser.reference_order = nearest_neighbor_tour(plan.rp_positions, scenario.sink);
  } else if (config.denoiser == DenoiserKind::external) {
    denoiser.external = config.external;
  }

  const NoiseSchedule schedule =
      NoiseSchedule::linear(config.steps, config.beta_start, config.beta_end, config.guidance_scale);
  SnapshotObserver in_meters;
  if (observer) {
    in_meters = [&](int k, const WaypointTrajectory& x) { observer(k, map.denormalize(x)); };
  }
  const WaypointTrajectory x =
      sample_trajectory(seed, rps_norm, weights, schedule, denoiser, config.waypoints,
                        GuidanceOptions{config.softmin_temperature}, in_meters);

  TourPlan out;
  out.trajectory = map.denormalize(x);
  out.sampled_order = m == 1 ? Permutation{0} : extract_order(out.trajectory, plan.rp_positions);
  out.order = config.refine ? two_opt(out.sampled_order, plan.rp_positions, scenario.closed_tour,
                                      config.two_opt_max_passes)
                            : out.sampled_order;
  return out;
}

}  // namespace mdc
