#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <vector>

#include "mdc/model.hpp"
#include "mdc/rp_placement.hpp"

namespace mdc {

/// H planar waypoints. Inside the sampler coordinates are normalized to the
/// area map's [-1, 1]^2; after denormalization they are meters.
struct WaypointTrajectory {
  std::vector<Point2D> points;

  std::size_t h() const { return points.size(); }
  bool finite() const;
};

/// Affine map between the scenario rectangle and [-1, 1]^2.
class AreaMap {
 public:
  explicit AreaMap(const Area& area);

  Point2D normalize(Point2D p) const;
  Point2D denormalize(Point2D q) const;
  std::vector<Point2D> normalize(std::span<const Point2D> ps) const;
  WaypointTrajectory denormalize(const WaypointTrajectory& x) const;

 private:
  Point2D center_;
  double half_w_;
  double half_h_;
};

/// Per-step coefficients, index k-1 holding step k for k = 1..K.
struct NoiseSchedule {
  std::vector<double> beta;
  std::vector<double> alpha;
  std::vector<double> alpha_bar;
  std::vector<double> sigma;
  std::vector<double> gamma;

  int steps() const { return static_cast<int>(beta.size()); }

  /// Linear beta from beta_start to beta_end, sigma_k = sqrt(beta_k),
  /// gamma_k = guidance_scale * (1 - alpha_bar_k).
  static NoiseSchedule linear(int k_steps, double beta_start = 1e-4, double beta_end = 2e-2,
                              double guidance_scale = 0.1);

  /// Throws std::invalid_argument on inconsistent lengths or out-of-range values.
  void validate() const;
};

/// A learned noise predictor plugged in from outside the library.
class ExternalDenoiser {
 public:
  virtual ~ExternalDenoiser() = default;
  /// Writes the predicted noise for x_k (same shape) into eps.
  virtual void predict(const WaypointTrajectory& x_k, std::span<const Point2D> rp_positions_norm,
                       const IntentWeights& weights, int k, WaypointTrajectory& eps) const = 0;
};

enum class DenoiserKind { zero, analytic_reference, external };

struct DenoiserSpec {
  DenoiserKind kind = DenoiserKind::analytic_reference;
  /// RP visiting order traced by the reference trajectory (analytic_reference only).
  Permutation reference_order;
  std::shared_ptr<const ExternalDenoiser> external;

  static DenoiserSpec zero() { return {DenoiserKind::zero, {}, nullptr}; }
  static DenoiserSpec analytic(Permutation order) {
    return {DenoiserKind::analytic_reference, std::move(order), nullptr};
  }
  static DenoiserSpec from(std::shared_ptr<const ExternalDenoiser> model) {
    return {DenoiserKind::external, {}, std::move(model)};
  }
};

/// sqrt(|d|^2 + 1e-12); keeps gradients finite at coincident points.
double safe_norm(double dx, double dy);

struct GuidanceOptions {
  /// Softmin sharpness in normalized units; the hard min is the infinite limit.
  double softmin_temperature = 50.0;
};

/// eta_T * polyline length
///   + eta_P * sum_j w_j softmin_h |X(h) - p_j|
///   + eta_F * sum_j w_j softargmin_h(|X(h) - p_j|) / H
///
/// Weights must carry one importance entry per RP (or none for uniform).
double guidance_loss(const WaypointTrajectory& x, std::span<const Point2D> rp_positions_norm,
                     const IntentWeights& weights, GuidanceOptions options = {});

/// Analytic gradient of guidance_loss, one entry per waypoint.
std::vector<Point2D> guidance_gradient(const WaypointTrajectory& x,
                                       std::span<const Point2D> rp_positions_norm,
                                       const IntentWeights& weights,
                                       GuidanceOptions options = {});

/// `h` points at equal arc-length spacing along the open polyline through
/// `positions` in `order`, both ends included.
WaypointTrajectory resample_polyline(std::span<const int> order, std::span<const Point2D> positions,
                                     int h);

using SnapshotObserver = std::function<void(int k, const WaypointTrajectory& x_k)>;

/// Guided ancestral reverse diffusion in normalized coordinates.
///
/// For k = K..1: predict the noise, take the ancestral step with fresh Gaussian
/// noise (none at k = 1), then subtract gamma_k times the guidance gradient
/// evaluated at the intermediate sample. The Gaussian draws come from the
/// "diffusion/noise" stream of `seed` and do not depend on the weights.
/// `observer`, when set, sees X_K and every X_{k-1}.
WaypointTrajectory sample_trajectory(std::uint64_t seed, std::span<const Point2D> rp_positions_norm,
                                     const IntentWeights& weights, const NoiseSchedule& schedule,
                                     const DenoiserSpec& denoiser, int h,
                                     GuidanceOptions options = {},
                                     const SnapshotObserver& observer = {});

/// RPs sorted by the index of their nearest waypoint (first visit); ties by
/// RP-to-waypoint distance, then RP index.
Permutation extract_order(const WaypointTrajectory& x, std::span<const Point2D> rp_positions);

struct DiffusionConfig {
  int waypoints = 80;
  int steps = 50;
  double beta_start = 1e-4;
  double beta_end = 2e-2;
  double guidance_scale = 0.1;
  double softmin_temperature = 50.0;
  DenoiserKind denoiser = DenoiserKind::analytic_reference;
  std::shared_ptr<const ExternalDenoiser> external;
  bool refine = true;
  int two_opt_max_passes = 64;
};

struct TourPlan {
  Permutation order;
  /// Order read off the trajectory before 2-opt.
  Permutation sampled_order;
  /// Final trajectory in meters.
  WaypointTrajectory trajectory;
};

/// Sample, denormalize, extract the first-visit order and refine it with 2-opt.
/// The analytic reference follows the nearest-neighbor tour started at the RP
/// nearest the sink.
TourPlan plan_tour(std::uint64_t seed, const NetworkScenario& scenario, const RpPlan& plan,
                   const IntentWeights& weights, const DiffusionConfig& config,
                   const SnapshotObserver& observer = {});

}  // namespace mdc
