#pragma once

#include <cmath>
#include <stdexcept>

namespace mdc {

/// Planar position in meters.
struct Point2D {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point2D&, const Point2D&) = default;
};

inline double squared_distance(Point2D a, Point2D b) {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  return dx * dx + dy * dy;
}

inline double distance(Point2D a, Point2D b) { return std::hypot(a.x - b.x, a.y - b.y); }

inline bool is_finite(Point2D p) { return std::isfinite(p.x) && std::isfinite(p.y); }

/// Axis-aligned rectangle [min_x, max_x] x [min_y, max_y].
struct Area {
  double min_x = 0.0;
  double min_y = 0.0;
  double max_x = 0.0;
  double max_y = 0.0;

  double width() const { return max_x - min_x; }
  double height() const { return max_y - min_y; }

  bool degenerate() const {
    return !(std::isfinite(min_x) && std::isfinite(min_y) && std::isfinite(max_x) &&
             std::isfinite(max_y)) ||
           width() <= 0.0 || height() <= 0.0;
  }

  bool contains(Point2D p) const {
    return p.x >= min_x && p.x <= max_x && p.y >= min_y && p.y <= max_y;
  }

  friend bool operator==(const Area&, const Area&) = default;
};

}  // namespace mdc
