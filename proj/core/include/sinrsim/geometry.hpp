#pragma once

#include <array>
#include <cstdint>
#include <string>

#include "sinrsim/errors.hpp"

namespace sinrsim {

/// A point of the embedding space. Coordinates are in model units; the
/// communication range is normalized to 1.
struct MetricPoint {
  std::array<double, 2> c{0.0, 0.0};
  int dim = 2;
};

inline MetricPoint point1(double x) { return MetricPoint{{x, 0.0}, 1}; }
inline MetricPoint point2(double x, double y) { return MetricPoint{{x, y}, 2}; }

enum class SpaceKind { euclidean2, line };

std::string to_string(SpaceKind kind);
SpaceKind space_kind_from_string(const std::string& s);

/// Metric space with the bounded growth property: a radius-cd ball is covered
/// by c^gamma radius-d balls (hidden constant taken as 1). Shipped instances:
/// the Euclidean plane (gamma 2) and the line (gamma 1).
struct MetricSpace {
  SpaceKind kind = SpaceKind::euclidean2;
  double growth_dimension = 2.0;
  int embedding_dim = 2;

  double dist(const MetricPoint& p, const MetricPoint& q) const;

  static MetricSpace euclidean_plane() {
    return MetricSpace{SpaceKind::euclidean2, 2.0, 2};
  }
  static MetricSpace line() { return MetricSpace{SpaceKind::line, 1.0, 1}; }
  static MetricSpace from_kind(SpaceKind kind) {
    return kind == SpaceKind::line ? line() : euclidean_plane();
  }
};

double dist(const MetricPoint& p, const MetricPoint& q, const MetricSpace& space);

/// Conservative covering number estimate: the number of radius-rho balls
/// sufficient to cover a radius-R ball is bounded by ceil(3R/rho)^gamma.
/// Overestimating only makes derived constants more conservative.
std::int64_t covering_bound(double big_radius, double small_radius, double gamma);

}  // namespace sinrsim
