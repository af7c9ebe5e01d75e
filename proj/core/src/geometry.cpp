#include "sinrsim/geometry.hpp"

#include <cmath>

namespace sinrsim {

std::string to_string(SpaceKind kind) {
  return kind == SpaceKind::line ? "line" : "euclidean2";
}

SpaceKind space_kind_from_string(const std::string& s) {
  if (s == "line") return SpaceKind::line;
  if (s == "euclidean2") return SpaceKind::euclidean2;
  throw InvalidInputError("unknown metric space '" + s + "'");
}

double MetricSpace::dist(const MetricPoint& p, const MetricPoint& q) const {
  if (p.dim != embedding_dim || q.dim != embedding_dim) {
    throw InvalidInputError("point dimension does not match space dimension");
  }
  switch (kind) {
    case SpaceKind::line:
      return std::abs(p.c[0] - q.c[0]);
    case SpaceKind::euclidean2: {
      const double dx = p.c[0] - q.c[0];
      const double dy = p.c[1] - q.c[1];
      return std::sqrt(dx * dx + dy * dy);
    }
  }
  throw InvalidInputError("unhandled space kind");
}

double dist(const MetricPoint& p, const MetricPoint& q, const MetricSpace& space) {
  return space.dist(p, q);
}

std::int64_t covering_bound(double big_radius, double small_radius, double gamma) {
  if (!(big_radius > 0.0) || !(small_radius > 0.0) || !(gamma > 0.0)) {
    throw InvalidInputError("covering_bound requires positive radii and gamma");
  }
  const double k = std::ceil(3.0 * big_radius / small_radius);
  return static_cast<std::int64_t>(std::ceil(std::pow(k, gamma)));
}

}  // namespace sinrsim
