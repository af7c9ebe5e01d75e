#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sinrsim/geometry.hpp"

namespace sinrsim {

struct Station {
  int id = 0;
  MetricPoint pos;
};

/// Embedded stations plus the derived communication graph. Edges join pairs
/// at distance <= 1-eps (closed threshold). Internally stations are addressed
/// by dense index in id order; public lookups go through station ids.
struct NetworkTopology {
  MetricSpace space;
  double epsilon = 0.25;
  std::vector<Station> stations;  // sorted by id, ids unique

  // Derived by build_comm_graph():
  std::vector<std::vector<int>> adjacency;  // neighbor indices per index
  bool connected = true;
  int components = 1;
  int diameter = 0;          // -1 when disconnected
  double granularity = 1.0;  // R_s = max edge distance / min edge distance
  std::vector<double> dists;  // n*n pairwise distances, row-major

  int n() const { return static_cast<int>(stations.size()); }
  double dist_ix(int i, int j) const { return dists[static_cast<std::size_t>(i) * stations.size() + j]; }
  int index_of(int id) const;  // throws InvalidInputError on unknown id
  std::vector<int> neighbor_ids(int id) const;
};

/// Recomputes distances, adjacency, connectivity, diameter and granularity.
/// Throws DegenerateGeometryError on coincident stations.
void build_comm_graph(NetworkTopology& topo);

enum class TopologyFamily { uniform_square, grid, line_uniform, line_geometric };

std::string to_string(TopologyFamily family);
TopologyFamily family_from_string(const std::string& s);

struct FamilyParams {
  double side = 4.0;     // uniform_square: square side length
  double spacing = 0.5;  // grid / line_uniform: neighbor spacing
};

/// Deterministic for fixed (family, n, params, epsilon, seed). The uniform
/// family resamples up to 100 times when the draw is disconnected, then
/// throws TopologyDisconnectedError. Deterministic families throw on the
/// first disconnected build.
NetworkTopology generate_topology(TopologyFamily family, int n,
                                  const FamilyParams& params, double epsilon,
                                  std::uint64_t seed);

/// Station indices within the closed ball of the given radius. The center
/// station is always a member of its own ball.
std::vector<int> ball_members(const NetworkTopology& topo, int center_id,
                              double radius);
std::vector<int> ball_members_point(const NetworkTopology& topo,
                                    const MetricPoint& center, double radius);

/// Plain-text topology file: header `#space=<euclidean2|line> epsilon=<eps>`,
/// then one `id, coord_1[, coord_2]` record per station. Coordinates are
/// written with 17 significant digits so read(write(t)) is bit-exact.
void write_topology_file(const NetworkTopology& topo, const std::string& path);
NetworkTopology read_topology_file(const std::string& path);

}  // namespace sinrsim
