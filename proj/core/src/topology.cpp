#include "sinrsim/topology.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <deque>
#include <fstream>
#include <limits>
#include <sstream>

#include "sinrsim/rng.hpp"

namespace sinrsim {

int NetworkTopology::index_of(int id) const {
  auto it = std::lower_bound(
      stations.begin(), stations.end(), id,
      [](const Station& s, int value) { return s.id < value; });
  if (it == stations.end() || it->id != id) {
    throw InvalidInputError("unknown station id " + std::to_string(id));
  }
  return static_cast<int>(it - stations.begin());
}

std::vector<int> NetworkTopology::neighbor_ids(int id) const {
  const int i = index_of(id);
  std::vector<int> out;
  out.reserve(adjacency[i].size());
  for (int j : adjacency[i]) out.push_back(stations[j].id);
  return out;
}

namespace {

/// BFS distances (in hops) from source; -1 unreachable.
std::vector<int> bfs_hops(const NetworkTopology& topo, int source) {
  std::vector<int> hops(topo.stations.size(), -1);
  std::deque<int> queue{source};
  hops[source] = 0;
  while (!queue.empty()) {
    const int v = queue.front();
    queue.pop_front();
    for (int w : topo.adjacency[v]) {
      if (hops[w] < 0) {
        hops[w] = hops[v] + 1;
        queue.push_back(w);
      }
    }
  }
  return hops;
}

}  // namespace

void build_comm_graph(NetworkTopology& topo) {
  const int n = topo.n();
  const double threshold = 1.0 - topo.epsilon;
  topo.dists.assign(static_cast<std::size_t>(n) * n, 0.0);
  topo.adjacency.assign(n, {});

  double min_edge = std::numeric_limits<double>::infinity();
  double max_edge = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const double d = topo.space.dist(topo.stations[i].pos, topo.stations[j].pos);
      if (d == 0.0) {
        throw DegenerateGeometryError(
            "stations " + std::to_string(topo.stations[i].id) + " and " +
            std::to_string(topo.stations[j].id) + " coincide");
      }
      topo.dists[static_cast<std::size_t>(i) * n + j] = d;
      topo.dists[static_cast<std::size_t>(j) * n + i] = d;
      if (d <= threshold) {
        topo.adjacency[i].push_back(j);
        topo.adjacency[j].push_back(i);
        min_edge = std::min(min_edge, d);
        max_edge = std::max(max_edge, d);
      }
    }
  }
  topo.granularity = max_edge > 0.0 ? max_edge / min_edge : 1.0;

  // Connectivity and diameter by BFS from every node.
  topo.connected = true;
  topo.components = n > 0 ? 1 : 0;
  topo.diameter = 0;
  if (n == 0) return;
  const auto from_zero = bfs_hops(topo, 0);
  int unreachable = 0;
  for (int h : from_zero) {
    if (h < 0) ++unreachable;
  }
  if (unreachable > 0) {
    // Count components for the disconnection report.
    std::vector<bool> seen(n, false);
    int components = 0;
    for (int i = 0; i < n; ++i) {
      if (seen[i]) continue;
      ++components;
      const auto hops = bfs_hops(topo, i);
      for (int j = 0; j < n; ++j) {
        if (hops[j] >= 0) seen[j] = true;
      }
    }
    topo.connected = false;
    topo.components = components;
    topo.diameter = -1;
    return;
  }
  int diameter = 0;
  for (int i = 0; i < n; ++i) {
    const auto hops = bfs_hops(topo, i);
    diameter = std::max(diameter, *std::max_element(hops.begin(), hops.end()));
  }
  topo.diameter = diameter;
}

std::string to_string(TopologyFamily family) {
  switch (family) {
    case TopologyFamily::uniform_square: return "uniform-square";
    case TopologyFamily::grid: return "grid";
    case TopologyFamily::line_uniform: return "line-uniform";
    case TopologyFamily::line_geometric: return "line-geometric";
  }
  return "?";
}

TopologyFamily family_from_string(const std::string& s) {
  if (s == "uniform-square") return TopologyFamily::uniform_square;
  if (s == "grid") return TopologyFamily::grid;
  if (s == "line-uniform") return TopologyFamily::line_uniform;
  if (s == "line-geometric") return TopologyFamily::line_geometric;
  throw InvalidInputError("unknown topology family '" + s + "'");
}

namespace {

NetworkTopology assemble(MetricSpace space, double epsilon,
                         std::vector<Station> stations) {
  NetworkTopology topo;
  topo.space = space;
  topo.epsilon = epsilon;
  topo.stations = std::move(stations);
  build_comm_graph(topo);
  return topo;
}

}  // namespace

NetworkTopology generate_topology(TopologyFamily family, int n,
                                  const FamilyParams& params, double epsilon,
                                  std::uint64_t seed) {
  if (n < 1) throw InvalidInputError("n must be >= 1");
  if (!(epsilon > 0.0 && epsilon < 1.0)) {
    throw InvalidInputError("epsilon must lie in (0,1)");
  }

  switch (family) {
    case TopologyFamily::uniform_square: {
      if (!(params.side > 0.0)) throw InvalidInputError("side must be positive");
      rng::Stream stream(rng::combine(seed, 0xA11CE));
      NetworkTopology last;
      for (int attempt = 0; attempt < 100; ++attempt) {
        std::vector<Station> stations(n);
        for (int i = 0; i < n; ++i) {
          stations[i] = {i, point2(stream.next_range(0.0, params.side),
                                   stream.next_range(0.0, params.side))};
        }
        last = assemble(MetricSpace::euclidean_plane(), epsilon,
                        std::move(stations));
        if (last.connected) return last;
      }
      throw TopologyDisconnectedError(
          "uniform-square stayed disconnected after 100 resamples (" +
              std::to_string(last.components) + " components)",
          last.components);
    }
    case TopologyFamily::grid: {
      if (!(params.spacing > 0.0)) {
        throw InvalidInputError("spacing must be positive");
      }
      const int cols = static_cast<int>(std::ceil(std::sqrt(double(n))));
      std::vector<Station> stations(n);
      for (int i = 0; i < n; ++i) {
        stations[i] = {i, point2((i % cols) * params.spacing,
                                 (i / cols) * params.spacing)};
      }
      auto topo = assemble(MetricSpace::euclidean_plane(), epsilon,
                           std::move(stations));
      if (!topo.connected) {
        throw TopologyDisconnectedError(
            "grid spacing " + std::to_string(params.spacing) +
                " disconnects the communication graph (" +
                std::to_string(topo.components) + " components)",
            topo.components);
      }
      return topo;
    }
    case TopologyFamily::line_uniform: {
      if (!(params.spacing > 0.0)) {
        throw InvalidInputError("spacing must be positive");
      }
      std::vector<Station> stations(n);
      for (int i = 0; i < n; ++i) stations[i] = {i, point1(i * params.spacing)};
      auto topo = assemble(MetricSpace::line(), epsilon, std::move(stations));
      if (!topo.connected) {
        throw TopologyDisconnectedError(
            "line spacing " + std::to_string(params.spacing) +
                " exceeds the communication threshold (" +
                std::to_string(topo.components) + " components)",
            topo.components);
      }
      return topo;
    }
    case TopologyFamily::line_geometric: {
      // x_1 = 0 and dist(x_i, x_{i+1}) = 1/2^i: granularity grows
      // exponentially with n while the diameter stays small.
      std::vector<Station> stations(n);
      double x = 0.0;
      for (int i = 0; i < n; ++i) {
        stations[i] = {i, point1(x)};
        x += std::pow(0.5, i + 1);
      }
      auto topo = assemble(MetricSpace::line(), epsilon, std::move(stations));
      if (!topo.connected) {
        throw TopologyDisconnectedError(
            "line-geometric disconnected for epsilon " + std::to_string(epsilon),
            topo.components);
      }
      return topo;
    }
  }
  throw InvalidInputError("unhandled topology family");
}

std::vector<int> ball_members(const NetworkTopology& topo, int center_id,
                              double radius) {
  if (radius < 0.0) throw InvalidInputError("radius must be >= 0");
  const int c = topo.index_of(center_id);
  std::vector<int> out;
  for (int i = 0; i < topo.n(); ++i) {
    if (i == c || topo.dist_ix(c, i) <= radius) out.push_back(i);
  }
  return out;
}

std::vector<int> ball_members_point(const NetworkTopology& topo,
                                    const MetricPoint& center, double radius) {
  if (radius < 0.0) throw InvalidInputError("radius must be >= 0");
  std::vector<int> out;
  for (int i = 0; i < topo.n(); ++i) {
    if (topo.space.dist(center, topo.stations[i].pos) <= radius) out.push_back(i);
  }
  return out;
}

void write_topology_file(const NetworkTopology& topo, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw InvalidInputError("cannot open '" + path + "' for writing");
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", topo.epsilon);
  out << "#space=" << to_string(topo.space.kind) << " epsilon=" << buf << "\n";
  for (const auto& s : topo.stations) {
    out << s.id;
    for (int d = 0; d < topo.space.embedding_dim; ++d) {
      std::snprintf(buf, sizeof buf, "%.17g", s.pos.c[d]);
      out << ", " << buf;
    }
    out << "\n";
  }
}

NetworkTopology read_topology_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInputError("cannot open topology file '" + path + "'");
  std::string line;
  int line_no = 0;

  auto parse_fail = [&](const std::string& why) -> SimError {
    return InvalidInputError(path + ":" + std::to_string(line_no) + ": " + why);
  };

  if (!std::getline(in, line)) throw parse_fail("empty file");
  ++line_no;
  std::string space_name, eps_str;
  {
    std::istringstream hdr(line);
    std::string tok;
    while (hdr >> tok) {
      if (tok.rfind("#space=", 0) == 0) space_name = tok.substr(7);
      else if (tok.rfind("epsilon=", 0) == 0) eps_str = tok.substr(8);
    }
    if (space_name.empty() || eps_str.empty()) {
      throw parse_fail("expected header '#space=<euclidean2|line> epsilon=<eps>'");
    }
  }

  NetworkTopology topo;
  topo.space = MetricSpace::from_kind(space_kind_from_string(space_name));
  topo.epsilon = std::stod(eps_str);
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream rec(line);
    Station s;
    char comma = 0;
    if (!(rec >> s.id >> comma) || comma != ',') {
      throw parse_fail("expected 'id, coord...'");
    }
    s.pos.dim = topo.space.embedding_dim;
    for (int d = 0; d < topo.space.embedding_dim; ++d) {
      if (!(rec >> s.pos.c[d])) throw parse_fail("missing coordinate");
      if (d + 1 < topo.space.embedding_dim && !(rec >> comma)) {
        throw parse_fail("missing coordinate separator");
      }
    }
    topo.stations.push_back(s);
  }
  std::sort(topo.stations.begin(), topo.stations.end(),
            [](const Station& a, const Station& b) { return a.id < b.id; });
  for (std::size_t i = 1; i < topo.stations.size(); ++i) {
    if (topo.stations[i].id == topo.stations[i - 1].id) {
      throw InvalidInputError(path + ": duplicate station id " +
                              std::to_string(topo.stations[i].id));
    }
  }
  build_comm_graph(topo);
  return topo;
}

}  // namespace sinrsim
