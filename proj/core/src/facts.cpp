#include "sinrsim/facts.hpp"

#include <cmath>
#include <sstream>

#include "sinrsim/rng.hpp"

namespace sinrsim {

BoundCheck check_fact_sum(const std::vector<double>& p) {
  double s = 0.0;
  for (double pi : p) {
    if (pi < 0.0 || pi > 1.0) throw PreconditionError("probability outside [0,1]");
    s += pi;
  }
  if (s > 0.5) throw PreconditionError("sum of probabilities exceeds 1/2");
  double exactly_one = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    double term = p[i];
    for (std::size_t j = 0; j < p.size(); ++j) {
      if (j != i) term *= 1.0 - p[j];
    }
    exactly_one += term;
  }
  BoundCheck check;
  check.value = exactly_one;
  check.lower = s / 2.0;
  check.upper = s;
  const double slack = 1e-12;
  check.pass = exactly_one >= check.lower - slack && exactly_one <= check.upper + slack;
  return check;
}

BoundCheck check_fact_notransmit(const std::vector<double>& p) {
  double s = 0.0;
  double none = 1.0;
  for (double pi : p) {
    if (pi < 0.0 || pi > 0.5) {
      throw PreconditionError("probability outside [0,1/2]");
    }
    s += pi;
    none *= 1.0 - pi;
  }
  BoundCheck check;
  check.value = none;
  check.lower = std::pow(0.25, s);
  check.upper = 1.0;
  check.pass = none >= check.lower - 1e-12;
  return check;
}

namespace {

struct InstanceBuilder {
  std::vector<Station> stations;
  int add(double x, double y) {
    const int id = static_cast<int>(stations.size());
    stations.push_back({id, point2(x, y)});
    return id;
  }
  NetworkTopology build(double epsilon) {
    NetworkTopology topo;
    topo.space = MetricSpace::euclidean_plane();
    topo.epsilon = epsilon;
    topo.stations = std::move(stations);
    build_comm_graph(topo);
    return topo;
  }
};

std::string describe(const NetworkTopology& topo, const std::vector<int>& tx,
                     const char* fact) {
  std::ostringstream out;
  out << fact << " failure; epsilon=" << topo.epsilon << "; stations:";
  for (const auto& s : topo.stations) {
    out << " " << s.id << "@(" << s.pos.c[0] << "," << s.pos.c[1] << ")";
  }
  out << "; transmitters:";
  for (int v : tx) out << " " << v;
  return out.str();
}

}  // namespace

ReceptionFactsReport check_reception_facts(std::uint64_t seed,
                                           std::int64_t instances_per_fact) {
  if (instances_per_fact < 1) throw InvalidInputError("instances_per_fact >= 1");
  ReceptionFactsReport report;
  const SinrParams params = SinrParams::normalized(3.0, 1.0, 1.0, 0.5);
  const double alpha = params.alpha;
  rng::Stream stream(rng::combine(seed, 0xFAC75));

  auto note_failure = [&](const NetworkTopology& topo, const std::vector<int>& tx,
                          const char* fact) {
    if (report.first_failure.empty()) {
      report.first_failure = describe(topo, tx, fact);
    }
  };

  // Near reception: the nearest transmitter wins under a hard interference cap.
  const double x_cap = std::pow(2.0, -1.0 / alpha);
  std::int64_t guard = instances_per_fact * 200;
  while (report.near_checked < instances_per_fact && guard-- > 0) {
    InstanceBuilder build;
    const int u = build.add(0.0, 0.0);
    const double x = stream.next_range(0.05, x_cap);
    const double angle = stream.next_range(0.0, 6.283185307179586);
    const int v = build.add(x * std::cos(angle), x * std::sin(angle));
    std::vector<int> tx{v};
    const int extras = static_cast<int>(stream.next_below(5));
    for (int k = 0; k < extras; ++k) {
      const double d = stream.next_range(x * 1.05, 4.0);
      const double a = stream.next_range(0.0, 6.283185307179586);
      tx.push_back(build.add(d * std::cos(a), d * std::sin(a)));
    }
    auto topo = build.build(params.epsilon);
    if (interference_at(u, tx, params, topo) > params.noise / (2.0 * std::pow(x, alpha))) {
      continue;  // hypothesis not satisfied; vacuous
    }
    ++report.near_checked;
    auto outcome = resolve_round(tx, {}, params, topo);
    const auto* rec = outcome.reception_of(u);
    if (rec == nullptr || rec->sender != v) {
      ++report.near_failures;
      note_failure(topo, tx, "near-reception");
    }
  }

  // Margin reception: interference <= N*alpha*x keeps distance 1-x decodable.
  guard = instances_per_fact * 200;
  while (report.margin_checked < instances_per_fact && guard-- > 0) {
    InstanceBuilder build;
    const int u = build.add(0.0, 0.0);
    const double x = stream.next_range(0.05, 0.6);
    const double d_v = 1.0 - x;
    const double angle = stream.next_range(0.0, 6.283185307179586);
    const int v = build.add(d_v * std::cos(angle), d_v * std::sin(angle));
    std::vector<int> tx{v};
    const int extras = static_cast<int>(stream.next_below(4));
    for (int k = 0; k < extras; ++k) {
      const double d = stream.next_range(1.0, 6.0);
      const double a = stream.next_range(0.0, 6.283185307179586);
      tx.push_back(build.add(d * std::cos(a), d * std::sin(a)));
    }
    auto topo = build.build(params.epsilon);
    if (interference_at(u, tx, params, topo) > params.noise * alpha * x) {
      continue;
    }
    ++report.margin_checked;
    auto outcome = resolve_round(tx, {}, params, topo);
    const auto* rec = outcome.reception_of(u);
    if (rec == nullptr || rec->sender != v) {
      ++report.margin_failures;
      note_failure(topo, tx, "margin-reception");
    }
  }

  // Proxy coverage: reception everywhere within 1-eps/2 of the sender covers
  // all neighbors of the sender's eps/2-ball.
  guard = instances_per_fact * 200;
  while (report.proxy_checked < instances_per_fact && guard-- > 0) {
    InstanceBuilder build;
    const int n = 4 + static_cast<int>(stream.next_below(12));
    const double side = stream.next_range(1.0, 3.0);
    for (int k = 0; k < n; ++k) {
      build.add(stream.next_range(0.0, side), stream.next_range(0.0, side));
    }
    const double epsilon = stream.next_range(0.15, 0.7);
    NetworkTopology topo;
    try {
      topo = build.build(epsilon);
    } catch (const DegenerateGeometryError&) {
      continue;
    }
    std::vector<int> tx;
    for (int k = 0; k < n; ++k) {
      if (stream.next_unit() < 1.5 / n) tx.push_back(k);
    }
    if (tx.empty()) continue;
    auto outcome = resolve_round(tx, {}, params, topo);
    const double cover = 1.0 - epsilon / 2.0;
    for (int v : tx) {
      // Hypothesis: no other transmitter within 1-eps/2 of v, and every
      // non-transmitting station there decoded v.
      bool hyp = true;
      for (int w : tx) {
        if (w != v && topo.dist_ix(v, w) <= cover) hyp = false;
      }
      if (!hyp) continue;
      for (int u = 0; u < n && hyp; ++u) {
        if (u == v || topo.dist_ix(v, u) > cover) continue;
        if (std::find(tx.begin(), tx.end(), u) != tx.end()) continue;
        const auto* rec = outcome.reception_of(u);
        hyp = rec != nullptr && rec->sender == v;
      }
      if (!hyp) continue;
      ++report.proxy_checked;
      // Conclusion: all neighbors of all stations within eps/2 of v decode v.
      bool ok = true;
      for (int w = 0; w < n && ok; ++w) {
        if (topo.dist_ix(v, w) > epsilon / 2.0 && w != v) continue;
        for (int u : topo.adjacency[w]) {
          if (u == v) continue;
          if (std::find(tx.begin(), tx.end(), u) != tx.end()) continue;
          const auto* rec = outcome.reception_of(u);
          if (rec == nullptr || rec->sender != v) {
            ok = false;
            break;
          }
        }
      }
      if (!ok) {
        ++report.proxy_failures;
        note_failure(topo, tx, "proxy-coverage");
      }
    }
  }

  return report;
}

}  // namespace sinrsim
