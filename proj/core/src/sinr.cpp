#include "sinrsim/sinr.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace sinrsim {

double SinrParams::comm_range() const {
  return std::pow(power / (noise * beta), 1.0 / alpha);
}

void SinrParams::validate(double gamma) const {
  if (!(alpha > gamma)) throw InvalidInputError("alpha must exceed gamma");
  if (!(beta >= 1.0)) throw InvalidInputError("beta must be >= 1");
  if (!(noise > 0.0)) throw InvalidInputError("noise must be positive");
  if (!(power > 0.0)) throw InvalidInputError("power must be positive");
  if (!(epsilon > 0.0 && epsilon < 1.0)) {
    throw InvalidInputError("epsilon must lie in (0,1)");
  }
}

double comm_range(const SinrParams& params) { return params.comm_range(); }

const Reception* RoundOutcome::reception_of(int receiver_ix) const {
  auto it = std::lower_bound(received.begin(), received.end(), receiver_ix,
                             [](const Reception& r, int v) { return r.receiver < v; });
  if (it == received.end() || it->receiver != receiver_ix) return nullptr;
  return &*it;
}

namespace {

double pair_gain(const NetworkTopology& topo, const SinrParams& params, int a,
                 int b) {
  const double d = topo.dist_ix(a, b);
  if (d == 0.0) {
    throw DegenerateGeometryError("coincident stations in SINR evaluation");
  }
  return params.power * std::pow(d, -params.alpha);
}

}  // namespace

double sinr_ratio(int v_ix, int u_ix, const std::vector<int>& transmitters,
                  const SinrParams& params, const NetworkTopology& topo) {
  if (v_ix == u_ix) throw InvalidInputError("sinr_ratio requires u != v");
  if (std::find(transmitters.begin(), transmitters.end(), v_ix) ==
      transmitters.end()) {
    throw InvalidInputError("sinr_ratio requires v in the transmitter set");
  }
  const double signal = pair_gain(topo, params, v_ix, u_ix);
  double denom = params.noise;
  for (int w : transmitters) {
    if (w == v_ix || w == u_ix) continue;
    denom += pair_gain(topo, params, w, u_ix);
  }
  return signal / denom;
}

double interference_at(int u_ix, const std::vector<int>& transmitters,
                       const SinrParams& params, const NetworkTopology& topo) {
  if (transmitters.empty()) {
    throw InvalidInputError("interference_at requires a nonempty transmitter set");
  }
  int nearest = -1;
  double nearest_d = std::numeric_limits<double>::infinity();
  for (int w : transmitters) {
    if (w == u_ix) continue;
    const double d = topo.dist_ix(w, u_ix);
    if (d == 0.0) {
      throw DegenerateGeometryError("receiver coincides with a transmitter");
    }
    if (d < nearest_d || (d == nearest_d && w < nearest)) {
      nearest_d = d;
      nearest = w;
    }
  }
  double sum = 0.0;
  for (int w : transmitters) {
    if (w == u_ix || w == nearest) continue;
    sum += pair_gain(topo, params, w, u_ix);
  }
  return sum;
}

GainMatrix build_gain_matrix(const NetworkTopology& topo, const SinrParams& params) {
  const int n = topo.n();
  GainMatrix m;
  m.n = n;
  m.g.assign(static_cast<std::size_t>(n) * n, 0.0);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      m.g[static_cast<std::size_t>(i) * n + j] = pair_gain(topo, params, i, j);
    }
  }
  return m;
}

namespace {

template <typename GainFn>
RoundOutcome resolve_impl(const std::vector<int>& transmitters,
                          const std::vector<Message>& messages,
                          const SinrParams& params, const NetworkTopology& topo,
                          GainFn gain, bool want_log) {
  if (!messages.empty() && messages.size() != transmitters.size()) {
    throw InvalidInputError("messages must parallel the transmitter list");
  }
  const int n = topo.n();
  RoundOutcome out;
  out.transmitters = transmitters;
  std::sort(out.transmitters.begin(), out.transmitters.end());
  if (want_log) out.interference_log.assign(n, 0.0);
  if (out.transmitters.empty()) return out;

  std::vector<bool> is_tx(n, false);
  std::vector<int> msg_of(n, -1);  // station index -> position in caller order
  for (std::size_t k = 0; k < transmitters.size(); ++k) {
    is_tx[transmitters[k]] = true;
    msg_of[transmitters[k]] = static_cast<int>(k);
  }

  for (int u = 0; u < n; ++u) {
    if (is_tx[u]) continue;
    // One pass: total power plus the two strongest candidates.
    double total = 0.0;
    double best = -1.0, second = -1.0;
    int best_ix = -1;
    for (int v : out.transmitters) {
      const double s = gain(v, u);
      total += s;
      if (s > best) {
        second = best;
        best = s;
        best_ix = v;
      } else if (s > second) {
        second = s;
      }
    }
    if (want_log) out.interference_log[u] = total;
    const double sinr_best = best / (params.noise + total - best);
    if (sinr_best >= params.beta) {
      if (second > 0.0) {
        const double sinr_second = second / (params.noise + total - second);
        if (sinr_second >= params.beta) {
          throw InvariantViolationError(
              "unique-reception", -1,
              "two transmitters reach SINR >= beta at one receiver");
        }
      }
      Message msg;
      if (!messages.empty()) msg = messages[msg_of[best_ix]];
      out.received.push_back(Reception{u, best_ix, msg});
    }
  }
  return out;
}

}  // namespace

RoundOutcome resolve_round(const std::vector<int>& transmitters,
                           const std::vector<Message>& messages,
                           const SinrParams& params, const NetworkTopology& topo,
                           bool want_interference_log) {
  return resolve_impl(
      transmitters, messages, params, topo,
      [&](int v, int u) { return pair_gain(topo, params, v, u); },
      want_interference_log);
}

RoundOutcome resolve_round_cached(const std::vector<int>& transmitters,
                                  const std::vector<Message>& messages,
                                  const SinrParams& params,
                                  const NetworkTopology& topo,
                                  const GainMatrix& gains,
                                  bool want_interference_log) {
  return resolve_impl(
      transmitters, messages, params, topo,
      [&](int v, int u) { return gains.at(v, u); }, want_interference_log);
}

}  // namespace sinrsim
