#pragma once

#include <cstdint>
#include <vector>

#include "sinrsim/topology.hpp"

namespace sinrsim {

/// Physical-layer parameters. The communication range r = (P/(N*beta))^(1/alpha)
/// is normalized to 1 by the default P = N*beta.
struct SinrParams {
  double alpha = 3.0;    // path loss, > gamma of the space
  double beta = 1.0;     // reception threshold, >= 1
  double noise = 1.0;    // ambient noise N, > 0
  double power = 1.0;    // uniform transmit power P, > 0
  double epsilon = 0.25; // connectivity parameter of the communication graph

  double comm_range() const;
  void validate(double gamma) const;

  static SinrParams normalized(double alpha, double beta, double noise,
                               double epsilon) {
    // P = N*beta makes r = 1.
    return SinrParams{alpha, beta, noise, noise * beta, epsilon};
  }
};

enum class MessageKind : std::uint8_t { hello, source, wakeup, consensus_bit };

/// Unit of transmission. Every message carries the global round counter so
/// sleeping stations can synchronize to the sender's schedule.
struct Message {
  std::int64_t payload = 0;
  std::int64_t elapsed_rounds = 0;
  MessageKind kind = MessageKind::hello;
};

struct Reception {
  int receiver = -1;  // station index
  int sender = -1;    // station index
  Message msg;
};

/// Result of resolving one round: who transmitted and who decoded whom.
/// Station indices, not ids. Transmitters never receive (half-duplex) and a
/// receiver decodes at most one sender.
struct RoundOutcome {
  std::int64_t round = 0;
  std::vector<int> transmitters;     // sorted indices
  std::vector<Reception> received;   // sorted by receiver
  std::vector<double> interference_log;  // per-station total received power; empty unless requested

  const Reception* reception_of(int receiver_ix) const;
};

double comm_range(const SinrParams& params);

/// SINR(v,u,T) of Eq-style reception: P*d(v,u)^-alpha / (N + sum over T\{v}).
/// v must transmit, u must differ from v.
double sinr_ratio(int v_ix, int u_ix, const std::vector<int>& transmitters,
                  const SinrParams& params, const NetworkTopology& topo);

/// Total power at u from all transmitters except the nearest one (ties by
/// smallest index). Diagnostic quantity; reception itself never uses it.
double interference_at(int u_ix, const std::vector<int>& transmitters,
                       const SinrParams& params, const NetworkTopology& topo);

/// Precomputed P*d^-alpha for every ordered pair; shared by all rounds of a
/// trial. Entries for i==j are 0.
struct GainMatrix {
  int n = 0;
  std::vector<double> g;
  double at(int i, int j) const { return g[static_cast<std::size_t>(i) * n + j]; }
};

GainMatrix build_gain_matrix(const NetworkTopology& topo, const SinrParams& params);

/// Resolves one round: each non-transmitter decodes the unique transmitter
/// whose SINR meets beta, if any. With beta >= 1 at most one candidate can
/// qualify; this is asserted on every call.
RoundOutcome resolve_round(const std::vector<int>& transmitters,
                           const std::vector<Message>& messages,
                           const SinrParams& params, const NetworkTopology& topo,
                           bool want_interference_log = false);

/// Same semantics, using a prebuilt gain matrix.
RoundOutcome resolve_round_cached(const std::vector<int>& transmitters,
                                  const std::vector<Message>& messages,
                                  const SinrParams& params,
                                  const NetworkTopology& topo,
                                  const GainMatrix& gains,
                                  bool want_interference_log = false);

}  // namespace sinrsim
