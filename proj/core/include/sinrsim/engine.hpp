#pragma once

#include <cstdint>
#include <functional>

#include "sinrsim/rng.hpp"
#include "sinrsim/sinr.hpp"
#include "sinrsim/trace.hpp"

namespace sinrsim {

/// Per-trial round clock: draws transmit sets from per-station probabilities
/// (counter-based streams, order-independent), resolves reception through the
/// cached gain matrix, and records the trace. Strictly sequential within a
/// trial; independent trials are safe to run concurrently.
class RoundEngine {
 public:
  RoundEngine(const NetworkTopology& topo, const SinrParams& params,
              std::uint64_t master_seed, Trace* trace = nullptr);

  std::int64_t round() const { return round_; }
  const NetworkTopology& topology() const { return topo_; }
  const SinrParams& params() const { return params_; }
  std::uint64_t seed() const { return rng_.master; }
  Trace* trace() const { return trace_; }

  /// Advances one round. probs[i] is station i's transmit probability;
  /// msg_of(i) supplies the message a transmitter sends.
  const RoundOutcome& step(const std::vector<double>& probs,
                           const std::function<Message(int)>& msg_of);

  /// Advances one round with an explicit transmitter set (deterministic
  /// transmissions, e.g. the source round of a broadcast).
  const RoundOutcome& step_fixed(const std::vector<int>& transmitters,
                                 const std::function<Message(int)>& msg_of);

  /// Skips rounds without transmissions (idle windows).
  void skip(std::int64_t rounds) { round_ += rounds; }

  const RoundOutcome& last() const { return outcome_; }

 private:
  const RoundOutcome& resolve_and_record(const std::vector<int>& transmitters,
                                         const std::vector<double>* probs,
                                         const std::function<Message(int)>& msg_of);

  const NetworkTopology& topo_;
  SinrParams params_;
  GainMatrix gains_;
  RoundRng rng_;
  Trace* trace_;
  std::int64_t round_ = 0;
  RoundOutcome outcome_;
  std::vector<int> tx_buf_;
  std::vector<Message> msg_buf_;
};

/// Re-resolves every round recorded in the trace and checks that the receive
/// events match exactly (receiver and sender). Throws InvariantViolationError
/// naming the first mismatching round.
void verify_trace_replay(const Trace& trace, const NetworkTopology& topo,
                         const SinrParams& params);

}  // namespace sinrsim
