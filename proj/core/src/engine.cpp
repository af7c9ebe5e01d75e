#include "sinrsim/engine.hpp"

#include <algorithm>
#include <map>

namespace sinrsim {

RoundEngine::RoundEngine(const NetworkTopology& topo, const SinrParams& params,
                         std::uint64_t master_seed, Trace* trace)
    : topo_(topo),
      params_(params),
      gains_(build_gain_matrix(topo, params)),
      rng_{master_seed},
      trace_(trace) {
  params_.validate(topo.space.growth_dimension);
}

const RoundOutcome& RoundEngine::step(const std::vector<double>& probs,
                                      const std::function<Message(int)>& msg_of) {
  if (static_cast<int>(probs.size()) != topo_.n()) {
    throw InvalidInputError("probability vector size does not match station count");
  }
  tx_buf_.clear();
  for (int i = 0; i < topo_.n(); ++i) {
    if (rng_.transmits(i, round_, probs[i])) tx_buf_.push_back(i);
  }
  return resolve_and_record(tx_buf_, &probs, msg_of);
}

const RoundOutcome& RoundEngine::step_fixed(
    const std::vector<int>& transmitters,
    const std::function<Message(int)>& msg_of) {
  tx_buf_ = transmitters;
  std::sort(tx_buf_.begin(), tx_buf_.end());
  return resolve_and_record(tx_buf_, nullptr, msg_of);
}

const RoundOutcome& RoundEngine::resolve_and_record(
    const std::vector<int>& transmitters, const std::vector<double>* probs,
    const std::function<Message(int)>& msg_of) {
  msg_buf_.clear();
  for (int v : transmitters) msg_buf_.push_back(msg_of ? msg_of(v) : Message{});
  outcome_ = resolve_round_cached(transmitters, msg_buf_, params_, topo_, gains_);
  outcome_.round = round_;
  if (trace_) {
    for (std::size_t k = 0; k < transmitters.size(); ++k) {
      trace_->add(round_, transmitters[k], TraceEventKind::transmit,
                  probs ? (*probs)[transmitters[k]] : 1.0);
    }
    for (const auto& r : outcome_.received) {
      trace_->add(round_, r.receiver, TraceEventKind::receive,
                  static_cast<double>(r.sender),
                  static_cast<double>(r.msg.payload));
    }
  }
  ++round_;
  return outcome_;
}

void verify_trace_replay(const Trace& trace, const NetworkTopology& topo,
                         const SinrParams& params) {
  // Group recorded transmit/receive events per round.
  std::map<std::int64_t, std::vector<int>> tx;
  std::map<std::int64_t, std::vector<std::pair<int, int>>> rx;
  for (const auto& e : trace.events()) {
    if (e.event == TraceEventKind::transmit) {
      tx[e.round].push_back(e.station);
    } else if (e.event == TraceEventKind::receive) {
      rx[e.round].push_back({e.station, static_cast<int>(e.detail1)});
    }
  }
  for (auto& [round, transmitters] : tx) {
    auto outcome = resolve_round(transmitters, {}, params, topo);
    std::vector<std::pair<int, int>> resolved;
    resolved.reserve(outcome.received.size());
    for (const auto& r : outcome.received) resolved.push_back({r.receiver, r.sender});
    std::sort(resolved.begin(), resolved.end());
    auto recorded = rx.count(round) ? rx[round] : std::vector<std::pair<int, int>>{};
    std::sort(recorded.begin(), recorded.end());
    if (resolved != recorded) {
      throw InvariantViolationError("trace-replay", round,
                                    "re-resolved receive set differs from trace");
    }
    rx.erase(round);
  }
  if (!rx.empty()) {
    throw InvariantViolationError("trace-replay", rx.begin()->first,
                                  "receive event recorded in a round with no transmit events");
  }
}

}  // namespace sinrsim
