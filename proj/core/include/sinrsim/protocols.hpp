#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "sinrsim/coloring.hpp"

namespace sinrsim {

/// Adversarial wake rounds by station index; kNeverWakes for stations that
/// only wake by receiving a message.
inline constexpr std::int64_t kNeverWakes = -1;

struct WakeSchedule {
  std::vector<std::int64_t> wake_round;

  std::int64_t first_wake() const;  // throws InvalidInputError if none finite
  bool all_at_zero() const;
};

/// File format: one `station_id, wake_round` record per line, `inf` for never.
void write_wake_schedule(const WakeSchedule& schedule,
                         const NetworkTopology& topo, const std::string& path);
WakeSchedule read_wake_schedule(const NetworkTopology& topo,
                                const std::string& path);

struct RunSummary {
  std::string protocol;
  std::uint64_t seed = 0;
  std::string profile_mode;
  std::int64_t total_rounds = 0;       // global rounds simulated
  std::int64_t completion_rounds = -1; // protocol-specific measure; -1 incomplete
  std::int64_t budget_rounds = 0;
  bool success = false;
  bool budget_exhausted = false;
  std::vector<std::int64_t> first_informed;  // by station index; -1 never
  std::uint64_t trace_hash = 0;

  // consensus / leader election
  std::vector<std::int64_t> outputs;
  int leader = -1;
  bool min_id_collision = false;
  int reruns = 0;

  std::vector<std::pair<std::string, std::string>> checks;

  void check(const std::string& name, bool ok);
  /// Machine-parseable key=value document (config echo added by the caller).
  std::string to_text() const;
};

/// Round budgets derived from the profile; `mult` defaults to 4x the
/// calibrated bound.
struct ProtocolBudget {
  std::int64_t phase_rounds = 0;     // NoSBroadcast: L_SP + L_TX
  std::int64_t nosb_total = 0;       // mult * D * phase_rounds
  std::int64_t sb_transmit = 0;      // mult * ceil(a_sb*(D log2 n + log2^2 n))
  std::int64_t wakeup_window = 0;    // T for the ad hoc wake-up
  std::int64_t colored_window = 0;   // L_SP + ceil(a_sb*(D log2 n + log2^2 n))
};

ProtocolBudget make_budget(const NetworkTopology& topo,
                           const ConstantProfile& profile, double mult = 4.0);

/// Broadcast without spontaneous wake-up: D-style phases, each one coloring
/// execution on the informed set followed by a probabilistic transmit window.
/// Every transmission carries the payload. round_budget <= 0 uses the default.
RunSummary run_nos_broadcast(const NetworkTopology& topo, const SinrParams& params,
                             const ConstantProfile& profile, int source_id,
                             std::uint64_t seed, std::int64_t round_budget = 0,
                             Trace* trace = nullptr);

/// Broadcast with spontaneous wake-up: one global coloring, one deterministic
/// source round, then per-round probabilistic relay of the payload.
/// completion_rounds counts from the source round.
RunSummary run_s_broadcast(const NetworkTopology& topo, const SinrParams& params,
                           const ConstantProfile& profile, int source_id,
                           std::uint64_t seed, std::int64_t round_budget = 0,
                           Trace* trace = nullptr);

/// Ad hoc wake-up: spontaneously woken stations defer to the next multiple of
/// the broadcast budget T and run the broadcast treating the wake-up signal
/// as the payload. completion_rounds counts from the first spontaneous wake.
RunSummary run_wakeup_adhoc(const NetworkTopology& topo, const SinrParams& params,
                            const ConstantProfile& profile,
                            const WakeSchedule& schedule, std::uint64_t seed,
                            Trace* trace = nullptr);

/// Wake-up on an established coloring: a fresh coloring q_v is built for the
/// spontaneous set, then the message is relayed with color p_v + q_v.
RunSummary run_wakeup_colored(const NetworkTopology& topo, const SinrParams& params,
                              const ConstantProfile& profile,
                              const std::vector<double>& base_colors,
                              const WakeSchedule& schedule, std::uint64_t seed,
                              Trace* trace = nullptr);

/// Bitwise consensus on the minimum input value over {0..x}: one wake-up with
/// established coloring per bit, most-significant bit first.
RunSummary run_consensus(const NetworkTopology& topo, const SinrParams& params,
                         const ConstantProfile& profile,
                         const std::vector<std::int64_t>& values, std::int64_t x,
                         const WakeSchedule& schedule, std::uint64_t seed,
                         Trace* trace = nullptr);

/// Random IDs from {1..n^3}, consensus on the minimum, leader = unique holder.
/// Re-runs with fresh IDs when the minimum collides (counted in `reruns`).
RunSummary run_leader_election(const NetworkTopology& topo, const SinrParams& params,
                               const ConstantProfile& profile, std::uint64_t seed,
                               Trace* trace = nullptr);

/// Steady-state per-hop progress probe: with every station transmitting at
/// p_v/(c_bc*eps*log2 n), measures how often exactly one station of
/// B(probe, eps/2) transmits and is heard everywhere within 1-eps/2 of it.
struct ProgressProbe {
  std::int64_t rounds = 0;
  std::int64_t hits = 0;
  double rate = 0.0;
  double wilson_lower = 0.0;  // 95% lower confidence bound
};

ProgressProbe measure_progress_rate(const NetworkTopology& topo,
                                    const SinrParams& params,
                                    const ConstantProfile& profile,
                                    const std::vector<double>& colors,
                                    int probe_ix, std::int64_t rounds,
                                    std::uint64_t seed);

}  // namespace sinrsim
