#include "sinrsim/protocols.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace sinrsim {

std::int64_t WakeSchedule::first_wake() const {
  std::int64_t best = -1;
  for (std::int64_t w : wake_round) {
    if (w >= 0 && (best < 0 || w < best)) best = w;
  }
  if (best < 0) {
    throw InvalidInputError("wake schedule has no finite entry");
  }
  return best;
}

bool WakeSchedule::all_at_zero() const {
  for (std::int64_t w : wake_round) {
    if (w != 0) return false;
  }
  return !wake_round.empty();
}

void write_wake_schedule(const WakeSchedule& schedule,
                         const NetworkTopology& topo, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw InvalidInputError("cannot open '" + path + "' for writing");
  for (int i = 0; i < topo.n(); ++i) {
    out << topo.stations[i].id << ", ";
    if (schedule.wake_round[i] < 0) out << "inf";
    else out << schedule.wake_round[i];
    out << "\n";
  }
}

WakeSchedule read_wake_schedule(const NetworkTopology& topo,
                                const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInputError("cannot open wake schedule '" + path + "'");
  WakeSchedule schedule;
  schedule.wake_round.assign(topo.n(), kNeverWakes);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream rec(line);
    int id = 0;
    char comma = 0;
    std::string when;
    if (!(rec >> id >> comma >> when) || comma != ',') {
      throw InvalidInputError(path + ":" + std::to_string(line_no) +
                              ": expected 'station_id, wake_round'");
    }
    schedule.wake_round[topo.index_of(id)] =
        when == "inf" ? kNeverWakes : std::stoll(when);
  }
  return schedule;
}

void RunSummary::check(const std::string& name, bool ok) {
  checks.push_back({name, ok ? "ok" : "violated"});
}

std::string RunSummary::to_text() const {
  std::ostringstream out;
  out << "protocol = " << protocol << "\n";
  out << "seed = " << seed << "\n";
  out << "profile_mode = " << profile_mode << "\n";
  out << "total_rounds = " << total_rounds << "\n";
  out << "completion_rounds = " << completion_rounds << "\n";
  out << "budget_rounds = " << budget_rounds << "\n";
  out << "success = " << (success ? "true" : "false") << "\n";
  out << "budget_exhausted = " << (budget_exhausted ? "true" : "false") << "\n";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(trace_hash));
  out << "trace_hash = " << buf << "\n";
  if (leader >= 0) out << "leader = " << leader << "\n";
  if (!outputs.empty()) {
    out << "outputs =";
    for (auto v : outputs) out << " " << v;
    out << "\n";
  }
  out << "min_id_collision = " << (min_id_collision ? "true" : "false") << "\n";
  out << "reruns = " << reruns << "\n";
  if (!first_informed.empty()) {
    out << "first_informed =";
    for (auto r : first_informed) out << " " << r;
    out << "\n";
  }
  for (const auto& [name, verdict] : checks) {
    out << "check." << name << " = " << verdict << "\n";
  }
  return out.str();
}

namespace {

double safe_log2(int n) { return std::max(1.0, std::log2(static_cast<double>(n))); }

double relay_prob(double color, const ConstantProfile& profile, double epsilon,
                  double log2n) {
  if (color <= 0.0) return 0.0;
  return std::min(1.0, color / (profile.c_bc * epsilon * log2n));
}

/// Informed-set bookkeeping shared by the protocols. Asserts that the payload
/// never mutates and that the set only grows.
struct Informed {
  std::vector<bool> is;
  std::vector<std::int64_t> first;
  std::int64_t expected_payload;
  int count = 0;
  std::int64_t last_inform_round = -1;
  Trace* trace = nullptr;

  Informed(int n, std::int64_t payload, Trace* t)
      : is(n, false), first(n, -1), expected_payload(payload), trace(t) {}

  void inform(int v, std::int64_t round, std::int64_t payload) {
    if (payload != expected_payload) {
      throw InvariantViolationError("payload-integrity", round,
                                    "station decoded a mutated payload");
    }
    if (is[v]) return;
    is[v] = true;
    first[v] = round;
    ++count;
    last_inform_round = std::max(last_inform_round, round);
    if (trace) trace->add(round, v, TraceEventKind::inform,
                          static_cast<double>(round),
                          static_cast<double>(payload));
  }

  bool all() const { return count == static_cast<int>(is.size()); }
};

std::int64_t ceil_rounds(double x) {
  return static_cast<std::int64_t>(std::ceil(x));
}

/// One broadcast execution of the non-spontaneous protocol: repeated phases
/// of (coloring on the informed set, transmit window), run until everyone is
/// informed or the budget boundary. All transmissions carry the payload.
void nosb_core(RoundEngine& engine, Informed& informed,
               const ConstantProfile& profile, std::int64_t budget_end,
               std::int64_t tx_rounds_per_phase) {
  const auto& topo = engine.topology();
  const int n = topo.n();
  const double log2n = safe_log2(n);
  const double eps = engine.params().epsilon;
  std::vector<double> probs(n, 0.0);
  std::int64_t phase_ix = 0;

  while (!informed.all() && engine.round() < budget_end) {
    if (engine.trace()) {
      engine.trace()->add(engine.round(), -1, TraceEventKind::phase_boundary,
                          static_cast<double>(phase_ix));
    }
    ++phase_ix;
    std::vector<int> active;
    std::vector<bool> is_active(n, false);
    for (int v = 0; v < n; ++v) {
      if (informed.is[v]) {
        active.push_back(v);
        is_active[v] = true;
      }
    }

    auto hello = [&](int v) {
      return Message{informed.expected_payload, engine.round(), MessageKind::hello};
    };
    auto watch = [&](const RoundOutcome& outcome) {
      for (int v : outcome.transmitters) {
        if (!is_active[v]) {
          throw InvariantViolationError("phase-synchrony", outcome.round,
                                        "station transmitted before its phase boundary");
        }
      }
      for (const auto& r : outcome.received) {
        informed.inform(r.receiver, outcome.round, r.msg.payload);
      }
    };

    auto colors = run_stabilize_probability(engine, active, profile, n, hello, watch);

    for (std::int64_t i = 0;
         i < tx_rounds_per_phase && engine.round() < budget_end; ++i) {
      if (informed.all()) break;
      std::fill(probs.begin(), probs.end(), 0.0);
      for (int v : active) {
        probs[v] = relay_prob(colors.colors[v], profile, eps, log2n) ;
      }
      const auto& outcome = engine.step(probs, [&](int v) {
        return Message{informed.expected_payload, engine.round(), MessageKind::source};
      });
      watch(outcome);
    }
  }
}

RunSummary base_summary(const char* protocol, const ConstantProfile& profile,
                        std::uint64_t seed) {
  RunSummary s;
  s.protocol = protocol;
  s.seed = seed;
  s.profile_mode = profile.mode;
  return s;
}

void finish_summary(RunSummary& s, const RoundEngine& engine,
                    const Informed& informed, Trace* trace) {
  s.total_rounds = engine.round();
  s.first_informed = informed.first;
  if (trace) s.trace_hash = trace->hash();
}

}  // namespace

ProtocolBudget make_budget(const NetworkTopology& topo,
                           const ConstantProfile& profile, double mult) {
  const int n = topo.n();
  const double log2n = safe_log2(n);
  const double diameter = static_cast<double>(std::max(1, topo.diameter));
  ProtocolBudget b;
  const auto sched = schedule_length(profile, n);
  b.phase_rounds = sched.total_rounds + ceil_rounds(profile.a_tx * log2n * log2n);
  b.nosb_total = ceil_rounds(mult * diameter) * b.phase_rounds;
  b.sb_transmit = ceil_rounds(mult * profile.a_sb * (diameter * log2n + log2n * log2n));
  b.wakeup_window = b.nosb_total;
  b.colored_window = sched.total_rounds + b.sb_transmit;
  return b;
}

RunSummary run_nos_broadcast(const NetworkTopology& topo, const SinrParams& params,
                             const ConstantProfile& profile, int source_id,
                             std::uint64_t seed, std::int64_t round_budget,
                             Trace* trace) {
  if (!topo.connected) {
    throw InvalidInputError("broadcast requires a connected communication graph");
  }
  const int n = topo.n();
  const auto budget = make_budget(topo, profile);
  const std::int64_t budget_end = round_budget > 0 ? round_budget : budget.nosb_total;
  const std::int64_t tx_rounds =
      ceil_rounds(profile.a_tx * safe_log2(n) * safe_log2(n));

  auto summary = base_summary("nos-broadcast", profile, seed);
  summary.budget_rounds = budget_end;

  RoundEngine engine(topo, params, seed, trace);
  Informed informed(n, static_cast<std::int64_t>(seed % 1000000007ULL), trace);
  informed.inform(topo.index_of(source_id), 0, informed.expected_payload);

  nosb_core(engine, informed, profile, budget_end, tx_rounds);

  summary.success = informed.all();
  summary.budget_exhausted = !summary.success;
  if (summary.success) {
    summary.completion_rounds = std::max<std::int64_t>(0, informed.last_inform_round);
  }
  finish_summary(summary, engine, informed, trace);
  return summary;
}

RunSummary run_s_broadcast(const NetworkTopology& topo, const SinrParams& params,
                           const ConstantProfile& profile, int source_id,
                           std::uint64_t seed, std::int64_t round_budget,
                           Trace* trace) {
  if (!topo.connected) {
    throw InvalidInputError("broadcast requires a connected communication graph");
  }
  const int n = topo.n();
  const double log2n = safe_log2(n);
  const auto budget = make_budget(topo, profile);
  const std::int64_t tx_budget = round_budget > 0 ? round_budget : budget.sb_transmit;

  auto summary = base_summary("s-broadcast", profile, seed);
  summary.budget_rounds = tx_budget;

  RoundEngine engine(topo, params, seed, trace);
  Informed informed(n, static_cast<std::int64_t>(seed % 1000000007ULL), trace);

  // Spontaneous wake-up: one coloring over all stations. Hellos carry no
  // payload, so nothing is learned before the source round.
  std::vector<int> everyone(n);
  for (int v = 0; v < n; ++v) everyone[v] = v;
  auto coloring = run_stabilize_probability(
      engine, everyone, profile, n,
      [&](int) { return Message{0, engine.round(), MessageKind::hello}; });

  const int source = topo.index_of(source_id);
  const std::int64_t source_round = engine.round();
  informed.inform(source, source_round, informed.expected_payload);
  {
    const auto& outcome = engine.step_fixed({source}, [&](int) {
      return Message{informed.expected_payload, engine.round(), MessageKind::source};
    });
    for (const auto& r : outcome.received) {
      informed.inform(r.receiver, outcome.round, r.msg.payload);
    }
  }

  std::vector<double> probs(n, 0.0);
  while (!informed.all() && engine.round() - source_round < tx_budget) {
    std::fill(probs.begin(), probs.end(), 0.0);
    for (int v = 0; v < n; ++v) {
      if (informed.is[v]) {
        probs[v] = relay_prob(coloring.colors[v], profile, params.epsilon, log2n);
      }
    }
    const auto& outcome = engine.step(probs, [&](int) {
      return Message{informed.expected_payload, engine.round(), MessageKind::source};
    });
    for (const auto& r : outcome.received) {
      informed.inform(r.receiver, outcome.round, r.msg.payload);
    }
  }

  summary.success = informed.all();
  summary.budget_exhausted = !summary.success;
  if (summary.success) {
    summary.completion_rounds =
        std::max<std::int64_t>(1, informed.last_inform_round - source_round + 1);
  }
  finish_summary(summary, engine, informed, trace);
  return summary;
}

namespace {

std::int64_t deferred_start(std::int64_t wake_round, std::int64_t window) {
  return (wake_round + window - 1) / window * window;
}

/// Shared wake-up driver: windows of length `window`; spontaneous stations
/// join at their deferred start, informed stations at every window start.
/// Returns true when all stations are activated by the window cap.
bool wakeup_adhoc_core(RoundEngine& engine, Informed& informed,
                       const WakeSchedule& schedule, const ConstantProfile& profile,
                       std::int64_t window, std::int64_t tx_rounds_per_phase) {
  const int n = engine.topology().n();
  std::int64_t last_deferred = 0;
  for (int v = 0; v < n; ++v) {
    if (schedule.wake_round[v] >= 0) {
      last_deferred = std::max(last_deferred,
                               deferred_start(schedule.wake_round[v], window));
    }
  }
  const std::int64_t cap_windows = last_deferred / window + 4;

  auto all_activated = [&]() {
    for (int v = 0; v < n; ++v) {
      if (!informed.is[v] && schedule.wake_round[v] < 0) return false;
    }
    return informed.count > 0;
  };

  for (std::int64_t k = 0; k <= cap_windows; ++k) {
    const std::int64_t window_start = k * window;
    const std::int64_t window_end = window_start + window;
    // Spontaneous wakers whose deferred start arrives now hold the wake-up
    // signal and join; anything already informed keeps participating.
    bool any_source = false;
    for (int v = 0; v < n; ++v) {
      if (schedule.wake_round[v] >= 0 &&
          deferred_start(schedule.wake_round[v], window) == window_start) {
        if (engine.trace()) {
          engine.trace()->add(window_start, v, TraceEventKind::wake,
                              static_cast<double>(schedule.wake_round[v]));
        }
        informed.inform(v, window_start, informed.expected_payload);
      }
      any_source = any_source || informed.is[v];
    }
    if (informed.all()) return true;
    if (!any_source) {
      engine.skip(window_end - engine.round());
      continue;
    }
    nosb_core(engine, informed, profile, window_end, tx_rounds_per_phase);
    if (informed.all()) return true;
    engine.skip(window_end - engine.round());
  }
  return all_activated() && informed.all();
}

}  // namespace

RunSummary run_wakeup_adhoc(const NetworkTopology& topo, const SinrParams& params,
                            const ConstantProfile& profile,
                            const WakeSchedule& schedule, std::uint64_t seed,
                            Trace* trace) {
  if (static_cast<int>(schedule.wake_round.size()) != topo.n()) {
    throw InvalidInputError("wake schedule size does not match station count");
  }
  const std::int64_t first = schedule.first_wake();  // throws on empty schedule
  const int n = topo.n();
  const auto budget = make_budget(topo, profile);
  const std::int64_t tx_rounds =
      ceil_rounds(profile.a_tx * safe_log2(n) * safe_log2(n));

  auto summary = base_summary("wakeup-adhoc", profile, seed);
  summary.budget_rounds = 2 * budget.wakeup_window;

  RoundEngine engine(topo, params, seed, trace);
  Informed informed(n, static_cast<std::int64_t>(seed % 1000000007ULL), trace);

  const bool done = wakeup_adhoc_core(engine, informed, schedule, profile,
                                      budget.wakeup_window, tx_rounds);
  summary.success = done;
  summary.budget_exhausted = !done;
  if (done) {
    // Activation time of a spontaneous station is its own wake round even if
    // the message reaches it later.
    std::int64_t completion = 0;
    for (int v = 0; v < n; ++v) {
      std::int64_t at = informed.first[v];
      if (schedule.wake_round[v] >= 0) at = std::min(at, schedule.wake_round[v]);
      completion = std::max(completion, at);
    }
    summary.completion_rounds = completion - first;
  }
  finish_summary(summary, engine, informed, trace);
  return summary;
}

namespace {

/// One fixed-length window of wake-up on an established coloring: recolor the
/// initiator set, then relay with color p_v + q_v. Rounds where nothing can
/// change any state (everyone informed) are skipped; the counter-based
/// streams keep later draws unaffected.
void colored_window_core(RoundEngine& engine, Informed& informed,
                         const std::vector<double>& base_colors,
                         const std::vector<int>& initiators,
                         const ConstantProfile& profile,
                         std::int64_t tx_rounds) {
  const auto& topo = engine.topology();
  const int n = topo.n();
  const double log2n = safe_log2(n);
  const double eps = engine.params().epsilon;

  for (int v : initiators) {
    informed.inform(v, engine.round(), informed.expected_payload);
  }
  auto hello = [&](int v) {
    return Message{informed.expected_payload, engine.round(), MessageKind::wakeup};
  };
  auto watch = [&](const RoundOutcome& outcome) {
    for (const auto& r : outcome.received) {
      informed.inform(r.receiver, outcome.round, r.msg.payload);
    }
  };
  auto q = run_stabilize_probability(engine, initiators, profile, n, hello, watch);

  std::vector<double> probs(n, 0.0);
  for (std::int64_t i = 0; i < tx_rounds; ++i) {
    if (informed.all()) {
      engine.skip(tx_rounds - i);
      break;
    }
    std::fill(probs.begin(), probs.end(), 0.0);
    for (int v = 0; v < n; ++v) {
      if (!informed.is[v]) continue;
      const double qv = q.colors[v] >= 0.0 ? q.colors[v] : 0.0;
      const double pv = base_colors[v] >= 0.0 ? base_colors[v] : 0.0;
      probs[v] = relay_prob(pv + qv, profile, eps, log2n);
    }
    const auto& outcome = engine.step(probs, [&](int) {
      return Message{informed.expected_payload, engine.round(), MessageKind::wakeup};
    });
    watch(outcome);
  }
}

}  // namespace

RunSummary run_wakeup_colored(const NetworkTopology& topo, const SinrParams& params,
                              const ConstantProfile& profile,
                              const std::vector<double>& base_colors,
                              const WakeSchedule& schedule, std::uint64_t seed,
                              Trace* trace) {
  if (static_cast<int>(base_colors.size()) != topo.n()) {
    throw InvalidInputError("base coloring size does not match station count");
  }
  if (static_cast<int>(schedule.wake_round.size()) != topo.n()) {
    throw InvalidInputError("wake schedule size does not match station count");
  }
  const std::int64_t first = schedule.first_wake();
  const int n = topo.n();
  const auto budget = make_budget(topo, profile);
  const std::int64_t window = budget.colored_window;
  const std::int64_t tx_rounds = budget.sb_transmit;

  auto summary = base_summary("wakeup-colored", profile, seed);
  summary.budget_rounds = 2 * window;

  RoundEngine engine(topo, params, seed, trace);
  Informed informed(n, static_cast<std::int64_t>(seed % 1000000007ULL), trace);

  std::int64_t last_deferred = 0;
  for (int v = 0; v < n; ++v) {
    if (schedule.wake_round[v] >= 0) {
      last_deferred = std::max(last_deferred,
                               deferred_start(schedule.wake_round[v], window));
    }
  }
  const std::int64_t cap_windows = last_deferred / window + 4;
  for (std::int64_t k = 0; k <= cap_windows && !informed.all(); ++k) {
    const std::int64_t window_start = k * window;
    std::vector<int> initiators;
    for (int v = 0; v < n; ++v) {
      // A station informed before its deferred start abandons spontaneous
      // participation.
      if (!informed.is[v] && schedule.wake_round[v] >= 0 &&
          deferred_start(schedule.wake_round[v], window) == window_start) {
        initiators.push_back(v);
        if (engine.trace()) {
          engine.trace()->add(window_start, v, TraceEventKind::wake,
                              static_cast<double>(schedule.wake_round[v]));
        }
      }
    }
    if (initiators.empty() && informed.count == 0) {
      engine.skip(window);
      continue;
    }
    colored_window_core(engine, informed, base_colors, initiators, profile,
                        tx_rounds);
  }

  summary.success = informed.all();
  summary.budget_exhausted = !summary.success;
  if (summary.success) {
    summary.completion_rounds = informed.last_inform_round - first;
  }
  finish_summary(summary, engine, informed, trace);
  return summary;
}

RunSummary run_consensus(const NetworkTopology& topo, const SinrParams& params,
                         const ConstantProfile& profile,
                         const std::vector<std::int64_t>& values, std::int64_t x,
                         const WakeSchedule& schedule, std::uint64_t seed,
                         Trace* trace) {
  const int n = topo.n();
  if (x < 1) throw InvalidInputError("consensus requires x >= 1");
  if (static_cast<int>(values.size()) != n) {
    throw InvalidInputError("values size does not match station count");
  }
  for (auto v : values) {
    if (v < 0 || v > x) throw InvalidInputError("consensus value out of [0,x]");
  }
  if (static_cast<int>(schedule.wake_round.size()) != n) {
    throw InvalidInputError("wake schedule size does not match station count");
  }

  int bits = 0;
  while ((x >> bits) != 0) ++bits;

  auto summary = base_summary("consensus", profile, seed);
  const auto budget = make_budget(topo, profile);
  const std::int64_t tx_rounds_nosb =
      ceil_rounds(profile.a_tx * safe_log2(n) * safe_log2(n));
  summary.budget_rounds = 2 * budget.wakeup_window +
                          schedule_length(profile, n).total_rounds +
                          bits * budget.colored_window;

  RoundEngine engine(topo, params, seed, trace);
  const std::int64_t wake_payload = 0;
  const std::int64_t first = schedule.first_wake();

  // Stage 1: everyone awake. With a simultaneous start the wake-up stage is
  // vacuous; otherwise run the ad hoc wake-up and align to a window boundary.
  bool wake_ok = true;
  if (!schedule.all_at_zero()) {
    Informed awake(n, wake_payload, trace);
    wake_ok = wakeup_adhoc_core(engine, awake, schedule, profile,
                                budget.wakeup_window, tx_rounds_nosb);
    const std::int64_t boundary =
        (engine.round() + budget.wakeup_window - 1) / budget.wakeup_window *
        budget.wakeup_window;
    engine.skip(boundary - engine.round());
  }
  if (!wake_ok) {
    summary.success = false;
    summary.budget_exhausted = true;
    summary.total_rounds = engine.round();
    if (trace) summary.trace_hash = trace->hash();
    return summary;
  }

  // Stage 2: base coloring over all stations.
  std::vector<int> everyone(n);
  for (int v = 0; v < n; ++v) everyone[v] = v;
  auto base = run_stabilize_probability(
      engine, everyone, profile, n,
      [&](int) { return Message{0, engine.round(), MessageKind::hello}; });

  // Stage 3: one wake-up with established coloring per bit, MSB first.
  std::vector<std::int64_t> prefix(n, 0);
  bool all_windows_delivered = true;
  for (int i = 0; i < bits; ++i) {
    const int shift = bits - 1 - i;
    std::vector<int> initiators;
    for (int v = 0; v < n; ++v) {
      if ((values[v] >> shift) == (prefix[v] << 1)) initiators.push_back(v);
    }
    if (initiators.empty()) {
      // Silence: every station reads bit 1 after the fixed-length window.
      engine.skip(budget.colored_window);
      for (int v = 0; v < n; ++v) prefix[v] = (prefix[v] << 1) | 1;
      continue;
    }
    Informed got(n, wake_payload, trace);
    colored_window_core(engine, got, base.colors, initiators, profile,
                        budget.sb_transmit);
    if (!got.all()) all_windows_delivered = false;
    for (int v = 0; v < n; ++v) {
      prefix[v] = (prefix[v] << 1) | (got.is[v] ? 0 : 1);
    }
  }

  summary.outputs = prefix;
  const std::int64_t expected = *std::min_element(values.begin(), values.end());
  bool agree = true;
  for (int v = 0; v < n; ++v) agree = agree && prefix[v] == expected;
  summary.check("bit-windows", all_windows_delivered);
  summary.check("agreement-on-min", agree);
  summary.success = agree && all_windows_delivered;
  summary.budget_exhausted = !all_windows_delivered;
  if (all_windows_delivered) summary.completion_rounds = engine.round() - first;
  summary.total_rounds = engine.round();
  if (trace) summary.trace_hash = trace->hash();
  return summary;
}

RunSummary run_leader_election(const NetworkTopology& topo, const SinrParams& params,
                               const ConstantProfile& profile, std::uint64_t seed,
                               Trace* trace) {
  const int n = topo.n();
  const std::int64_t id_space =
      static_cast<std::int64_t>(n) * n * n;  // IDs from {1..n^3}
  WakeSchedule simultaneous;
  simultaneous.wake_round.assign(n, 0);

  auto summary = base_summary("leader-election", profile, seed);
  std::int64_t total_rounds = 0;

  for (int attempt = 0; attempt < 8; ++attempt) {
    rng::Stream ids_rng(rng::combine(seed, 0x1D5 + attempt));
    std::vector<std::int64_t> ids(n);
    for (int v = 0; v < n; ++v) {
      ids[v] = 1 + static_cast<std::int64_t>(ids_rng.next_below(
                       static_cast<std::uint64_t>(id_space)));
    }
    const std::int64_t min_id = *std::min_element(ids.begin(), ids.end());
    const int holders =
        static_cast<int>(std::count(ids.begin(), ids.end(), min_id));
    if (attempt == 0) summary.min_id_collision = holders > 1;

    if (trace) trace->clear();
    auto consensus = run_consensus(topo, params, profile, ids, id_space,
                                   simultaneous, rng::combine(seed, attempt),
                                   trace);
    total_rounds += consensus.total_rounds;

    if (!consensus.success) {
      summary.success = false;
      summary.budget_exhausted = consensus.budget_exhausted;
      summary.outputs = consensus.outputs;
      summary.reruns = attempt;
      break;
    }
    if (holders == 1) {
      summary.success = true;
      summary.leader = static_cast<int>(
          std::find(ids.begin(), ids.end(), min_id) - ids.begin());
      summary.outputs = consensus.outputs;
      summary.completion_rounds = consensus.completion_rounds;
      summary.reruns = attempt;
      break;
    }
    // The agreed minimum is held by several stations; stations cannot see
    // this, the omniscient harness reports and re-runs with fresh IDs.
    summary.reruns = attempt + 1;
  }

  summary.total_rounds = total_rounds;
  if (trace) summary.trace_hash = trace->hash();
  return summary;
}

ProgressProbe measure_progress_rate(const NetworkTopology& topo,
                                    const SinrParams& params,
                                    const ConstantProfile& profile,
                                    const std::vector<double>& colors,
                                    int probe_ix, std::int64_t rounds,
                                    std::uint64_t seed) {
  const int n = topo.n();
  if (probe_ix < 0 || probe_ix >= n) throw InvalidInputError("bad probe index");
  const double log2n = safe_log2(n);
  const double eps_half = params.epsilon / 2.0;

  RoundEngine engine(topo, params, seed, nullptr);
  std::vector<double> probs(n, 0.0);
  for (int v = 0; v < n; ++v) {
    probs[v] = relay_prob(colors[v] >= 0.0 ? colors[v] : 0.0, profile,
                          params.epsilon, log2n);
  }

  ProgressProbe probe;
  probe.rounds = rounds;
  for (std::int64_t r = 0; r < rounds; ++r) {
    const auto& outcome = engine.step(probs, {});
    int lone = -1;
    int in_ball = 0;
    for (int v : outcome.transmitters) {
      if (v == probe_ix || topo.dist_ix(probe_ix, v) <= eps_half) {
        ++in_ball;
        lone = v;
      }
    }
    if (in_ball != 1) continue;
    bool heard_everywhere = true;
    for (int u = 0; u < n && heard_everywhere; ++u) {
      if (u == lone) continue;
      if (topo.dist_ix(lone, u) > 1.0 - eps_half) continue;
      if (std::binary_search(outcome.transmitters.begin(),
                             outcome.transmitters.end(), u)) {
        continue;  // half-duplex: transmitters cannot hear
      }
      const auto* rec = outcome.reception_of(u);
      heard_everywhere = rec != nullptr && rec->sender == lone;
    }
    if (heard_everywhere) ++probe.hits;
  }
  probe.rate = rounds > 0 ? static_cast<double>(probe.hits) / rounds : 0.0;
  // Wilson 95% lower bound.
  const double z = 1.959963984540054;
  const double nn = static_cast<double>(rounds);
  if (rounds > 0) {
    const double p = probe.rate;
    const double denom = 1.0 + z * z / nn;
    const double center = p + z * z / (2.0 * nn);
    const double margin = z * std::sqrt(p * (1.0 - p) / nn + z * z / (4.0 * nn * nn));
    probe.wilson_lower = (center - margin) / denom;
  }
  return probe;
}

}  // namespace sinrsim
