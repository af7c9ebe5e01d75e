#include "sinrsim/coloring.hpp"

#include <algorithm>
#include <map>

namespace sinrsim {

ColoringState::ColoringState(const ConstantProfile& profile, int schedule_n)
    : profile_(profile), sched_(schedule_length(profile, schedule_n)) {
  p_ = profile_.p_start;
  if (sched_.total_rounds == 0) {
    // Empty schedule: the while loop never runs (p_start >= p_max already).
    quit_with(2.0 * profile_.p_max);
  }
}

double ColoringState::transmit_prob() const {
  if (quit_) return 0.0;
  const double p = subphase_ == ColoringSubphase::density ? p_ : p_ * profile_.c_eps;
  return std::min(1.0, p);
}

void ColoringState::quit_with(double color) {
  quit_ = true;
  color_ = color;
}

double ColoringState::color() const {
  if (!quit_) throw ProtocolOrderError("color requested before the station quit");
  return color_;
}

void ColoringState::step(bool sent, bool received) {
  if (quit_) throw ProtocolOrderError("step after quit");
  if (sent || received) ++success_count_;
  ++round_in_sub_;
  const std::int64_t window = subphase_ == ColoringSubphase::density
                                  ? sched_.density_rounds
                                  : sched_.playoff_rounds;
  if (round_in_sub_ < window) return;
  advance_window();
}

void ColoringState::advance_window() {
  if (subphase_ == ColoringSubphase::density) {
    density_verdict_ = success_count_ >= sched_.density_threshold;
    success_count_ = 0;
    round_in_sub_ = 0;
    subphase_ = ColoringSubphase::playoff;
    if (sched_.playoff_rounds > 0) return;
  }
  // Playoff window complete (possibly zero-length).
  const bool playoff_verdict = success_count_ >= sched_.playoff_threshold;
  if (density_verdict_ && playoff_verdict) {
    quit_with(p_);
    return;
  }
  success_count_ = 0;
  round_in_sub_ = 0;
  subphase_ = ColoringSubphase::density;
  if (++inner_ < static_cast<std::int64_t>(profile_.c_prime)) return;
  inner_ = 0;
  p_ *= 2.0;
  if (++iter_ >= sched_.iterations) quit_with(2.0 * profile_.p_max);
}

StabilizeResult run_stabilize_probability(
    RoundEngine& engine, const std::vector<int>& participants,
    const ConstantProfile& profile, int schedule_n,
    const std::function<Message(int)>& msg_of,
    const std::function<void(const RoundOutcome&)>& on_round) {
  const int n = engine.topology().n();
  const auto sched = schedule_length(profile, schedule_n);
  StabilizeResult result;
  result.colors.assign(n, kNoColor);
  result.rounds = sched.total_rounds;

  std::vector<ColoringState> states;
  states.reserve(participants.size());
  for (std::size_t k = 0; k < participants.size(); ++k) {
    states.emplace_back(profile, schedule_n);
  }

  std::vector<double> probs(n, 0.0);
  std::vector<bool> quit_logged(participants.size(), false);
  auto log_quits = [&]() {
    if (!engine.trace()) return;
    for (std::size_t k = 0; k < participants.size(); ++k) {
      if (!quit_logged[k] && !states[k].running()) {
        quit_logged[k] = true;
        engine.trace()->add(engine.round(), participants[k],
                            TraceEventKind::quit_color, states[k].color());
      }
    }
  };
  log_quits();  // empty schedules quit at construction

  for (std::int64_t r = 0; r < sched.total_rounds; ++r) {
    std::fill(probs.begin(), probs.end(), 0.0);
    for (std::size_t k = 0; k < participants.size(); ++k) {
      probs[participants[k]] = states[k].transmit_prob();
    }
    const auto& outcome = engine.step(probs, msg_of);
    for (std::size_t k = 0; k < participants.size(); ++k) {
      if (!states[k].running()) continue;  // quit stations idle out the schedule
      const int v = participants[k];
      const bool sent = std::binary_search(outcome.transmitters.begin(),
                                           outcome.transmitters.end(), v);
      const bool received = outcome.reception_of(v) != nullptr;
      states[k].step(sent, received);
    }
    log_quits();
    if (on_round) on_round(outcome);
  }

  for (std::size_t k = 0; k < participants.size(); ++k) {
    result.colors[participants[k]] = states[k].color();
  }
  return result;
}

Lemma1Report verify_lemma1(const std::vector<double>& colors,
                           const NetworkTopology& topo, double c1_threshold,
                           double radius) {
  Lemma1Report report;
  const int n = topo.n();
  std::map<double, double> mass;  // color -> sum within the current ball
  for (int c = 0; c < n; ++c) {
    mass.clear();
    for (int i = 0; i < n; ++i) {
      if (colors[i] < 0.0) continue;
      if (topo.dist_ix(c, i) <= radius) mass[colors[i]] += colors[i];
    }
    for (const auto& [color, sum] : mass) {
      if (sum > report.worst_sum) {
        report.worst_sum = sum;
        report.worst_color = color;
        report.worst_center = c;
      }
    }
  }
  report.pass = report.worst_sum < c1_threshold;
  return report;
}

Lemma2Report verify_lemma2(const std::vector<double>& colors,
                           const NetworkTopology& topo, double epsilon,
                           double threshold) {
  Lemma2Report report;
  const int n = topo.n();
  const double radius = epsilon / 2.0;
  std::map<double, double> mass;
  bool first = true;
  for (int v = 0; v < n; ++v) {
    if (colors[v] < 0.0) continue;
    mass.clear();
    for (int i = 0; i < n; ++i) {
      if (colors[i] < 0.0) continue;
      if (topo.dist_ix(v, i) <= radius) mass[colors[i]] += colors[i];
    }
    double best = 0.0;
    for (const auto& [color, sum] : mass) best = std::max(best, sum);
    if (first || best < report.worst_best_mass) {
      first = false;
      report.worst_best_mass = best;
      report.worst_station = v;
    }
  }
  report.pass = first || report.worst_best_mass >= threshold;
  return report;
}

}  // namespace sinrsim
