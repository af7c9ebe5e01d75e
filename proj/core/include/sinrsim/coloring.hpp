#pragma once

#include <functional>
#include <vector>

#include "sinrsim/constants.hpp"
#include "sinrsim/engine.hpp"

namespace sinrsim {

/// Sentinel color for stations that did not participate in a coloring.
inline constexpr double kNoColor = -1.0;

enum class ColoringSubphase : std::uint8_t { density, playoff };

/// Per-station probability-stabilization automaton. All stations advance on
/// one lockstep window schedule: each doubling iteration holds c' inner
/// iterations of a density window followed by a playoff window. The playoff
/// window runs even when the density verdict is already false; only the quit
/// decision combines the two verdicts. A success is a round in which the
/// station sent or received a message.
class ColoringState {
 public:
  ColoringState(const ConstantProfile& profile, int schedule_n);

  /// Transmit probability for the upcoming round: p_v in density windows,
  /// p_v * c_eps in playoff windows (clamped to 1), 0 after quitting.
  double transmit_prob() const;

  /// Advances past one resolved round. Throws ProtocolOrderError once quit.
  void step(bool sent, bool received);

  bool running() const { return !quit_; }
  double color() const;  // valid once quit
  double p() const { return p_; }
  std::int64_t success_count() const { return success_count_; }

  // Window schedule position.
  std::int64_t iteration() const { return iter_; }
  std::int64_t inner() const { return inner_; }
  ColoringSubphase subphase() const { return subphase_; }
  std::int64_t round_in_subphase() const { return round_in_sub_; }

 private:
  void quit_with(double color);
  void advance_window();

  ConstantProfile profile_;
  ScheduleLengths sched_;
  double p_ = 0.0;
  bool quit_ = false;
  double color_ = kNoColor;
  std::int64_t success_count_ = 0;
  bool density_verdict_ = false;
  std::int64_t iter_ = 0;
  std::int64_t inner_ = 0;
  ColoringSubphase subphase_ = ColoringSubphase::density;
  std::int64_t round_in_sub_ = 0;
};

/// Spec-level step entry point; sent/received describe the just-resolved
/// round for this station.
inline void stabilize_probability_step(ColoringState& state, bool sent,
                                       bool received) {
  state.step(sent, received);
}

struct StabilizeResult {
  std::vector<double> colors;  // per station index; kNoColor if not participating
  std::int64_t rounds = 0;     // rounds consumed; always the schedule total
};

/// Runs one lockstep execution of the stabilization procedure over the given
/// participant set. Every participant ends with a color. msg_of supplies the
/// hello message per transmitter (protocols attach payloads here); on_round,
/// when set, observes every resolved outcome (e.g. to inform sleepers).
StabilizeResult run_stabilize_probability(
    RoundEngine& engine, const std::vector<int>& participants,
    const ConstantProfile& profile, int schedule_n,
    const std::function<Message(int)>& msg_of = {},
    const std::function<void(const RoundOutcome&)>& on_round = {});

struct Lemma1Report {
  bool pass = true;
  double worst_color = kNoColor;
  int worst_center = -1;
  double worst_sum = 0.0;
};

/// Checks, for every station-centered ball of the given radius and every
/// color, that the per-color probability mass stays below the threshold.
/// Returns the worst (color, center, sum) triple seen.
Lemma1Report verify_lemma1(const std::vector<double>& colors,
                           const NetworkTopology& topo, double c1_threshold,
                           double radius = 1.0);

struct Lemma2Report {
  bool pass = true;
  int worst_station = -1;
  double worst_best_mass = 0.0;
};

/// Calibrated proximity-mass threshold. Colors live on the doubling ladder,
/// so any station's own quit color is at least p_max/2; this is the largest
/// constant the single-station case can support.
inline double lemma2_threshold(const ConstantProfile& profile) {
  return profile.p_max / 2.0;
}

/// Checks that every participating station has some color whose mass within
/// its eps/2-ball (self included) reaches the threshold.
Lemma2Report verify_lemma2(const std::vector<double>& colors,
                           const NetworkTopology& topo, double epsilon,
                           double threshold);

}  // namespace sinrsim
