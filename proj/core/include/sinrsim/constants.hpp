#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "sinrsim/sinr.hpp"

namespace sinrsim {

/// Every constant the coloring procedure and the protocols consume, with its
/// provenance: `theory` means derived from the closed-form chain below,
/// `tuned` means a calibrated desk-scale profile (possibly with overrides on
/// top of the theory chain).
struct ConstantProfile {
  double C1 = 0.0;       // bounded-density budget per color and unit ball
  double C2 = 0.0;       // proximity-mass constant; p_max = C2 / c_eps
  double c0 = 0.0;       // density test length, rounds per log2 n
  double c1 = 0.0;       // density test threshold, successes per log2 n
  double c2 = 0.0;       // playoff length, rounds per log2 n
  double c3 = 0.0;       // playoff threshold, successes per log2 n
  double c_prime = 0.0;  // inner repetitions per doubling (integer-valued)
  double c_eps = 0.0;    // playoff probability scale
  double c_d = 0.0;      // density-test lower gap constant
  double q = 0.0;        // guaranteed quitting mass per playoff
  int z = 6;             // ball-shrink factor of the dense-ball search
  int a = 2;             // inner annulus factor
  int b = 0;             // outer annulus factor, least integer with b^g z^g q >= C1
  double p_start = 0.0;  // initial probability C1/(2n)
  double p_max = 0.0;    // ladder cap C2/c_eps
  double c_bc = 1.0;     // broadcast scale: transmit prob p_v/(c_bc*eps*log2 n)
  std::int64_t y = 0;    // covering_bound(1, 1/6)
  double a_tx = 1.0;     // per-phase transmit window, rounds per log2^2 n
  double a_sb = 1.0;     // spontaneous budget scale for D*log2 n + log2^2 n
  double c_hat = 0.0;    // calibrated per-hop progress rate coefficient
  std::string mode = "theory";

  /// Colors live on the doubling ladder {2^i * p_start}.
  bool is_legal_color(double color, int n) const;
};

/// Partial sum to 10^6 plus an Euler-Maclaurin tail; relative error is far
/// below 1e-10 for every alpha > gamma. Throws DivergentSeriesError when
/// alpha <= gamma.
double interference_series(double alpha, double gamma);

/// The theory chain, in dependency order. `n` fixes p_start = C1/(2n).
/// Overrides replace named fields after derivation and switch mode to tuned.
ConstantProfile derive_constants(const SinrParams& params, double gamma, int n,
                                 const std::map<std::string, double>& overrides = {});

/// The calibrated desk-scale profile shipped with the repository; output of
/// the default calibration sweep (see calibrate.hpp). Structural constants
/// (q, z, a, b, y, c_d) keep their theory values for the given params.
ConstantProfile tuned_default(const SinrParams& params, double gamma, int n);

struct ScheduleLengths {
  std::int64_t density_rounds = 0;   // ceil(c0 * log2 n)
  std::int64_t playoff_rounds = 0;   // ceil(c2 * log2 n)
  std::int64_t inner_rounds = 0;     // density + playoff
  std::int64_t iteration_rounds = 0; // c_prime * inner_rounds
  std::int64_t iterations = 0;       // ceil(log2(p_max / p_start)), >= 0
  std::int64_t total_rounds = 0;     // iterations * iteration_rounds
  std::int64_t density_threshold = 0; // ceil(c1 * log2 n)
  std::int64_t playoff_threshold = 0; // ceil(c3 * log2 n)
};

/// All stations share this schedule (lockstep); the coloring always runs for
/// exactly total_rounds rounds regardless of randomness.
ScheduleLengths schedule_length(const ConstantProfile& profile, int n);

/// [constants] section serialization; every field explicit, full precision.
std::string profile_to_config(const ConstantProfile& profile);
ConstantProfile profile_from_config(const std::string& text);

}  // namespace sinrsim
