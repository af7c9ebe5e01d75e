#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "sinrsim/config.hpp"

namespace sinrsim {

struct CalibrationInstance {
  TopologyFamily family = TopologyFamily::uniform_square;
  int n = 100;
  FamilyParams params;
};

struct CalibrationOptions {
  std::vector<CalibrationInstance> instances;
  int seeds = 5;
  std::uint64_t master_seed = 1;
  double lemma_target = 0.95;
  double broadcast_target = 0.95;
  /// Candidate override sets applied on top of the theory chain.
  std::vector<std::map<std::string, double>> grid;
};

/// The shipped grid: uniform-square instances at n in {50,100,200} and a
/// neighborhood of the committed default profile.
CalibrationOptions default_calibration_options();

struct CalibrationResult {
  bool feasible = false;
  ConstantProfile profile;  // best feasible point, or best near-miss
  double lemma_rate = 0.0;
  double broadcast_rate = 0.0;
  double objective = 0.0;  // total schedule rounds at the largest n
  std::string log;
};

/// Grid search: minimizes the coloring schedule length subject to the lemma
/// verifier and broadcast pass-rate targets over the instance/seed matrix.
/// Deterministic for a fixed master seed.
CalibrationResult calibrate_profile(const SinrParams& params, double gamma,
                                    const CalibrationOptions& options);

}  // namespace sinrsim
