#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sinrsim/constants.hpp"
#include "sinrsim/protocols.hpp"

namespace sinrsim {

/// Fully self-describing experiment: a config plus the code version
/// reproduces a run bit-exactly.
struct ExperimentConfig {
  // [topology]
  std::string topology_file;  // when nonempty, wins over the family fields
  TopologyFamily family = TopologyFamily::uniform_square;
  int n = 50;
  FamilyParams fparams;
  std::uint64_t topology_seed = 1;

  // [sinr]  (power follows the r=1 normalization P = noise*beta)
  double alpha = 3.0;
  double beta = 1.0;
  double noise = 1.0;
  double epsilon = 0.5;
  double gamma = 2.0;

  // [protocol]
  std::string protocol = "s-broadcast";
  std::string profile_kind = "tuned";  // theory | tuned | file
  int source_id = 0;
  std::int64_t consensus_x = 7;
  std::int64_t round_budget = 0;  // 0 = default budget
  double budget_mult = 4.0;
  std::string wake_schedule_file;  // empty = all stations wake at round 0

  // [run]
  std::vector<std::uint64_t> seeds = {1};
  std::string out_dir = ".";
  int parallel = 1;

  // [constants], present when profile_kind == "file"
  std::optional<ConstantProfile> profile;

  bool operator==(const ExperimentConfig&) const = default;

  SinrParams sinr_params() const {
    return SinrParams::normalized(alpha, beta, noise, epsilon);
  }
};

std::string config_to_text(const ExperimentConfig& config);
ExperimentConfig config_from_text(const std::string& text);
ExperimentConfig load_config_file(const std::string& path);
void save_config_file(const ExperimentConfig& config, const std::string& path);

/// Builds the topology named by the config (file or generator family).
NetworkTopology config_topology(const ExperimentConfig& config);

/// Resolves the constant profile for the given n: derive (theory), the
/// shipped tuned profile, or the embedded [constants] section.
ConstantProfile config_profile(const ExperimentConfig& config, int n);

/// Copy of a profile with p_start recomputed for a new station count.
ConstantProfile profile_for_n(ConstantProfile profile, int n);

/// One deterministic trial: builds everything from the config, runs the
/// selected protocol, checks the trace replay invariant, and returns the
/// summary (trace via out-param when wanted). The summary's checks record
/// every asserted invariant.
RunSummary run_trial(const ExperimentConfig& config, std::uint64_t seed,
                     Trace* trace = nullptr);

}  // namespace sinrsim
