#include "sinrsim/config.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "sinrsim/rng.hpp"

namespace sinrsim {

namespace {

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t");
  const auto e = s.find_last_not_of(" \t\r");
  return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
}

using Sections = std::map<std::string, std::map<std::string, std::string>>;

Sections parse_sections(const std::string& text) {
  Sections sections;
  std::istringstream in(text);
  std::string line, current;
  while (std::getline(in, line)) {
    line = trim(line);
    if (line.empty() || line[0] == '#' || line[0] == ';') continue;
    if (line.front() == '[' && line.back() == ']') {
      current = line.substr(1, line.size() - 2);
      sections[current];
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos || current.empty()) {
      throw InvalidInputError("config: cannot parse line '" + line + "'");
    }
    sections[current][trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  return sections;
}

}  // namespace

std::string config_to_text(const ExperimentConfig& c) {
  std::ostringstream out;
  out << "[topology]\n";
  if (!c.topology_file.empty()) out << "file = " << c.topology_file << "\n";
  out << "family = " << to_string(c.family) << "\n";
  out << "n = " << c.n << "\n";
  out << "side = " << fmt(c.fparams.side) << "\n";
  out << "spacing = " << fmt(c.fparams.spacing) << "\n";
  out << "seed = " << c.topology_seed << "\n";
  out << "\n[sinr]\n";
  out << "alpha = " << fmt(c.alpha) << "\n";
  out << "beta = " << fmt(c.beta) << "\n";
  out << "noise = " << fmt(c.noise) << "\n";
  out << "epsilon = " << fmt(c.epsilon) << "\n";
  out << "gamma = " << fmt(c.gamma) << "\n";
  out << "\n[protocol]\n";
  out << "name = " << c.protocol << "\n";
  out << "profile = " << c.profile_kind << "\n";
  out << "source = " << c.source_id << "\n";
  out << "x = " << c.consensus_x << "\n";
  out << "budget = " << c.round_budget << "\n";
  out << "budget_mult = " << fmt(c.budget_mult) << "\n";
  if (!c.wake_schedule_file.empty()) {
    out << "wake_schedule = " << c.wake_schedule_file << "\n";
  }
  out << "\n[run]\n";
  out << "seeds =";
  for (auto s : c.seeds) out << " " << s;
  out << "\n";
  out << "out_dir = " << c.out_dir << "\n";
  out << "parallel = " << c.parallel << "\n";
  if (c.profile.has_value()) {
    out << "\n" << profile_to_config(*c.profile);
  }
  return out.str();
}

ExperimentConfig config_from_text(const std::string& text) {
  ExperimentConfig c;
  const auto sections = parse_sections(text);
  auto get = [&](const char* section, const char* key) -> const std::string* {
    auto s = sections.find(section);
    if (s == sections.end()) return nullptr;
    auto k = s->second.find(key);
    return k == s->second.end() ? nullptr : &k->second;
  };

  if (auto* v = get("topology", "file")) c.topology_file = *v;
  if (auto* v = get("topology", "family")) c.family = family_from_string(*v);
  if (auto* v = get("topology", "n")) c.n = std::stoi(*v);
  if (auto* v = get("topology", "side")) c.fparams.side = std::stod(*v);
  if (auto* v = get("topology", "spacing")) c.fparams.spacing = std::stod(*v);
  if (auto* v = get("topology", "seed")) c.topology_seed = std::stoull(*v);

  if (auto* v = get("sinr", "alpha")) c.alpha = std::stod(*v);
  if (auto* v = get("sinr", "beta")) c.beta = std::stod(*v);
  if (auto* v = get("sinr", "noise")) c.noise = std::stod(*v);
  if (auto* v = get("sinr", "epsilon")) c.epsilon = std::stod(*v);
  if (auto* v = get("sinr", "gamma")) c.gamma = std::stod(*v);

  if (auto* v = get("protocol", "name")) c.protocol = *v;
  if (auto* v = get("protocol", "profile")) c.profile_kind = *v;
  if (auto* v = get("protocol", "source")) c.source_id = std::stoi(*v);
  if (auto* v = get("protocol", "x")) c.consensus_x = std::stoll(*v);
  if (auto* v = get("protocol", "budget")) c.round_budget = std::stoll(*v);
  if (auto* v = get("protocol", "budget_mult")) c.budget_mult = std::stod(*v);
  if (auto* v = get("protocol", "wake_schedule")) c.wake_schedule_file = *v;

  if (auto* v = get("run", "seeds")) {
    c.seeds.clear();
    std::istringstream in(*v);
    std::uint64_t s = 0;
    while (in >> s) c.seeds.push_back(s);
  }
  if (auto* v = get("run", "out_dir")) c.out_dir = *v;
  if (auto* v = get("run", "parallel")) c.parallel = std::stoi(*v);

  if (sections.count("constants")) {
    std::ostringstream section;
    section << "[constants]\n";
    for (const auto& [k, v] : sections.at("constants")) {
      section << k << " = " << v << "\n";
    }
    c.profile = profile_from_config(section.str());
  }
  return c;
}

ExperimentConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInputError("cannot open config '" + path + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return config_from_text(text.str());
}

void save_config_file(const ExperimentConfig& config, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw InvalidInputError("cannot open '" + path + "' for writing");
  out << config_to_text(config);
}

NetworkTopology config_topology(const ExperimentConfig& config) {
  if (!config.topology_file.empty()) {
    return read_topology_file(config.topology_file);
  }
  return generate_topology(config.family, config.n, config.fparams,
                           config.epsilon, config.topology_seed);
}

ConstantProfile profile_for_n(ConstantProfile profile, int n) {
  profile.p_start = profile.C1 / (2.0 * n);
  return profile;
}

ConstantProfile config_profile(const ExperimentConfig& config, int n) {
  if (config.profile_kind == "theory") {
    return derive_constants(config.sinr_params(), config.gamma, std::max(2, n));
  }
  if (config.profile_kind == "tuned") {
    return tuned_default(config.sinr_params(), config.gamma, std::max(2, n));
  }
  if (config.profile_kind == "file") {
    if (!config.profile.has_value()) {
      throw InvalidInputError("profile=file requires a [constants] section");
    }
    return *config.profile;
  }
  throw InvalidInputError("unknown profile kind '" + config.profile_kind + "'");
}

RunSummary run_trial(const ExperimentConfig& config, std::uint64_t seed,
                     Trace* trace) {
  const auto topo = config_topology(config);
  const auto params = config.sinr_params();
  const auto profile = config_profile(config, topo.n());

  WakeSchedule schedule;
  if (!config.wake_schedule_file.empty()) {
    schedule = read_wake_schedule(topo, config.wake_schedule_file);
  } else {
    schedule.wake_round.assign(topo.n(), 0);
  }

  RunSummary summary;
  if (config.protocol == "nos-broadcast") {
    summary = run_nos_broadcast(topo, params, profile, config.source_id, seed,
                                config.round_budget, trace);
  } else if (config.protocol == "s-broadcast") {
    summary = run_s_broadcast(topo, params, profile, config.source_id, seed,
                              config.round_budget, trace);
  } else if (config.protocol == "wakeup-adhoc") {
    summary = run_wakeup_adhoc(topo, params, profile, schedule, seed, trace);
  } else if (config.protocol == "wakeup-colored") {
    // Base coloring established by a fresh stabilization run, then the
    // wake-up proper on top of it.
    Trace base_trace;
    RoundEngine engine(topo, params, rng::combine(seed, 0xBA5E), nullptr);
    std::vector<int> everyone(topo.n());
    for (int v = 0; v < topo.n(); ++v) everyone[v] = v;
    auto base = run_stabilize_probability(engine, everyone, profile, topo.n());
    summary = run_wakeup_colored(topo, params, profile, base.colors, schedule,
                                 seed, trace);
  } else if (config.protocol == "consensus") {
    rng::Stream values_rng(rng::combine(seed, 0xC0));
    std::vector<std::int64_t> values(topo.n());
    for (auto& v : values) {
      v = static_cast<std::int64_t>(values_rng.next_below(
          static_cast<std::uint64_t>(config.consensus_x + 1)));
    }
    summary = run_consensus(topo, params, profile, values, config.consensus_x,
                            schedule, seed, trace);
  } else if (config.protocol == "leader-election") {
    summary = run_leader_election(topo, params, profile, seed, trace);
  } else if (config.protocol == "coloring") {
    RoundEngine engine(topo, params, seed, trace);
    std::vector<int> everyone(topo.n());
    for (int v = 0; v < topo.n(); ++v) everyone[v] = v;
    auto result = run_stabilize_probability(engine, everyone, profile, topo.n());
    summary.protocol = "coloring";
    summary.seed = seed;
    summary.profile_mode = profile.mode;
    summary.total_rounds = engine.round();
    summary.completion_rounds = engine.round();
    const auto lemma1 = verify_lemma1(result.colors, topo, profile.C1);
    const auto lemma2 = verify_lemma2(result.colors, topo, topo.epsilon,
                                      profile.p_max);
    summary.check("lemma1", lemma1.pass);
    summary.check("lemma2", lemma2.pass);
    summary.success = lemma1.pass && lemma2.pass;
    if (trace) summary.trace_hash = trace->hash();
  } else {
    throw InvalidInputError("unknown protocol '" + config.protocol + "'");
  }

  if (trace) {
    bool replay_ok = true;
    try {
      verify_trace_replay(*trace, topo, params);
    } catch (const InvariantViolationError&) {
      replay_ok = false;
    }
    summary.check("trace-replay", replay_ok);
    if (!replay_ok) summary.success = false;
  }
  return summary;
}

}  // namespace sinrsim
