// Command-line front end: topology generation, single trials, coloring
// verification, oracle fact suites, calibration sweeps and seed fan-outs.

#include <atomic>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <thread>

#include "CLI11.hpp"
#include "sinrsim/calibrate.hpp"
#include "sinrsim/config.hpp"
#include "sinrsim/facts.hpp"
#include "sinrsim/scaling.hpp"

namespace fs = std::filesystem;
using namespace sinrsim;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitCheckFailure = 1;
constexpr int kExitUsage = 2;

struct CommonFlags {
  std::string config_path;
  std::string protocol;
  std::string profile_kind;
  std::string family;
  std::string out_dir;
  int n = -1;
  double alpha = -1.0, beta = -1.0, noise = -1.0, epsilon = -1.0, gamma = -1.0;
  double spacing = -1.0, side = -1.0;
  double budget_mult = -1.0;
  std::uint64_t seed = 0;
  bool seed_set = false;
  int parallel = 1;
};

void add_common_flags(CLI::App* cmd, CommonFlags& flags) {
  cmd->add_option("--config", flags.config_path, "experiment config file");
  cmd->add_option("--protocol", flags.protocol,
                  "nos-broadcast|s-broadcast|wakeup-adhoc|wakeup-colored|"
                  "consensus|leader-election|coloring");
  cmd->add_option("--profile", flags.profile_kind, "theory|tuned|file");
  cmd->add_option("--family", flags.family,
                  "uniform-square|grid|line-uniform|line-geometric");
  cmd->add_option("--n", flags.n, "station count");
  cmd->add_option("--alpha", flags.alpha, "path loss");
  cmd->add_option("--beta", flags.beta, "SINR threshold");
  cmd->add_option("--noise", flags.noise, "ambient noise");
  cmd->add_option("--epsilon", flags.epsilon, "connectivity parameter");
  cmd->add_option("--gamma", flags.gamma, "metric growth dimension");
  cmd->add_option("--spacing", flags.spacing, "grid/line spacing");
  cmd->add_option("--side", flags.side, "uniform-square side length");
  cmd->add_option("--budget-mult", flags.budget_mult, "round budget multiplier");
  cmd->add_option("--out-dir", flags.out_dir, "output directory");
  cmd->add_option("--parallel", flags.parallel, "trial fan-out threads");
  cmd->add_option("--seed", flags.seed, "master seed")
      ->each([&flags](const std::string&) { flags.seed_set = true; });
}

ExperimentConfig make_config(const CommonFlags& flags) {
  ExperimentConfig config;
  if (!flags.config_path.empty()) config = load_config_file(flags.config_path);
  if (!flags.protocol.empty()) config.protocol = flags.protocol;
  if (!flags.profile_kind.empty()) config.profile_kind = flags.profile_kind;
  if (!flags.family.empty()) config.family = family_from_string(flags.family);
  if (flags.n > 0) config.n = flags.n;
  if (flags.alpha > 0) config.alpha = flags.alpha;
  if (flags.beta > 0) config.beta = flags.beta;
  if (flags.noise > 0) config.noise = flags.noise;
  if (flags.epsilon > 0) config.epsilon = flags.epsilon;
  if (flags.gamma > 0) config.gamma = flags.gamma;
  if (flags.spacing > 0) config.fparams.spacing = flags.spacing;
  if (flags.side > 0) config.fparams.side = flags.side;
  if (flags.budget_mult > 0) config.budget_mult = flags.budget_mult;
  if (!flags.out_dir.empty()) config.out_dir = flags.out_dir;
  if (flags.parallel > 1) config.parallel = flags.parallel;
  if (flags.seed_set) config.seeds = {flags.seed};
  return config;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw InvalidInputError("cannot open '" + path + "' for writing");
  out << text;
}

int cmd_gen(const CommonFlags& flags, const std::string& out_file) {
  auto config = make_config(flags);
  const auto topo = config_topology(config);
  std::string path = out_file;
  if (path.empty()) {
    fs::create_directories(config.out_dir);
    path = (fs::path(config.out_dir) /
            (to_string(config.family) + "-n" + std::to_string(topo.n()) + ".topo"))
               .string();
  }
  write_topology_file(topo, path);
  std::cout << "wrote " << path << " (n=" << topo.n() << ", D=" << topo.diameter
            << ", R_s=" << topo.granularity << ")\n";
  return kExitOk;
}

int cmd_run(const CommonFlags& flags) {
  auto config = make_config(flags);
  int exit_code = kExitOk;
  for (std::uint64_t seed : config.seeds) {
    Trace trace;
    const auto summary = run_trial(config, seed, &trace);
    std::cout << summary.to_text();
    if (!config.out_dir.empty() && config.out_dir != ".") {
      fs::create_directories(config.out_dir);
      const auto stem = config.protocol + "-seed" + std::to_string(seed);
      trace.write_csv((fs::path(config.out_dir) / (stem + ".trace.csv")).string());
      write_text((fs::path(config.out_dir) / (stem + ".summary.txt")).string(),
                 "# config echo\n" + config_to_text(config) + "\n# summary\n" +
                     summary.to_text());
      if (config.protocol == "coloring") {
        // Persist the coloring for `verify`.
        Trace unused;
        RoundEngine engine(config_topology(config), config.sinr_params(), seed);
        std::vector<int> everyone(engine.topology().n());
        for (int v = 0; v < engine.topology().n(); ++v) everyone[v] = v;
        auto result = run_stabilize_probability(
            engine, everyone, config_profile(config, engine.topology().n()),
            engine.topology().n());
        std::ostringstream colors;
        char buf[64];
        for (int v = 0; v < engine.topology().n(); ++v) {
          std::snprintf(buf, sizeof buf, "%.17g", result.colors[v]);
          colors << engine.topology().stations[v].id << ", " << buf << "\n";
        }
        write_text((fs::path(config.out_dir) / (stem + ".colors.csv")).string(),
                   colors.str());
      }
    }
    if (!summary.success) exit_code = kExitCheckFailure;
  }
  return exit_code;
}

int cmd_verify(const CommonFlags& flags, const std::string& topology_file,
               const std::string& coloring_file) {
  auto config = make_config(flags);
  config.topology_file = topology_file;
  const auto topo = config_topology(config);
  const auto profile = config_profile(config, topo.n());

  std::vector<double> colors(topo.n(), kNoColor);
  std::ifstream in(coloring_file);
  if (!in) throw InvalidInputError("cannot open coloring '" + coloring_file + "'");
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream rec(line);
    int id = 0;
    char comma = 0;
    double color = kNoColor;
    if (!(rec >> id >> comma >> color) || comma != ',') {
      throw InvalidInputError("coloring: expected 'station_id, color'");
    }
    colors[topo.index_of(id)] = color;
  }

  const auto lemma1 = verify_lemma1(colors, topo, profile.C1);
  const auto lemma2 = verify_lemma2(colors, topo, topo.epsilon, profile.p_max);
  std::cout << "lemma1 = " << (lemma1.pass ? "pass" : "fail")
            << " (worst sum " << lemma1.worst_sum << " color "
            << lemma1.worst_color << " center " << lemma1.worst_center << ")\n";
  std::cout << "lemma2 = " << (lemma2.pass ? "pass" : "fail")
            << " (worst best-mass " << lemma2.worst_best_mass << " at station "
            << lemma2.worst_station << ")\n";
  return lemma1.pass && lemma2.pass ? kExitOk : kExitCheckFailure;
}

int cmd_facts(const CommonFlags& flags) {
  const std::uint64_t seed = flags.seed_set ? flags.seed : 1;
  rng::Stream stream(rng::combine(seed, 0xFAC7));
  bool ok = true;

  // Exact-probability envelopes over random vectors.
  std::int64_t sum_viol = 0, none_viol = 0;
  const std::int64_t trials = 100000;
  for (std::int64_t t = 0; t < trials; ++t) {
    const int k = 1 + static_cast<int>(stream.next_below(8));
    std::vector<double> p(k);
    double total = 0.0;
    for (auto& pi : p) {
      pi = stream.next_range(0.0, 0.5 / k);
      total += pi;
    }
    if (total <= 0.5 && !check_fact_sum(p).pass) ++sum_viol;
    for (auto& pi : p) pi = stream.next_range(0.0, 0.5);
    if (!check_fact_notransmit(p).pass) ++none_viol;
  }
  std::cout << "exactly-one envelope: " << trials << " vectors, " << sum_viol
            << " violations\n";
  std::cout << "no-transmit bound:    " << trials << " vectors, " << none_viol
            << " violations\n";
  ok = ok && sum_viol == 0 && none_viol == 0;

  const auto reception = check_reception_facts(seed, 10000);
  std::cout << "near reception:   " << reception.near_checked << " instances, "
            << reception.near_failures << " counterexamples\n";
  std::cout << "margin reception: " << reception.margin_checked << " instances, "
            << reception.margin_failures << " counterexamples\n";
  std::cout << "proxy coverage:   " << reception.proxy_checked << " instances, "
            << reception.proxy_failures << " counterexamples\n";
  if (!reception.first_failure.empty()) {
    std::cout << "first failure: " << reception.first_failure << "\n";
  }
  ok = ok && reception.pass();
  std::cout << (ok ? "facts: all pass\n" : "facts: FAILURES\n");
  return ok ? kExitOk : kExitCheckFailure;
}

int cmd_calibrate(const CommonFlags& flags, const std::string& out_file) {
  auto config = make_config(flags);
  auto options = default_calibration_options();
  if (flags.seed_set) options.master_seed = flags.seed;
  const auto result =
      calibrate_profile(config.sinr_params(), config.gamma, options);
  std::cout << result.log;
  if (!result.feasible) {
    std::cout << "calibration failed; best near-miss lemma_rate="
              << result.lemma_rate << " broadcast_rate=" << result.broadcast_rate
              << "\n";
    return kExitCheckFailure;
  }
  std::cout << "feasible profile (objective " << result.objective << "):\n"
            << profile_to_config(result.profile);
  if (!out_file.empty()) write_text(out_file, profile_to_config(result.profile));
  return kExitOk;
}

int cmd_sweep(const CommonFlags& flags, int seed_count) {
  auto config = make_config(flags);
  std::vector<RunSummary> summaries(seed_count);
  std::atomic<int> next{0};
  const int workers = std::max(1, config.parallel);
  std::vector<std::thread> pool;
  std::mutex fail_mutex;
  std::string failure;
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&]() {
      for (int i = next.fetch_add(1); i < seed_count; i = next.fetch_add(1)) {
        try {
          summaries[i] = run_trial(config, config.seeds.front() + i, nullptr);
        } catch (const std::exception& e) {
          std::lock_guard<std::mutex> lock(fail_mutex);
          if (failure.empty()) failure = e.what();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (!failure.empty()) {
    std::cerr << "sweep aborted: " << failure << "\n";
    return kExitCheckFailure;
  }

  int successes = 0;
  std::vector<double> completions;
  for (const auto& s : summaries) {
    successes += s.success;
    if (s.completion_rounds >= 0) {
      completions.push_back(static_cast<double>(s.completion_rounds));
    }
  }
  std::cout << "protocol = " << config.protocol << "\n";
  std::cout << "trials = " << seed_count << "\n";
  std::cout << "successes = " << successes << "\n";
  if (!completions.empty()) {
    std::cout << "median_completion_rounds = " << median(completions) << "\n";
  }
  if (!config.out_dir.empty() && config.out_dir != ".") {
    fs::create_directories(config.out_dir);
    std::ostringstream csv;
    csv << "seed,success,completion_rounds,total_rounds\n";
    for (int i = 0; i < seed_count; ++i) {
      csv << (config.seeds.front() + i) << "," << summaries[i].success << ","
          << summaries[i].completion_rounds << "," << summaries[i].total_rounds
          << "\n";
    }
    write_text((fs::path(config.out_dir) / (config.protocol + "-sweep.csv")).string(),
               csv.str());
  }
  return successes == seed_count ? kExitOk : kExitCheckFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"SINR network simulator: coloring, broadcast, wake-up, consensus"};
  app.require_subcommand(1);

  CommonFlags flags;
  std::string gen_out, calibrate_out, verify_topology, verify_coloring;
  int sweep_seeds = 20;

  auto* gen = app.add_subcommand("gen", "generate a topology file");
  add_common_flags(gen, flags);
  gen->add_option("--out", gen_out, "output topology file");

  auto* run = app.add_subcommand("run", "run one trial per seed");
  add_common_flags(run, flags);

  auto* verify = app.add_subcommand("verify", "check a stored coloring");
  add_common_flags(verify, flags);
  verify->add_option("--topology", verify_topology, "topology file")->required();
  verify->add_option("--coloring", verify_coloring, "coloring csv")->required();

  auto* facts = app.add_subcommand("facts", "run the oracle fact suites");
  add_common_flags(facts, flags);

  auto* calibrate = app.add_subcommand("calibrate", "grid-search a tuned profile");
  add_common_flags(calibrate, flags);
  calibrate->add_option("--out", calibrate_out, "profile output file");

  auto* sweep = app.add_subcommand("sweep", "fan a protocol out over seeds");
  add_common_flags(sweep, flags);
  sweep->add_option("--seeds-count", sweep_seeds, "number of consecutive seeds");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (gen->parsed()) return cmd_gen(flags, gen_out);
    if (run->parsed()) return cmd_run(flags);
    if (verify->parsed()) return cmd_verify(flags, verify_topology, verify_coloring);
    if (facts->parsed()) return cmd_facts(flags);
    if (calibrate->parsed()) return cmd_calibrate(flags, calibrate_out);
    if (sweep->parsed()) return cmd_sweep(flags, sweep_seeds);
  } catch (const InvalidInputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitCheckFailure;
  }
  return kExitUsage;
}
