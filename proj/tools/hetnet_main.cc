// Copyright 2026 The hetnet Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// hetnet command-line driver.
//
// Exit codes: 0 success, 1 usage or configuration error, 2 experiment or
// self-check failure.

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "hetnet/config.h"
#include "hetnet/drop.h"
#include "hetnet/geometry.h"
#include "hetnet/harness.h"
#include "hetnet/lp.h"
#include "hetnet/mps.h"
#include "hetnet/oracle.h"
#include "hetnet/ratemax.h"

namespace {

constexpr int kUsageError = 1;
constexpr int kFailure = 2;

hetnet::ExperimentConfig LoadOrDefault(const std::string& path) {
  if (path.empty()) {
    hetnet::ExperimentConfig config;
    config.Validate();
    return config;
  }
  return hetnet::LoadConfig(path);
}

hetnet::Drop MakeDrop(const hetnet::ExperimentConfig& config, int drop_id) {
  const hetnet::Layout layout = hetnet::BuildLayout(
      config.cell_radius_m, config.rings, config.sector0_azimuth_deg);
  std::mt19937_64 rng =
      hetnet::DropRng(config.seed, static_cast<std::uint64_t>(drop_id));
  return hetnet::GenerateDrop(layout, config.Channel(), config.Drop(), rng);
}

int Run(const std::string& config_path, std::optional<std::uint64_t> seed,
        std::optional<int> drops, std::optional<int> workers,
        const std::string& out_dir) {
  hetnet::ExperimentConfig config = LoadOrDefault(config_path);
  if (seed) config.seed = *seed;
  if (drops) config.drops = *drops;
  if (workers) config.workers = *workers;
  config.Validate();

  hetnet::ExperimentResult result;
  try {
    result = hetnet::RunExperiment(config);
  } catch (const hetnet::ExperimentError& e) {
    std::cerr << "experiment failed: " << e.what() << '\n';
    return kFailure;
  }
  hetnet::WriteExperiment(out_dir, result);
  std::cout << result.rows.size() << " rows, " << result.failures.size()
            << " failed drops -> " << out_dir << '\n';
  for (const auto& s : result.summary) {
    std::cout << "  " << hetnet::ScenarioName(s.scenario) << " load " << s.load
              << ": mean rate " << s.mean_rate << " (se " << s.stderr_rate
              << ")\n";
  }
  return 0;
}

int DumpLayout(const std::string& config_path, int drop_id, bool with_users,
               const std::string& out) {
  const hetnet::ExperimentConfig config = LoadOrDefault(config_path);
  const hetnet::Layout layout = hetnet::BuildLayout(
      config.cell_radius_m, config.rings, config.sector0_azimuth_deg);
  std::string json;
  if (with_users) {
    const hetnet::Drop drop = MakeDrop(config, drop_id);
    json = hetnet::LayoutToJson(layout, drop.macros, drop.lowpower, drop.users);
  } else {
    json = hetnet::LayoutToJson(layout, hetnet::MacroSites(layout),
                                hetnet::PlaceLowPower(layout, config.lowpower_per_cell));
  }
  if (out.empty() || out == "-") {
    std::cout << json << '\n';
  } else {
    std::ofstream(out) << json << '\n';
  }
  return 0;
}

int Oracle(std::uint64_t seed) {
  bool all = true;
  for (const auto& check : hetnet::RunOracleSuites(seed)) {
    std::cout << (check.passed ? "PASS " : "FAIL ") << check.name << " ("
              << check.detail << ")\n";
    all = all && check.passed;
  }
  return all ? 0 : kFailure;
}

int DumpGains(const std::string& config_path, int drop_id, const std::string& out) {
  const hetnet::ExperimentConfig config = LoadOrDefault(config_path);
  const hetnet::Drop drop = MakeDrop(config, drop_id);
  hetnet::WriteGainSystemCsv(out, drop.gains, config.Channel().Id());
  std::cout << "wrote " << drop.num_users() << "-user gain system to " << out
            << '\n';
  return 0;
}

int ExportLp(const std::string& config_path, int drop_id, double load,
             const std::string& scenario, double rate, bool free_format,
             const std::string& out) {
  const hetnet::ExperimentConfig config = LoadOrDefault(config_path);
  const auto kind = hetnet::ParseScenario(scenario);
  if (!kind || hetnet::IsUncoordinated(*kind)) {
    std::cerr << "--scenario: expected single, macro_micro or macro_relay\n";
    return kUsageError;
  }
  if (!(load > 0.0 && load <= 1.0)) {
    std::cerr << "--load: must lie in (0, 1]\n";
    return kUsageError;
  }
  const hetnet::Drop drop = MakeDrop(config, drop_id);
  const hetnet::ScenarioParams params = config.Params();
  const std::vector<int> active = hetnet::ActiveUsers(drop, config, *kind, load);
  const hetnet::GainSystem gains = hetnet::RestrictGainSystem(drop.gains, active);

  hetnet::MinPowerProblem problem;
  problem.gains = &gains;
  problem.gamma = std::exp2(rate) - 1.0;
  problem.p_max = params.p_max;
  problem.lowpower_active.assign(active.size(), false);
  if (hetnet::UsesLowPower(*kind)) {
    std::vector<bool> present(active.size());
    for (std::size_t a = 0; a < active.size(); ++a) {
      present[a] = drop.lowpower_present[active[a]];
    }
    if (hetnet::UsesRelays(*kind)) {
      const hetnet::RelayLinks links = hetnet::RestrictRelayLinks(drop, active);
      problem.lowpower_active =
          hetnet::RelayDecodeSet(links, present, params.p_max, rate);
      problem.q_max = params.q_max_relay;
    } else {
      problem.lowpower_active = present;
      problem.q_max = params.q_max_micro;
    }
  }
  hetnet::LinearProgram lp = hetnet::AssembleLp(problem);
  lp.name = "HETNET";
  const auto format = free_format ? hetnet::MpsFormat::kFree : hetnet::MpsFormat::kFixed;
  if (out.empty() || out == "-") {
    hetnet::WriteMps(lp, std::cout, format);
  } else {
    std::ofstream file(out);
    hetnet::WriteMps(lp, file, format);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Common-rate maximization for single- and two-layer cellular downlinks"};
  app.require_subcommand(1);

  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<int> drops;
  std::optional<int> workers;
  std::string out_dir = "results";
  auto* run = app.add_subcommand("run", "Run a Monte Carlo experiment");
  run->add_option("config", config_path, "TOML configuration file")
      ->check(CLI::ExistingFile);
  run->add_option("--seed", seed, "Override the seed");
  run->add_option("--drops", drops, "Override the number of drops");
  run->add_option("--workers", workers, "Worker threads (0 = all cores)");
  run->add_option("--out", out_dir, "Output directory")->capture_default_str();

  auto* validate = app.add_subcommand("validate-config", "Check a configuration file");
  validate->add_option("config", config_path, "TOML configuration file")
      ->required();

  int drop_id = 0;
  bool with_users = false;
  std::string out;
  auto* layout = app.add_subcommand("dump-layout", "Write the layout as JSON");
  layout->add_option("config", config_path, "TOML configuration file")
      ->check(CLI::ExistingFile);
  layout->add_flag("--users", with_users, "Include the users of one drop");
  layout->add_option("--drop", drop_id, "Drop index for --users");
  layout->add_option("--out", out, "Output file (default stdout)");

  std::uint64_t oracle_seed = 20240101;
  auto* oracle = app.add_subcommand("oracle", "Run the randomized self-checks");
  oracle->add_option("--seed", oracle_seed)->capture_default_str();

  std::string gains_out = "gains";
  auto* gains = app.add_subcommand("dump-gains", "Write one drop's gains as CSV");
  gains->add_option("config", config_path)->check(CLI::ExistingFile);
  gains->add_option("--drop", drop_id);
  gains->add_option("--out", gains_out, "Output directory")->capture_default_str();

  double load = 0.9;
  double rate = 1.0;
  std::string scenario = "macro_micro";
  bool free_format = false;
  auto* lp = app.add_subcommand("export-lp", "Write one min-power LP as MPS");
  lp->add_option("config", config_path)->check(CLI::ExistingFile);
  lp->add_option("--drop", drop_id);
  lp->add_option("--load", load)->capture_default_str();
  lp->add_option("--scenario", scenario)->capture_default_str();
  lp->add_option("--rate", rate, "Common rate in bits/s/Hz")->capture_default_str();
  lp->add_flag("--free", free_format, "Free-format MPS");
  lp->add_option("--out", out, "Output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kUsageError;
  }

  try {
    if (*run) return Run(config_path, seed, drops, workers, out_dir);
    if (*validate) {
      const hetnet::ExperimentConfig config = hetnet::LoadConfig(config_path);
      std::cout << config_path << ": ok (" << config.drops << " drops, "
                << config.loads.size() << " loads, " << config.scenarios.size()
                << " scenarios, " << hetnet::ChannelPresetName(config.channel_preset)
                << ")\n";
      return 0;
    }
    if (*layout) return DumpLayout(config_path, drop_id, with_users, out);
    if (*oracle) return Oracle(oracle_seed);
    if (*gains) return DumpGains(config_path, drop_id, gains_out);
    if (*lp) {
      return ExportLp(config_path, drop_id, load, scenario, rate, free_format, out);
    }
  } catch (const hetnet::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kUsageError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kFailure;
  }
  return kUsageError;
}
