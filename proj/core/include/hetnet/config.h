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

#ifndef HETNET_CONFIG_H_
#define HETNET_CONFIG_H_

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "hetnet/channel.h"
#include "hetnet/drop.h"
#include "hetnet/ratemax.h"

namespace hetnet {

enum class ChannelPreset { kCost231Pair, kSharedRaman };

// Which full-power SINRs drive the outage (user discarding) procedure.
enum class DiscardBasis {
  kSharedMacro,  // macro layer at p_max; one active set for every scenario
  kPerScenario,  // each scenario's own stations at full power
};

class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string field, const std::string& message)
      : std::runtime_error(field + ": " + message), field_(std::move(field)) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

struct ExperimentConfig {
  std::uint64_t seed = 1;
  int drops = 100;
  std::vector<double> loads = {0.80, 0.85, 0.90, 0.95, 1.00};
  std::vector<ScenarioKind> scenarios = {
      ScenarioKind::kSingleLayer,          ScenarioKind::kMacroMicro,
      ScenarioKind::kMacroRelay,           ScenarioKind::kUncoordinatedSingle,
      ScenarioKind::kUncoordinatedMicro,   ScenarioKind::kUncoordinatedRelay};
  ChannelPreset channel_preset = ChannelPreset::kCost231Pair;
  double p_max_dbm = 43.0;
  double q_max_micro_dbm = 33.0;
  double q_max_relay_dbm = 30.0;
  double r_init = 0.1;
  double dr = 0.1;
  double noise_power_dbm = -114.0;  // calibrated, see README
  // Negative means "use the preset's value".
  double shadow_sigma_macro_db = -1.0;
  double shadow_sigma_lowpower_db = -1.0;
  double cell_radius_m = 1000.0;
  int rings = 2;
  double sector0_azimuth_deg = 90.0;
  int lowpower_per_cell = 3;
  int placement_retries = 1000;
  int workers = 1;  // 0 = one per hardware thread
  bool bisection = false;
  bool relay_set_per_rate = true;
  bool spectral_guard = false;
  DiscardBasis discard_basis = DiscardBasis::kSharedMacro;
  double max_failure_fraction = 0.05;

  // Throws ConfigError naming the first invalid field.
  void Validate() const;

  ChannelModel Channel() const;
  DropOptions Drop() const;
  ScenarioParams Params() const;
};

std::string_view ChannelPresetName(ChannelPreset preset);
std::string_view DiscardBasisName(DiscardBasis basis);

// Flat-key TOML. Unknown keys are rejected. Throws ConfigError.
ExperimentConfig ParseConfig(std::string_view toml_text);
ExperimentConfig LoadConfig(const std::filesystem::path& path);

}  // namespace hetnet

#endif  // HETNET_CONFIG_H_
