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

#include "hetnet/config.h"

#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#define TOML_ENABLE_FORMATTERS 0
#include "toml.hpp"

namespace hetnet {
namespace {

double AsDouble(const toml::node& node, const std::string& key) {
  if (auto v = node.value<double>(); v && node.is_number()) return *v;
  throw ConfigError(key, "expected a number");
}

std::int64_t AsInteger(const toml::node& node, const std::string& key) {
  if (node.is_integer()) return *node.value<std::int64_t>();
  throw ConfigError(key, "expected an integer");
}

bool AsBool(const toml::node& node, const std::string& key) {
  if (node.is_boolean()) return *node.value<bool>();
  throw ConfigError(key, "expected true or false");
}

std::string AsString(const toml::node& node, const std::string& key) {
  if (node.is_string()) return *node.value<std::string>();
  throw ConfigError(key, "expected a string");
}

const toml::array& AsArray(const toml::node& node, const std::string& key) {
  if (const toml::array* arr = node.as_array()) return *arr;
  throw ConfigError(key, "expected an array");
}

int AsInt(const toml::node& node, const std::string& key) {
  const std::int64_t v = AsInteger(node, key);
  if (v < std::numeric_limits<int>::min() || v > std::numeric_limits<int>::max()) {
    throw ConfigError(key, "integer out of range");
  }
  return static_cast<int>(v);
}

}  // namespace

std::string_view ChannelPresetName(ChannelPreset preset) {
  return preset == ChannelPreset::kCost231Pair ? "cost231" : "raman";
}

std::string_view DiscardBasisName(DiscardBasis basis) {
  return basis == DiscardBasis::kSharedMacro ? "shared" : "scenario";
}

void ExperimentConfig::Validate() const {
  if (drops < 1) throw ConfigError("drops", "must be >= 1");
  if (loads.empty()) throw ConfigError("loads", "must not be empty");
  for (double load : loads) {
    if (!(load > 0.0 && load <= 1.0)) {
      throw ConfigError("loads", "every load must lie in (0, 1]");
    }
  }
  if (scenarios.empty()) throw ConfigError("scenarios", "must not be empty");
  if (!std::isfinite(p_max_dbm)) throw ConfigError("p_max_dbm", "must be finite");
  if (!std::isfinite(q_max_micro_dbm)) {
    throw ConfigError("q_max_micro_dbm", "must be finite");
  }
  if (!std::isfinite(q_max_relay_dbm)) {
    throw ConfigError("q_max_relay_dbm", "must be finite");
  }
  if (!(r_init > 0.0)) throw ConfigError("r_init", "must be > 0");
  if (!(dr > 0.0)) throw ConfigError("dr", "must be > 0");
  if (!std::isfinite(noise_power_dbm)) {
    throw ConfigError("noise_power_dbm", "must be finite");
  }
  if (!(cell_radius_m > 0.0)) throw ConfigError("cell_radius_m", "must be > 0");
  if (rings < 0) throw ConfigError("rings", "must be >= 0");
  if (lowpower_per_cell != 1 && lowpower_per_cell != 3) {
    throw ConfigError("lowpower_per_cell", "must be 1 or 3");
  }
  if (placement_retries < 1) {
    throw ConfigError("placement_retries", "must be >= 1");
  }
  if (workers < 0) throw ConfigError("workers", "must be >= 0");
  if (!(max_failure_fraction >= 0.0 && max_failure_fraction <= 1.0)) {
    throw ConfigError("max_failure_fraction", "must lie in [0, 1]");
  }
}

ChannelModel ExperimentConfig::Channel() const {
  ChannelModel model = channel_preset == ChannelPreset::kCost231Pair
                           ? ChannelModel::Cost231Pair()
                           : ChannelModel::SharedRaman();
  model.noise_power_dbm = noise_power_dbm;
  if (shadow_sigma_macro_db >= 0.0) model.shadow_sigma_macro_db = shadow_sigma_macro_db;
  if (shadow_sigma_lowpower_db >= 0.0) {
    model.shadow_sigma_lowpower_db = shadow_sigma_lowpower_db;
  }
  return model;
}

DropOptions ExperimentConfig::Drop() const {
  return {lowpower_per_cell, placement_retries};
}

ScenarioParams ExperimentConfig::Params() const {
  ScenarioParams params;
  params.p_max = DbmToWatts(p_max_dbm);
  params.q_max_micro = DbmToWatts(q_max_micro_dbm);
  params.q_max_relay = DbmToWatts(q_max_relay_dbm);
  params.search.r_init = r_init;
  params.search.dr = dr;
  params.search.bisection = bisection;
  params.search.relay_set_per_rate = relay_set_per_rate;
  params.search.spectral_guard = spectral_guard;
  return params;
}

ExperimentConfig ParseConfig(std::string_view toml_text) {
  toml::table table;
  try {
    table = toml::parse(toml_text);
  } catch (const toml::parse_error& err) {
    std::ostringstream os;
    os << err.description() << " at line " << err.source().begin.line;
    throw ConfigError("<file>", os.str());
  }

  ExperimentConfig config;
  using Setter = std::function<void(const toml::node&, const std::string&)>;
  auto number = [](double& field) -> Setter {
    return [&field](const toml::node& n, const std::string& k) { field = AsDouble(n, k); };
  };
  auto integer = [](int& field) -> Setter {
    return [&field](const toml::node& n, const std::string& k) { field = AsInt(n, k); };
  };
  auto boolean = [](bool& field) -> Setter {
    return [&field](const toml::node& n, const std::string& k) { field = AsBool(n, k); };
  };

  const std::map<std::string, Setter> setters = {
      {"seed",
       [&](const toml::node& n, const std::string& k) {
         const std::int64_t v = AsInteger(n, k);
         if (v < 0) throw ConfigError(k, "must be >= 0");
         config.seed = static_cast<std::uint64_t>(v);
       }},
      {"drops", integer(config.drops)},
      {"loads",
       [&](const toml::node& n, const std::string& k) {
         config.loads.clear();
         for (const toml::node& item : AsArray(n, k)) {
           config.loads.push_back(AsDouble(item, k));
         }
       }},
      {"scenarios",
       [&](const toml::node& n, const std::string& k) {
         config.scenarios.clear();
         for (const toml::node& item : AsArray(n, k)) {
           const std::string name = AsString(item, k);
           const auto kind = ParseScenario(name);
           if (!kind) throw ConfigError(k, "unknown scenario '" + name + "'");
           config.scenarios.push_back(*kind);
         }
       }},
      {"channel_preset",
       [&](const toml::node& n, const std::string& k) {
         const std::string name = AsString(n, k);
         if (name == "cost231") {
           config.channel_preset = ChannelPreset::kCost231Pair;
         } else if (name == "raman") {
           config.channel_preset = ChannelPreset::kSharedRaman;
         } else {
           throw ConfigError(k, "expected \"cost231\" or \"raman\"");
         }
       }},
      {"p_max_dbm", number(config.p_max_dbm)},
      {"q_max_micro_dbm", number(config.q_max_micro_dbm)},
      {"q_max_relay_dbm", number(config.q_max_relay_dbm)},
      {"r_init", number(config.r_init)},
      {"dr", number(config.dr)},
      {"noise_power_dbm", number(config.noise_power_dbm)},
      {"shadow_sigma_macro_db", number(config.shadow_sigma_macro_db)},
      {"shadow_sigma_lowpower_db", number(config.shadow_sigma_lowpower_db)},
      {"cell_radius_m", number(config.cell_radius_m)},
      {"rings", integer(config.rings)},
      {"sector0_azimuth_deg", number(config.sector0_azimuth_deg)},
      {"lowpower_per_cell", integer(config.lowpower_per_cell)},
      {"placement_retries", integer(config.placement_retries)},
      {"workers", integer(config.workers)},
      {"relay_set_per_rate", boolean(config.relay_set_per_rate)},
      {"spectral_guard", boolean(config.spectral_guard)},
      {"max_failure_fraction", number(config.max_failure_fraction)},
      {"rate_search",
       [&](const toml::node& n, const std::string& k) {
         const std::string v = AsString(n, k);
         if (v != "linear" && v != "bisection") {
           throw ConfigError(k, "expected \"linear\" or \"bisection\"");
         }
         config.bisection = v == "bisection";
       }},
      {"discard_basis",
       [&](const toml::node& n, const std::string& k) {
         const std::string v = AsString(n, k);
         if (v == "shared") {
           config.discard_basis = DiscardBasis::kSharedMacro;
         } else if (v == "scenario") {
           config.discard_basis = DiscardBasis::kPerScenario;
         } else {
           throw ConfigError(k, "expected \"shared\" or \"scenario\"");
         }
       }},
  };

  for (const auto& [key, node] : table) {
    const std::string name(key.str());
    auto it = setters.find(name);
    if (it == setters.end()) throw ConfigError(name, "unknown key");
    it->second(node, name);
  }
  config.Validate();
  return config;
}

ExperimentConfig LoadConfig(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("<file>", "cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return ParseConfig(buffer.str());
}

}  // namespace hetnet
