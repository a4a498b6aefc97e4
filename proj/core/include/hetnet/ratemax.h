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

#ifndef HETNET_RATEMAX_H_
#define HETNET_RATEMAX_H_

#include <optional>
#include <stdexcept>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "hetnet/channel.h"
#include "hetnet/drop.h"
#include "hetnet/spectral.h"

namespace hetnet {

enum class ScenarioKind {
  kSingleLayer,
  kMacroMicro,
  kMacroRelay,
  kUncoordinatedSingle,
  kUncoordinatedMicro,
  kUncoordinatedRelay,
};

std::string_view ScenarioName(ScenarioKind kind);
std::optional<ScenarioKind> ParseScenario(std::string_view name);
bool IsUncoordinated(ScenarioKind kind);
bool UsesLowPower(ScenarioKind kind);
bool UsesRelays(ScenarioKind kind);

class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Macro -> relay links for the relays of the active users, in the same local
// indexing as the user GainSystem.
struct RelayLinks {
  Eigen::MatrixXd gain;  // relay j <- macro k
  Eigen::VectorXd sigma2;
};

RelayLinks RestrictRelayLinks(const Drop& drop, const std::vector<int>& active);

struct PowerCaps {
  double p_max = 0.0;  // watts
  double q_max = 0.0;  // watts
};

struct RateSearchOptions {
  double r_init = 0.1;  // bits/s/Hz
  double dr = 0.1;
  // Exponential + binary search over the same rate grid. Gives the linear
  // scan's answer whenever feasibility is monotone in the rate.
  bool bisection = false;
  // Re-evaluate the relay decode set at every candidate rate; otherwise it is
  // fixed once at r_init.
  bool relay_set_per_rate = true;
  // Stop two-layer searches once gamma >= 1 / rho(B~).
  bool spectral_guard = false;
  int max_steps = 1000;
};

struct RateResult {
  double common_rate = 0.0;  // bits/s/Hz
  PowerSolution powers;      // p and q in watts, q zero for single-layer
  std::vector<int> active_users;
  std::vector<int> active_relays;  // local indices of transmitting relays
  int iterations = 0;
  // Not even the first grid rate could be served.
  bool infeasible_at_start = false;

  double total_power() const;
};

// Number of users kept at `load`: ceil(load * n).
int KeepCount(double load, int n);

// Order in which users leave the system: repeatedly drop the user with the
// lowest SINR under the full-power vectors (p_full, q_full), recomputing after
// each removal. Ties go to the lower index. Returns all n indices.
std::vector<int> DiscardOrder(const GainSystem& gains, const Eigen::VectorXd& p_full,
                              const Eigen::VectorXd& q_full);

// Users kept at `load` (sorted). Throws std::invalid_argument for load <= 0.
std::vector<int> DiscardUsers(const GainSystem& gains, double load,
                              const Eigen::VectorXd& p_full,
                              const Eigen::VectorXd& q_full);

// Rate each relay can decode from its own macro sector while every other
// macro sector transmits at p_max and the relays are silent.
Eigen::VectorXd RelayDecodeRates(const RelayLinks& links, double p_max);

// Relays in `present` whose decode rate reaches `rate`.
std::vector<bool> RelayDecodeSet(const RelayLinks& links,
                                 const std::vector<bool>& present, double p_max,
                                 double rate);

// Largest grid rate r_init + k dr with gamma = 2^r - 1 < 1 / rho(F) whose
// minimum-power vector fits under p_max.
RateResult MaximizeSingle(const GainSystem& gains, double p_max,
                          const RateSearchOptions& options = {});

// Largest grid rate whose minimum-power LP (both layers, caps, relay mask) is
// optimal. `relays` is required for kMacroRelay.
RateResult MaximizeTwoLayer(const GainSystem& gains, const PowerCaps& caps,
                            ScenarioKind kind, const std::vector<bool>& present,
                            const RelayLinks* relays,
                            const RateSearchOptions& options = {});

// Every station at full power. For relays the decode set is iterated to a
// fixed point: start with all relays on and switch off those that cannot
// decode the resulting common rate until nothing changes.
RateResult UncoordinatedRate(const GainSystem& gains, const PowerCaps& caps,
                             ScenarioKind kind, const std::vector<bool>& present,
                             const RelayLinks* relays);

struct ScenarioParams {
  double p_max = 0.0;          // watts
  double q_max_micro = 0.0;    // watts
  double q_max_relay = 0.0;    // watts
  RateSearchOptions search;
};

// Runs one scenario on the users `active` of `drop`. `restricted` must be
// RestrictGainSystem(drop.gains, active).
RateResult RunScenario(const Drop& drop, const std::vector<int>& active,
                       const GainSystem& restricted, ScenarioKind kind,
                       const ScenarioParams& params);

}  // namespace hetnet

#endif  // HETNET_RATEMAX_H_
