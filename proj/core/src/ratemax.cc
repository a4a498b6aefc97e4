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

#include "hetnet/ratemax.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>

#include "hetnet/lp.h"

namespace hetnet {
namespace {

double GridRate(const RateSearchOptions& options, int step) {
  return options.r_init + step * options.dr;
}

double RateToSinr(double rate) { return std::exp2(rate) - 1.0; }

// Largest k in [0, max_steps) with feasible(k), or -1. `feasible` must be
// monotone (true then false) for the bisection path to match the scan.
int LargestFeasibleStep(const std::function<bool(int)>& feasible,
                        const RateSearchOptions& options) {
  if (!options.bisection) {
    int k = 0;
    while (k < options.max_steps && feasible(k)) ++k;
    return k - 1;
  }
  if (!feasible(0)) return -1;
  int lo = 0;
  int hi = 1;
  while (hi < options.max_steps && feasible(hi)) {
    lo = hi;
    hi = std::min(2 * hi, options.max_steps);
  }
  while (hi - lo > 1) {
    const int mid = lo + (hi - lo) / 2;
    if (feasible(mid)) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return lo;
}

void CheckSearchOptions(const RateSearchOptions& options) {
  if (!(options.r_init > 0.0)) throw std::invalid_argument("r_init must be > 0");
  if (!(options.dr > 0.0)) throw std::invalid_argument("dr must be > 0");
  if (options.max_steps < 1) throw std::invalid_argument("max_steps must be >= 1");
}

RateResult ZeroRate(int n) {
  RateResult result;
  result.infeasible_at_start = true;
  result.powers.p = Eigen::VectorXd::Zero(n);
  result.powers.q = Eigen::VectorXd::Zero(n);
  result.powers.status = PowerStatus::kInfeasibleSinr;
  result.powers.diagnostic = "first grid rate is not reachable";
  return result;
}

std::vector<int> MaskIndices(const std::vector<bool>& mask) {
  std::vector<int> out;
  for (std::size_t i = 0; i < mask.size(); ++i) {
    if (mask[i]) out.push_back(static_cast<int>(i));
  }
  return out;
}

}  // namespace

std::string_view ScenarioName(ScenarioKind kind) {
  switch (kind) {
    case ScenarioKind::kSingleLayer:
      return "single";
    case ScenarioKind::kMacroMicro:
      return "macro_micro";
    case ScenarioKind::kMacroRelay:
      return "macro_relay";
    case ScenarioKind::kUncoordinatedSingle:
      return "uncoordinated_single";
    case ScenarioKind::kUncoordinatedMicro:
      return "uncoordinated_micro";
    case ScenarioKind::kUncoordinatedRelay:
      return "uncoordinated_relay";
  }
  return "unknown";
}

std::optional<ScenarioKind> ParseScenario(std::string_view name) {
  for (ScenarioKind kind :
       {ScenarioKind::kSingleLayer, ScenarioKind::kMacroMicro,
        ScenarioKind::kMacroRelay, ScenarioKind::kUncoordinatedSingle,
        ScenarioKind::kUncoordinatedMicro, ScenarioKind::kUncoordinatedRelay}) {
    if (ScenarioName(kind) == name) return kind;
  }
  return std::nullopt;
}

bool IsUncoordinated(ScenarioKind kind) {
  return kind == ScenarioKind::kUncoordinatedSingle ||
         kind == ScenarioKind::kUncoordinatedMicro ||
         kind == ScenarioKind::kUncoordinatedRelay;
}

bool UsesLowPower(ScenarioKind kind) {
  return kind != ScenarioKind::kSingleLayer &&
         kind != ScenarioKind::kUncoordinatedSingle;
}

bool UsesRelays(ScenarioKind kind) {
  return kind == ScenarioKind::kMacroRelay ||
         kind == ScenarioKind::kUncoordinatedRelay;
}

double RateResult::total_power() const {
  double total = powers.p.size() ? powers.p.sum() : 0.0;
  if (powers.q.size()) total += powers.q.sum();
  return total;
}

RelayLinks RestrictRelayLinks(const Drop& drop, const std::vector<int>& active) {
  const auto n = static_cast<Eigen::Index>(active.size());
  RelayLinks links;
  links.gain.resize(n, n);
  links.sigma2.resize(n);
  for (Eigen::Index a = 0; a < n; ++a) {
    links.sigma2(a) = drop.relay_sigma2(active[a]);
    for (Eigen::Index b = 0; b < n; ++b) {
      links.gain(a, b) = drop.relay_gain(active[a], active[b]);
    }
  }
  return links;
}

int KeepCount(double load, int n) {
  if (!(load > 0.0)) {
    throw std::invalid_argument("load must be > 0; it would leave no users");
  }
  const double exact = load * n;
  const int keep = static_cast<int>(std::ceil(exact - 1e-9));
  return std::clamp(keep, 1, n);
}

std::vector<int> DiscardOrder(const GainSystem& gains,
                              const Eigen::VectorXd& p_full,
                              const Eigen::VectorXd& q_full) {
  const int n = gains.n();
  std::vector<bool> alive(n, true);
  Eigen::VectorXd signal(n);
  Eigen::VectorXd interference = Eigen::VectorXd::Zero(n);
  for (int i = 0; i < n; ++i) {
    signal(i) = gains.g(i, i) * p_full(i) + gains.h(i, i) * q_full(i);
    for (int j = 0; j < n; ++j) {
      if (j != i) interference(i) += gains.g(i, j) * p_full(j) + gains.h(i, j) * q_full(j);
    }
  }
  std::vector<int> order;
  order.reserve(n);
  for (int round = 0; round < n; ++round) {
    int worst = -1;
    double worst_sinr = std::numeric_limits<double>::infinity();
    for (int i = 0; i < n; ++i) {
      if (!alive[i]) continue;
      const double sinr =
          signal(i) / (std::max(interference(i), 0.0) + gains.sigma2(i));
      if (worst < 0 || sinr < worst_sinr) {
        worst = i;
        worst_sinr = sinr;
      }
    }
    alive[worst] = false;
    order.push_back(worst);
    // The removed user's stations go silent.
    for (int i = 0; i < n; ++i) {
      if (alive[i]) {
        interference(i) -=
            gains.g(i, worst) * p_full(worst) + gains.h(i, worst) * q_full(worst);
      }
    }
  }
  return order;
}

std::vector<int> DiscardUsers(const GainSystem& gains, double load,
                              const Eigen::VectorXd& p_full,
                              const Eigen::VectorXd& q_full) {
  const int n = gains.n();
  const int keep = KeepCount(load, n);
  const std::vector<int> order = DiscardOrder(gains, p_full, q_full);
  std::vector<int> kept(order.end() - keep, order.end());
  std::sort(kept.begin(), kept.end());
  return kept;
}

Eigen::VectorXd RelayDecodeRates(const RelayLinks& links, double p_max) {
  const Eigen::Index n = links.gain.rows();
  Eigen::VectorXd rates(n);
  for (Eigen::Index j = 0; j < n; ++j) {
    double interference = 0.0;
    for (Eigen::Index k = 0; k < n; ++k) {
      if (k != j) interference += links.gain(j, k) * p_max;
    }
    const double sinr = links.gain(j, j) * p_max / (interference + links.sigma2(j));
    rates(j) = std::log2(1.0 + sinr);
  }
  return rates;
}

std::vector<bool> RelayDecodeSet(const RelayLinks& links,
                                 const std::vector<bool>& present, double p_max,
                                 double rate) {
  const Eigen::VectorXd rates = RelayDecodeRates(links, p_max);
  std::vector<bool> decoded(present.size(), false);
  for (std::size_t j = 0; j < present.size(); ++j) {
    decoded[j] = present[j] && rates(static_cast<Eigen::Index>(j)) >= rate;
  }
  return decoded;
}

RateResult MaximizeSingle(const GainSystem& gains, double p_max,
                          const RateSearchOptions& options) {
  CheckSearchOptions(options);
  const int n = gains.n();
  if (!(p_max > 0.0)) return ZeroRate(n);

  const double rho = SpectralRadius(gains.f).rho;
  std::map<int, PowerSolution> solved;
  int evaluations = 0;
  auto feasible = [&](int step) {
    ++evaluations;
    const double gamma = RateToSinr(GridRate(options, step));
    if (gamma * rho >= 1.0) return false;
    PowerSolution sol = SolveSingleAnalytic(gains.f, gains.u, gamma, rho);
    ApplyPowerCaps(sol, p_max, p_max);
    if (!sol.feasible()) return false;
    solved.emplace(step, std::move(sol));
    return true;
  };
  const int best = LargestFeasibleStep(feasible, options);
  if (best < 0) {
    RateResult result = ZeroRate(n);
    result.iterations = evaluations;
    return result;
  }
  RateResult result;
  result.common_rate = GridRate(options, best);
  result.powers = solved.at(best);
  result.powers.q = Eigen::VectorXd::Zero(n);
  result.iterations = evaluations;
  return result;
}

RateResult MaximizeTwoLayer(const GainSystem& gains, const PowerCaps& caps,
                            ScenarioKind kind, const std::vector<bool>& present,
                            const RelayLinks* relays,
                            const RateSearchOptions& options) {
  CheckSearchOptions(options);
  if (kind != ScenarioKind::kMacroMicro && kind != ScenarioKind::kMacroRelay) {
    throw std::invalid_argument("MaximizeTwoLayer needs macro_micro or macro_relay");
  }
  const bool relay = kind == ScenarioKind::kMacroRelay;
  if (relay && relays == nullptr) {
    throw std::invalid_argument("macro_relay needs relay links");
  }
  const int n = gains.n();
  if (static_cast<int>(present.size()) != n) {
    throw std::invalid_argument("low-power presence mask has the wrong size");
  }
  if (!(caps.p_max > 0.0) && !(caps.q_max > 0.0)) return ZeroRate(n);

  Eigen::VectorXd decode_rates;
  if (relay) decode_rates = RelayDecodeRates(*relays, caps.p_max);
  auto mask_at = [&](double rate) {
    std::vector<bool> mask = present;
    if (relay) {
      const double decode_rate = options.relay_set_per_rate ? rate : options.r_init;
      for (int j = 0; j < n; ++j) mask[j] = mask[j] && decode_rates(j) >= decode_rate;
    }
    return mask;
  };

  struct Outcome {
    LpSolution lp;
    std::vector<bool> mask;
  };
  std::map<int, Outcome> solved;
  int evaluations = 0;
  auto feasible = [&](int step) {
    ++evaluations;
    const double rate = GridRate(options, step);
    const double gamma = RateToSinr(rate);
    std::vector<bool> mask = mask_at(rate);
    if (options.spectral_guard) {
      Eigen::VectorXd c = gains.c;
      Eigen::MatrixXd g = gains.g_norm;
      for (int j = 0; j < n; ++j) {
        if (!mask[j]) {
          c(j) = 0.0;
          g.col(j).setZero();
        }
      }
      const double rho = TwoLayerSpectralRadius(c, gains.f, g).rho;
      if (gamma * rho >= 1.0) return false;
    }
    MinPowerProblem problem;
    problem.gains = &gains;
    problem.gamma = gamma;
    problem.p_max = caps.p_max;
    problem.q_max = caps.q_max;
    problem.lowpower_active = mask;
    LpSolution lp = SolveMinPower(problem);
    if (lp.status == LpStatus::kNumericalFailure) {
      throw SolverError("min-power LP failed at rate " + std::to_string(rate) +
                        ": " + lp.diagnostic);
    }
    if (!lp.optimal()) return false;
    solved.emplace(step, Outcome{std::move(lp), std::move(mask)});
    return true;
  };

  const int best = LargestFeasibleStep(feasible, options);
  if (best < 0) {
    RateResult result = ZeroRate(n);
    result.iterations = evaluations;
    return result;
  }
  const Outcome& outcome = solved.at(best);
  RateResult result;
  result.common_rate = GridRate(options, best);
  result.iterations = evaluations;
  result.powers.p = outcome.lp.p;
  result.powers.q = outcome.lp.q;
  result.powers.status = PowerStatus::kFeasible;
  result.powers.achieved_sinr = ComputeSinr(gains, outcome.lp.p, outcome.lp.q);
  result.active_relays = MaskIndices(outcome.mask);
  return result;
}

RateResult UncoordinatedRate(const GainSystem& gains, const PowerCaps& caps,
                             ScenarioKind kind, const std::vector<bool>& present,
                             const RelayLinks* relays) {
  const int n = gains.n();
  const bool lowpower = UsesLowPower(kind);
  const bool relay = kind == ScenarioKind::kUncoordinatedRelay;
  if (relay && relays == nullptr) {
    throw std::invalid_argument("uncoordinated_relay needs relay links");
  }
  if (lowpower && static_cast<int>(present.size()) != n) {
    throw std::invalid_argument("low-power presence mask has the wrong size");
  }

  RateResult result;
  const Eigen::VectorXd p = Eigen::VectorXd::Constant(n, caps.p_max);
  std::vector<bool> mask = lowpower ? present : std::vector<bool>(n, false);
  Eigen::VectorXd decode_rates;
  if (relay) decode_rates = RelayDecodeRates(*relays, caps.p_max);

  Eigen::VectorXd q(n);
  Eigen::VectorXd sinr;
  double rate = 0.0;
  for (int round = 0; round <= n; ++round) {
    for (int j = 0; j < n; ++j) q(j) = mask[j] ? caps.q_max : 0.0;
    sinr = ComputeSinr(gains, p, q);
    rate = n > 0 ? std::log2(1.0 + sinr.minCoeff()) : 0.0;
    ++result.iterations;
    if (!relay) break;
    bool changed = false;
    for (int j = 0; j < n; ++j) {
      if (mask[j] && decode_rates(j) < rate) {
        mask[j] = false;
        changed = true;
      }
    }
    if (!changed) break;
  }

  result.common_rate = rate;
  result.powers.p = p;
  result.powers.q = q;
  result.powers.achieved_sinr = sinr;
  result.powers.status = PowerStatus::kFeasible;
  if (lowpower) result.active_relays = MaskIndices(mask);
  return result;
}

RateResult RunScenario(const Drop& drop, const std::vector<int>& active,
                       const GainSystem& restricted, ScenarioKind kind,
                       const ScenarioParams& params) {
  std::vector<bool> present(active.size());
  for (std::size_t a = 0; a < active.size(); ++a) {
    present[a] = drop.lowpower_present[active[a]];
  }
  const double q_max =
      UsesRelays(kind) ? params.q_max_relay : params.q_max_micro;
  const PowerCaps caps{params.p_max, q_max};
  std::optional<RelayLinks> relays;
  if (UsesRelays(kind)) relays = RestrictRelayLinks(drop, active);
  const RelayLinks* relay_ptr = relays ? &*relays : nullptr;

  RateResult result;
  switch (kind) {
    case ScenarioKind::kSingleLayer:
      result = MaximizeSingle(restricted, params.p_max, params.search);
      break;
    case ScenarioKind::kMacroMicro:
    case ScenarioKind::kMacroRelay:
      result = MaximizeTwoLayer(restricted, caps, kind, present, relay_ptr,
                                params.search);
      break;
    case ScenarioKind::kUncoordinatedSingle:
    case ScenarioKind::kUncoordinatedMicro:
    case ScenarioKind::kUncoordinatedRelay:
      result = UncoordinatedRate(restricted, caps, kind, present, relay_ptr);
      break;
  }
  result.active_users = active;
  return result;
}

}  // namespace hetnet
