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

#ifndef HETNET_ORACLE_H_
#define HETNET_ORACLE_H_

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "hetnet/channel.h"

namespace hetnet {

// Outcome of one randomized self-check against an independent reference.
struct OracleCheck {
  std::string name;
  bool passed = false;
  int cases = 0;
  double worst = 0.0;  // largest observed error (check-specific units)
  std::string detail;
};

// Random irreducible nonnegative matrix with a zero diagonal.
Eigen::MatrixXd RandomNonnegative(int n, std::mt19937_64& rng);

// Random user system with dominant direct gains. h is zero unless
// `lowpower` is set.
GainSystem RandomGainSystem(int n, bool lowpower, std::mt19937_64& rng);

// Power iteration against Eigen's dense eigensolver, relative error <= 1e-8.
OracleCheck CheckPowerIteration(std::mt19937_64& rng, int cases = 100);

// Single-layer LP with infinite caps against the closed-form fixed point,
// relative error < 1e-6.
OracleCheck CheckLpVersusAnalytic(std::mt19937_64& rng, int cases = 100);

// Feasible with positive powers at 0.99 / rho, infeasible at 1.01 / rho.
OracleCheck CheckSpectralBoundary(std::mt19937_64& rng, int cases = 100);

// Every optimal LP point (caps = inf, one and two layers) has all SINR
// constraints tight to 1e-6 relative.
OracleCheck CheckFixedPointTightness(std::mt19937_64& rng, int cases = 100);

// With h = 0 the two-layer solvers reproduce the single-layer ones to 1e-10.
OracleCheck CheckLayerCollapse(std::mt19937_64& rng, int cases = 50);

std::vector<OracleCheck> RunOracleSuites(std::uint64_t seed);

}  // namespace hetnet

#endif  // HETNET_ORACLE_H_
