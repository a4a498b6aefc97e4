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

#ifndef HETNET_LP_H_
#define HETNET_LP_H_

#include <limits>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "hetnet/channel.h"
#include "hetnet/simplex.h"

namespace hetnet {

// Minimum total power that gives every user at least SINR `gamma`, with box
// constraints on both layers. Low-power stations outside `lowpower_active`
// are forced silent (q_i = 0).
struct MinPowerProblem {
  const GainSystem* gains = nullptr;  // not owned
  double gamma = 0.0;
  double p_max = std::numeric_limits<double>::infinity();
  double q_max = std::numeric_limits<double>::infinity();
  std::vector<bool> lowpower_active;  // size n; all false = single layer

  void Validate() const;
};

// Variables P1..Pn, Q1..Qn; one ">=" row per user. Row i,
//   g_ii p_i + h_ii q_i - gamma sum_{j != i} (g_ij p_j + h_ij q_j) >= gamma sigma_i^2,
// is divided by gamma sigma_i^2 (or g_ii when that is zero); the divisor is
// kept in LinearProgram::row_scale.
LinearProgram AssembleLp(const MinPowerProblem& problem);

enum class LpStatus { kOptimal, kInfeasible, kNumericalFailure };

const char* LpStatusName(LpStatus status);

struct LpSolution {
  LpStatus status = LpStatus::kNumericalFailure;
  Eigen::VectorXd p;
  Eigen::VectorXd q;
  double objective = 0.0;       // total watts
  Eigen::VectorXd sinr_surplus;  // achieved SINR - gamma, per user
  int iterations = 0;
  double primal_residual = 0.0;
  double dual_residual = 0.0;
  std::string diagnostic;

  bool optimal() const { return status == LpStatus::kOptimal; }
};

// Solves the assembled LP. A result whose primal or dual residual exceeds
// 1e-8 is re-solved with Bland's rule; a second failure is reported as
// kNumericalFailure.
LpSolution SolveMinPower(const MinPowerProblem& problem);

struct VerificationReport {
  bool sinr_ok = true;
  bool bounds_ok = true;
  bool mask_ok = true;
  // For optimal solutions: scaling every power by (1 - 1e-6) must break at
  // least one SINR constraint.
  bool locally_minimal = true;
  std::vector<int> sinr_violations;

  bool ok() const { return sinr_ok && bounds_ok && mask_ok && locally_minimal; }
};

VerificationReport VerifySolution(const MinPowerProblem& problem,
                                  const LpSolution& solution);

}  // namespace hetnet

#endif  // HETNET_LP_H_
