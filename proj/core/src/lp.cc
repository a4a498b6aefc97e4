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

#include "hetnet/lp.h"

#include <cmath>
#include <stdexcept>
#include <string>

namespace hetnet {
namespace {

constexpr double kResidualLimit = 1e-8;
constexpr double kSinrRelativeTolerance = 1e-8;
constexpr double kMinimalityScale = 1.0 - 1e-6;

Eigen::VectorXd SinrOf(const MinPowerProblem& problem, const Eigen::VectorXd& p,
                       const Eigen::VectorXd& q) {
  return ComputeSinr(*problem.gains, p, q);
}

bool AllMeetTarget(const Eigen::VectorXd& sinr, double gamma) {
  for (Eigen::Index i = 0; i < sinr.size(); ++i) {
    if (!(sinr(i) >= gamma)) return false;
  }
  return true;
}

}  // namespace

void MinPowerProblem::Validate() const {
  if (gains == nullptr) throw std::invalid_argument("problem has no gains");
  if (!(gamma >= 0.0) || !std::isfinite(gamma)) {
    throw std::invalid_argument("gamma must be finite and >= 0");
  }
  if (!(p_max >= 0.0) || !(q_max >= 0.0)) {
    throw std::invalid_argument("power caps must be >= 0");
  }
  if (static_cast<int>(lowpower_active.size()) != gains->n()) {
    throw std::invalid_argument("low-power mask must have one entry per user");
  }
}

const char* LpStatusName(LpStatus status) {
  switch (status) {
    case LpStatus::kOptimal:
      return "optimal";
    case LpStatus::kInfeasible:
      return "infeasible";
    case LpStatus::kNumericalFailure:
      return "numerical_failure";
  }
  return "unknown";
}

LinearProgram AssembleLp(const MinPowerProblem& problem) {
  problem.Validate();
  const GainSystem& gs = *problem.gains;
  const int n = gs.n();
  const double gamma = problem.gamma;

  LinearProgram lp;
  lp.name = "MINPOWER";
  lp.a.resize(n, 2 * n);
  lp.rhs.resize(n);
  lp.sense.assign(n, RowSense::kGreaterEqual);
  lp.cost = Eigen::VectorXd::Ones(2 * n);
  lp.lower = Eigen::VectorXd::Zero(2 * n);
  lp.upper.resize(2 * n);
  lp.row_scale.resize(n);

  for (int i = 0; i < n; ++i) {
    const double target = gamma * gs.sigma2(i);
    const double scale = target > 0.0 ? target : gs.g(i, i);
    lp.row_scale(i) = scale;
    for (int j = 0; j < n; ++j) {
      const double sign = j == i ? 1.0 : -gamma;
      lp.a(i, j) = sign * gs.g(i, j) / scale;
      lp.a(i, n + j) = sign * gs.h(i, j) / scale;
    }
    lp.rhs(i) = target / scale;
  }
  for (int j = 0; j < n; ++j) {
    lp.upper(j) = problem.p_max;
    lp.upper(n + j) = problem.lowpower_active[j] ? problem.q_max : 0.0;
  }

  lp.row_names.reserve(n);
  lp.col_names.reserve(2 * n);
  for (int i = 0; i < n; ++i) lp.row_names.push_back("R" + std::to_string(i + 1));
  for (int j = 0; j < n; ++j) lp.col_names.push_back("P" + std::to_string(j + 1));
  for (int j = 0; j < n; ++j) lp.col_names.push_back("Q" + std::to_string(j + 1));
  return lp;
}

LpSolution SolveMinPower(const MinPowerProblem& problem) {
  const LinearProgram lp = AssembleLp(problem);
  const int n = problem.gains->n();
  LpSolution solution;

  for (PricingRule rule : {PricingRule::kDantzig, PricingRule::kBland}) {
    SimplexOptions options;
    options.pricing = rule;
    const SimplexResult result = SolveLinearProgram(lp, options);
    solution.iterations += result.iterations;
    if (result.status == SimplexStatus::kInfeasible) {
      solution.status = LpStatus::kInfeasible;
      solution.diagnostic = "no power vector within the caps reaches the target";
      return solution;
    }
    if (result.status != SimplexStatus::kOptimal) {
      solution.diagnostic = SimplexStatusName(result.status);
      continue;
    }
    solution.primal_residual = result.primal_residual;
    solution.dual_residual = result.dual_residual;
    if (result.primal_residual > kResidualLimit ||
        result.dual_residual > kResidualLimit) {
      solution.diagnostic = "residual check failed";
      continue;
    }
    solution.status = LpStatus::kOptimal;
    solution.p = result.x.head(n);
    solution.q = result.x.tail(n);
    solution.objective = result.x.sum();
    solution.sinr_surplus =
        SinrOf(problem, solution.p, solution.q).array() - problem.gamma;
    solution.diagnostic.clear();
    return solution;
  }
  solution.status = LpStatus::kNumericalFailure;
  return solution;
}

VerificationReport VerifySolution(const MinPowerProblem& problem,
                                  const LpSolution& solution) {
  problem.Validate();
  VerificationReport report;
  const int n = problem.gains->n();
  if (solution.p.size() != n || solution.q.size() != n) {
    report.sinr_ok = report.bounds_ok = report.mask_ok = false;
    return report;
  }

  const Eigen::VectorXd sinr = SinrOf(problem, solution.p, solution.q);
  for (int i = 0; i < n; ++i) {
    if (!(sinr(i) >= problem.gamma * (1.0 - kSinrRelativeTolerance))) {
      report.sinr_ok = false;
      report.sinr_violations.push_back(i);
    }
  }
  for (int i = 0; i < n; ++i) {
    if (solution.p(i) < 0.0 || solution.p(i) > problem.p_max * (1.0 + 1e-12) ||
        solution.q(i) < 0.0 || solution.q(i) > problem.q_max * (1.0 + 1e-12)) {
      report.bounds_ok = false;
    }
    if (!problem.lowpower_active[i] && solution.q(i) != 0.0) {
      report.mask_ok = false;
    }
  }
  if (solution.optimal() && problem.gamma > 0.0) {
    const Eigen::VectorXd scaled_sinr =
        SinrOf(problem, kMinimalityScale * solution.p, kMinimalityScale * solution.q);
    report.locally_minimal = !AllMeetTarget(scaled_sinr, problem.gamma);
  }
  return report;
}

}  // namespace hetnet
