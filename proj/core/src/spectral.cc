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

#include "hetnet/spectral.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace hetnet {
namespace {

constexpr double kNegativePowerTolerance = 1e-12;

std::vector<bool> Reachable(const Eigen::MatrixXd& m, bool transpose) {
  const Eigen::Index n = m.rows();
  std::vector<bool> seen(n, false);
  std::vector<Eigen::Index> stack = {0};
  seen[0] = true;
  while (!stack.empty()) {
    const Eigen::Index i = stack.back();
    stack.pop_back();
    for (Eigen::Index j = 0; j < n; ++j) {
      const double entry = transpose ? m(j, i) : m(i, j);
      if (j != i && entry != 0.0 && !seen[j]) {
        seen[j] = true;
        stack.push_back(j);
      }
    }
  }
  return seen;
}

}  // namespace

bool IsIrreducible(const Eigen::MatrixXd& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("matrix must be square");
  if (m.rows() <= 1) return true;
  for (bool transpose : {false, true}) {
    const std::vector<bool> seen = Reachable(m, transpose);
    if (std::find(seen.begin(), seen.end(), false) != seen.end()) return false;
  }
  return true;
}

SpectralRadiusResult SpectralRadius(const Eigen::MatrixXd& m, double rel_tol,
                                    int max_iterations) {
  if (m.rows() != m.cols()) throw std::invalid_argument("matrix must be square");
  SpectralRadiusResult result;
  const Eigen::Index n = m.rows();
  result.irreducible = IsIrreducible(m);
  if (n == 0) {
    result.converged = true;
    return result;
  }
  const double row_sum_bound = m.rowwise().sum().maxCoeff();
  if (!(row_sum_bound > 0.0)) {
    result.converged = true;
    return result;
  }

  // The shift makes an irreducible matrix primitive, so periodic patterns
  // such as [[0, a], [a, 0]] still converge.
  const double shift = 0.25 * row_sum_bound;
  Eigen::VectorXd x = Eigen::VectorXd::Ones(n);
  Eigen::VectorXd y(n);
  double previous_estimate = std::numeric_limits<double>::quiet_NaN();
  int stable_steps = 0;
  double estimate = 0.0;

  for (int it = 1; it <= max_iterations; ++it) {
    y.noalias() = m * x;
    y += shift * x;
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < n; ++i) {
      if (x(i) > 0.0) {
        const double ratio = y(i) / x(i);
        lo = std::min(lo, ratio);
        hi = std::max(hi, ratio);
      }
    }
    lo -= shift;
    hi -= shift;
    estimate = x.dot(y) / x.dot(x) - shift;
    result.iterations = it;

    if (result.irreducible) {
      if (hi - lo <= rel_tol * std::abs(hi)) {
        result.rho = 0.5 * (lo + hi);
        result.converged = true;
        return result;
      }
    } else if (std::abs(estimate - previous_estimate) <=
               rel_tol * std::abs(estimate)) {
      if (++stable_steps >= 3) {
        result.rho = estimate;
        result.converged = true;
        return result;
      }
    } else {
      stable_steps = 0;
    }
    previous_estimate = estimate;

    const double scale = y.maxCoeff();
    if (!(scale > 0.0)) break;
    x = y / scale;
  }
  result.rho = estimate;
  return result;
}

FeasibilityReport FeasibilityFromRho(double rho, bool irreducible) {
  FeasibilityReport report;
  report.rho = rho;
  report.irreducible = irreducible;
  if (rho > 0.0) {
    report.gamma_max = 1.0 / rho;
    report.r_max = std::log2(1.0 + report.gamma_max);
  } else {
    report.gamma_max = std::numeric_limits<double>::infinity();
    report.r_max = std::numeric_limits<double>::infinity();
  }
  return report;
}

FeasibilityReport FeasibilitySingle(const Eigen::MatrixXd& f) {
  const SpectralRadiusResult sr = SpectralRadius(f);
  return FeasibilityFromRho(sr.rho, sr.irreducible);
}

const char* PowerStatusName(PowerStatus status) {
  switch (status) {
    case PowerStatus::kFeasible:
      return "feasible";
    case PowerStatus::kInfeasibleSinr:
      return "infeasible_sinr";
    case PowerStatus::kExceedsCaps:
      return "exceeds_caps";
  }
  return "unknown";
}

Eigen::VectorXd NormalizedSinr(const Eigen::MatrixXd& f,
                               const Eigen::VectorXd& c,
                               const Eigen::MatrixXd& g,
                               const Eigen::VectorXd& u,
                               const Eigen::VectorXd& p,
                               const Eigen::VectorXd& q) {
  const Eigen::Index n = f.rows();
  const bool two_layer = q.size() == n && n > 0;
  Eigen::VectorXd sinr(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    double signal = p(i);
    double denominator = u(i);
    for (Eigen::Index j = 0; j < n; ++j) {
      if (j == i) continue;
      denominator += f(i, j) * p(j);
      if (two_layer) denominator += g(i, j) * q(j);
    }
    if (two_layer) signal += c(i) * q(i);
    // A user with neither signal nor interference-plus-noise is
    // reported as unconstrained.
    sinr(i) = denominator > 0.0 ? signal / denominator
              : signal > 0.0    ? std::numeric_limits<double>::infinity()
                                : std::numeric_limits<double>::quiet_NaN();
  }
  return sinr;
}

PowerSolution SolveSingleAnalytic(const Eigen::MatrixXd& f,
                                  const Eigen::VectorXd& u, double gamma0) {
  return SolveSingleAnalytic(f, u, gamma0, SpectralRadius(f).rho);
}

PowerSolution SolveSingleAnalytic(const Eigen::MatrixXd& f,
                                  const Eigen::VectorXd& u, double gamma0,
                                  double rho) {
  if (!(gamma0 > 0.0)) throw std::invalid_argument("gamma0 must be positive");
  const Eigen::Index n = f.rows();
  PowerSolution sol;
  if (gamma0 * rho >= 1.0) {
    sol.status = PowerStatus::kInfeasibleSinr;
    sol.diagnostic = "gamma0 >= 1 / rho(F)";
    return sol;
  }
  const Eigen::MatrixXd system =
      Eigen::MatrixXd::Identity(n, n) - gamma0 * f;
  sol.p = system.partialPivLu().solve(gamma0 * u);
  if (!sol.p.allFinite()) {
    sol.status = PowerStatus::kInfeasibleSinr;
    sol.diagnostic = "singular system";
    return sol;
  }
  const double scale = std::max(sol.p.cwiseAbs().maxCoeff(), 1e-300);
  if ((sol.p.array() < -kNegativePowerTolerance * scale).any()) {
    sol.status = PowerStatus::kInfeasibleSinr;
    sol.diagnostic = "negative power component";
    return sol;
  }
  sol.p = sol.p.cwiseMax(0.0);
  sol.achieved_sinr = NormalizedSinr(f, {}, {}, u, sol.p, {});
  for (Eigen::Index i = 0; i < n; ++i) {
    if (std::isnan(sol.achieved_sinr(i))) sol.achieved_sinr(i) = gamma0;
  }
  sol.status = PowerStatus::kFeasible;
  return sol;
}

void ApplyPowerCaps(PowerSolution& solution, double p_max, double q_max) {
  if (!solution.feasible()) return;
  const bool p_over = solution.p.size() > 0 && solution.p.maxCoeff() > p_max;
  const bool q_over = solution.q.size() > 0 && solution.q.maxCoeff() > q_max;
  if (p_over || q_over) {
    solution.status = PowerStatus::kExceedsCaps;
    solution.diagnostic = p_over ? "macro power above cap" : "low-power above cap";
  }
}

BTilde BuildBTilde(const Eigen::VectorXd& c, const Eigen::MatrixXd& f,
                   const Eigen::MatrixXd& g) {
  const Eigen::Index n = f.rows();
  const Eigen::VectorXd d = (1.0 + c.array().square()).inverse().matrix();
  BTilde out;
  out.a_pinv.resize(2 * n, n);
  out.a_pinv.topRows(n) = d.asDiagonal();
  out.a_pinv.bottomRows(n) = c.cwiseProduct(d).asDiagonal();
  Eigen::MatrixXd b(n, 2 * n);
  b << f, g;
  out.b_tilde = out.a_pinv * b;
  return out;
}

SpectralRadiusResult TwoLayerSpectralRadius(const Eigen::VectorXd& c,
                                            const Eigen::MatrixXd& f,
                                            const Eigen::MatrixXd& g) {
  const Eigen::VectorXd d = (1.0 + c.array().square()).inverse().matrix();
  const Eigen::MatrixXd reduced =
      (f + g * c.asDiagonal()) * d.asDiagonal();
  return SpectralRadius(reduced);
}

PowerSolution SolveTwoLayerAnalytic(const Eigen::VectorXd& c,
                                    const Eigen::MatrixXd& f,
                                    const Eigen::MatrixXd& g,
                                    const Eigen::VectorXd& u, double gamma0) {
  if (!(gamma0 > 0.0)) throw std::invalid_argument("gamma0 must be positive");
  const Eigen::Index n = f.rows();
  const BTilde bt = BuildBTilde(c, f, g);
  PowerSolution sol;
  const double rho = SpectralRadius(bt.b_tilde).rho;
  if (gamma0 * rho >= 1.0) {
    sol.status = PowerStatus::kInfeasibleSinr;
    sol.diagnostic = "gamma0 >= 1 / rho(B~)";
    return sol;
  }
  const Eigen::MatrixXd system =
      Eigen::MatrixXd::Identity(2 * n, 2 * n) - gamma0 * bt.b_tilde;
  const Eigen::VectorXd x = system.partialPivLu().solve(gamma0 * (bt.a_pinv * u));
  if (!x.allFinite()) {
    sol.status = PowerStatus::kInfeasibleSinr;
    sol.diagnostic = "singular system";
    return sol;
  }
  sol.p = x.head(n);
  sol.q = x.tail(n);
  const double scale = std::max(x.cwiseAbs().maxCoeff(), 1e-300);
  if ((x.array() < -kNegativePowerTolerance * scale).any()) {
    sol.status = PowerStatus::kInfeasibleSinr;
    sol.diagnostic = "analytic solution has negative components";
    sol.achieved_sinr = NormalizedSinr(f, c, g, u, sol.p, sol.q);
    return sol;
  }
  sol.p = sol.p.cwiseMax(0.0);
  sol.q = sol.q.cwiseMax(0.0);
  sol.achieved_sinr = NormalizedSinr(f, c, g, u, sol.p, sol.q);
  for (Eigen::Index i = 0; i < n; ++i) {
    if (std::isnan(sol.achieved_sinr(i))) sol.achieved_sinr(i) = gamma0;
  }
  sol.status = PowerStatus::kFeasible;
  return sol;
}

}  // namespace hetnet
