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

#include "hetnet/oracle.h"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "hetnet/lp.h"
#include "hetnet/ratemax.h"
#include "hetnet/spectral.h"

namespace hetnet {
namespace {

double RelErr(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  const double scale = b.norm();
  return scale > 0.0 ? (a - b).norm() / scale : (a - b).norm();
}

int RandomSize(std::mt19937_64& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

OracleCheck Finish(OracleCheck check, int failures, const std::string& first) {
  check.passed = failures == 0;
  std::ostringstream os;
  os << failures << "/" << check.cases << " failed, worst " << check.worst;
  if (!first.empty()) os << "; " << first;
  check.detail = os.str();
  return check;
}

}  // namespace

Eigen::MatrixXd RandomNonnegative(int n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Eigen::MatrixXd m(n, n);
  for (;;) {
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        // Some structural zeros so the connectivity test matters.
        m(i, j) = (i == j || u(rng) < 0.2) ? 0.0 : u(rng);
      }
    }
    if (n == 1 || IsIrreducible(m)) return m;
  }
}

GainSystem RandomGainSystem(int n, bool lowpower, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Eigen::MatrixXd g(n, n), h = Eigen::MatrixXd::Zero(n, n);
  Eigen::VectorXd sigma2(n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      g(i, j) = i == j ? 1.0 + u(rng) : 0.2 * u(rng);
      if (lowpower) h(i, j) = i == j ? 0.2 + 0.8 * u(rng) : 0.1 * u(rng);
    }
    sigma2(i) = 0.01 + 0.09 * u(rng);
  }
  return BuildGainSystem(std::move(g), std::move(h), std::move(sigma2));
}

OracleCheck CheckPowerIteration(std::mt19937_64& rng, int cases) {
  OracleCheck check{"power iteration vs dense eigensolver", false, cases, 0.0, {}};
  int failures = 0;
  std::string first;
  for (int k = 0; k < cases; ++k) {
    const Eigen::MatrixXd m = RandomNonnegative(RandomSize(rng, 1, 8), rng);
    const double expected = m.eigenvalues().cwiseAbs().maxCoeff();
    const SpectralRadiusResult got = SpectralRadius(m);
    double e = std::abs(got.rho - expected);
    if (expected > 0.0) e /= expected;
    check.worst = std::max(check.worst, e);
    if (!(e <= 1e-8)) {
      if (!failures++) {
        std::ostringstream os;
        os << "case " << k << ": " << got.rho << " vs " << expected;
        first = os.str();
      }
    }
  }
  return Finish(check, failures, first);
}

OracleCheck CheckLpVersusAnalytic(std::mt19937_64& rng, int cases) {
  OracleCheck check{"LP vs closed-form single layer", false, cases, 0.0, {}};
  std::uniform_real_distribution<double> frac(0.05, 0.95);
  int failures = 0;
  std::string first;
  for (int k = 0; k < cases; ++k) {
    const GainSystem gs = RandomGainSystem(RandomSize(rng, 1, 10), false, rng);
    const double rho = SpectralRadius(gs.f).rho;
    const double gamma = rho > 0.0 ? frac(rng) / rho : 1.0 + 4.0 * frac(rng);
    const PowerSolution analytic = SolveSingleAnalytic(gs.f, gs.u, gamma, rho);
    MinPowerProblem problem;
    problem.gains = &gs;
    problem.gamma = gamma;
    problem.lowpower_active.assign(gs.n(), false);
    const LpSolution lp = SolveMinPower(problem);
    double e = std::numeric_limits<double>::infinity();
    if (analytic.feasible() && lp.optimal()) e = RelErr(lp.p, analytic.p);
    check.worst = std::max(check.worst, e);
    if (!(e < 1e-6) && !failures++) {
      std::ostringstream os;
      os << "case " << k << " n=" << gs.n() << ": lp " << LpStatusName(lp.status)
         << ", analytic " << PowerStatusName(analytic.status) << ", err " << e;
      first = os.str();
    }
  }
  return Finish(check, failures, first);
}

OracleCheck CheckSpectralBoundary(std::mt19937_64& rng, int cases) {
  OracleCheck check{"spectral feasibility boundary", false, cases, 0.0, {}};
  int failures = 0;
  std::string first;
  for (int k = 0; k < cases; ++k) {
    const int n = RandomSize(rng, 2, 8);
    const Eigen::MatrixXd f = RandomNonnegative(n, rng);
    std::uniform_real_distribution<double> noise(0.01, 1.0);
    Eigen::VectorXd u(n);
    for (int i = 0; i < n; ++i) u(i) = noise(rng);
    const double expected = f.eigenvalues().cwiseAbs().maxCoeff();
    const double rho = SpectralRadius(f).rho;
    check.worst = std::max(check.worst, std::abs(rho - expected) / expected);
    const PowerSolution below = SolveSingleAnalytic(f, u, 0.99 / rho);
    const PowerSolution above = SolveSingleAnalytic(f, u, 1.01 / rho);
    const bool ok = below.feasible() && (below.p.array() > 0.0).all() &&
                    above.status == PowerStatus::kInfeasibleSinr &&
                    std::abs(rho - expected) <= 1e-8 * expected;
    if (!ok && !failures++) {
      std::ostringstream os;
      os << "case " << k << ": below " << PowerStatusName(below.status)
         << ", above " << PowerStatusName(above.status);
      first = os.str();
    }
  }
  return Finish(check, failures, first);
}

OracleCheck CheckFixedPointTightness(std::mt19937_64& rng, int cases) {
  OracleCheck check{"SINR constraints tight at LP optimum", false, cases, 0.0, {}};
  std::uniform_real_distribution<double> frac(0.05, 0.9);
  int failures = 0;
  std::string first;
  for (int k = 0; k < cases; ++k) {
    const bool two_layer = k % 2 == 1;
    const GainSystem gs = RandomGainSystem(RandomSize(rng, 1, 10), two_layer, rng);
    const double rho = two_layer ? TwoLayerSpectralRadius(gs.c, gs.f, gs.g_norm).rho
                                 : SpectralRadius(gs.f).rho;
    const double gamma = rho > 0.0 ? frac(rng) / rho : 2.0;
    MinPowerProblem problem;
    problem.gains = &gs;
    problem.gamma = gamma;
    problem.lowpower_active.assign(gs.n(), two_layer);
    const LpSolution lp = SolveMinPower(problem);
    double e = std::numeric_limits<double>::infinity();
    if (lp.optimal()) e = lp.sinr_surplus.cwiseAbs().maxCoeff() / gamma;
    check.worst = std::max(check.worst, e);
    if (!(e < 1e-6) && !failures++) {
      std::ostringstream os;
      os << "case " << k << (two_layer ? " two-layer" : " single") << ": "
         << LpStatusName(lp.status) << ", slack " << e;
      first = os.str();
    }
  }
  return Finish(check, failures, first);
}

OracleCheck CheckLayerCollapse(std::mt19937_64& rng, int cases) {
  OracleCheck check{"two-layer collapses to single layer when h = 0", false,
                    cases, 0.0, {}};
  std::uniform_real_distribution<double> frac(0.05, 0.95);
  int failures = 0;
  std::string first;
  for (int k = 0; k < cases; ++k) {
    const GainSystem gs = RandomGainSystem(RandomSize(rng, 1, 10), false, rng);
    const int n = gs.n();
    const double rho = SpectralRadius(gs.f).rho;
    const double gamma = rho > 0.0 ? frac(rng) / rho : 2.0;

    const PowerSolution single = SolveSingleAnalytic(gs.f, gs.u, gamma, rho);
    const PowerSolution two =
        SolveTwoLayerAnalytic(gs.c, gs.f, gs.g_norm, gs.u, gamma);
    double e = std::numeric_limits<double>::infinity();
    if (single.feasible() && two.feasible()) {
      e = std::max(RelErr(two.p, single.p), two.q.cwiseAbs().maxCoeff());
    }

    MinPowerProblem lp1;
    lp1.gains = &gs;
    lp1.gamma = gamma;
    lp1.lowpower_active.assign(n, false);
    MinPowerProblem lp2 = lp1;
    lp2.lowpower_active.assign(n, true);
    const LpSolution a = SolveMinPower(lp1);
    const LpSolution b = SolveMinPower(lp2);
    if (a.optimal() && b.optimal()) {
      e = std::max(e, std::max(RelErr(b.p, a.p), b.q.cwiseAbs().maxCoeff()));
    } else {
      e = std::numeric_limits<double>::infinity();
    }

    // Rate searches on the same instance with finite caps.
    const double p_max = 2.0 * (single.feasible() ? single.p.maxCoeff() : 1.0);
    const RateResult r1 = MaximizeSingle(gs, p_max);
    const RateResult r2 = MaximizeTwoLayer(gs, PowerCaps{p_max, 1.0},
                                           ScenarioKind::kMacroMicro,
                                           std::vector<bool>(n, true), nullptr);
    if (r1.common_rate != r2.common_rate) e = std::numeric_limits<double>::infinity();

    check.worst = std::max(check.worst, e);
    if (!(e <= 1e-10) && !failures++) {
      std::ostringstream os;
      os << "case " << k << " n=" << n << ": err " << e << ", rates "
         << r1.common_rate << " / " << r2.common_rate;
      first = os.str();
    }
  }
  return Finish(check, failures, first);
}

std::vector<OracleCheck> RunOracleSuites(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<OracleCheck> checks;
  checks.push_back(CheckPowerIteration(rng));
  checks.push_back(CheckLpVersusAnalytic(rng));
  checks.push_back(CheckSpectralBoundary(rng));
  checks.push_back(CheckFixedPointTightness(rng));
  checks.push_back(CheckLayerCollapse(rng));
  return checks;
}

}  // namespace hetnet
