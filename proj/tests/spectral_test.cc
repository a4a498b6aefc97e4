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

#include <cmath>
#include <limits>
#include <random>

#include <Eigen/Eigenvalues>
#include <gtest/gtest.h>

#include "hetnet/oracle.h"
#include "hetnet/spectral.h"

namespace hetnet {
namespace {

Eigen::MatrixXd TwoByTwo(double a) {
  Eigen::MatrixXd m(2, 2);
  m << 0, a, a, 0;
  return m;
}

double DenseRho(const Eigen::MatrixXd& m) {
  return m.eigenvalues().cwiseAbs().maxCoeff();
}

TEST(SpectralRadiusTest, Examples) {
  Eigen::MatrixXd d = Eigen::Vector3d(1, 3, 2).asDiagonal();
  EXPECT_NEAR(SpectralRadius(d).rho, 3.0, 1e-10);
  EXPECT_FALSE(SpectralRadius(d).irreducible);
  EXPECT_NEAR(SpectralRadius(TwoByTwo(0.4)).rho, 0.4, 1e-10);
  EXPECT_TRUE(SpectralRadius(TwoByTwo(0.4)).irreducible);
  EXPECT_NEAR(SpectralRadius(Eigen::MatrixXd::Identity(5, 5)).rho, 1.0, 1e-10);
  EXPECT_EQ(SpectralRadius(Eigen::MatrixXd::Zero(3, 3)).rho, 0.0);
}

TEST(SpectralRadiusTest, MatchesDenseEigensolver) {
  std::mt19937_64 rng(123);
  for (int k = 0; k < 200; ++k) {
    const Eigen::MatrixXd m = RandomNonnegative(1 + k % 8, rng);
    const double expected = DenseRho(m);
    const auto got = SpectralRadius(m);
    EXPECT_TRUE(got.converged);
    EXPECT_NEAR(got.rho, expected, 1e-8 * std::max(expected, 1.0)) << "case " << k;
  }
}

TEST(SpectralRadiusTest, ReducibleInputsStillConverge) {
  // Block upper triangular, dominant eigenvalue in the lower block.
  Eigen::MatrixXd m(4, 4);
  m << 0, 1, 5, 0,
       1, 0, 0, 5,
       0, 0, 0, 2,
       0, 0, 2, 0;
  EXPECT_FALSE(IsIrreducible(m));
  EXPECT_NEAR(SpectralRadius(m).rho, 2.0, 1e-8);
  // Periodic (bipartite) structure: eigenvalues +-1.
  EXPECT_NEAR(SpectralRadius(TwoByTwo(1.0)).rho, 1.0, 1e-10);
}

TEST(IrreducibilityTest, StrongConnectivity) {
  Eigen::MatrixXd cycle = Eigen::MatrixXd::Zero(3, 3);
  cycle(0, 1) = cycle(1, 2) = cycle(2, 0) = 1.0;
  EXPECT_TRUE(IsIrreducible(cycle));
  cycle(2, 0) = 0.0;
  EXPECT_FALSE(IsIrreducible(cycle));
  EXPECT_TRUE(IsIrreducible(Eigen::MatrixXd::Zero(1, 1)));
}

TEST(FeasibilityTest, TwoUserExample) {
  const FeasibilityReport r = FeasibilitySingle(TwoByTwo(0.25));
  EXPECT_NEAR(r.rho, 0.25, 1e-12);
  EXPECT_NEAR(r.gamma_max, 4.0, 1e-10);
  EXPECT_NEAR(r.r_max, std::log2(5.0), 1e-10);
  EXPECT_NEAR(r.r_max, 2.3219, 5e-5);
  EXPECT_NEAR(FeasibilitySingle(2.0 * TwoByTwo(0.25)).gamma_max, 2.0, 1e-10);
}

TEST(FeasibilityTest, ZeroMatrixGivesInfiniteSentinel) {
  const FeasibilityReport r = FeasibilitySingle(Eigen::MatrixXd::Zero(3, 3));
  EXPECT_EQ(r.rho, 0.0);
  EXPECT_TRUE(std::isinf(r.gamma_max));
  EXPECT_FALSE(r.irreducible);
}

TEST(SingleAnalyticTest, TwoUserPowers) {
  const PowerSolution s = SolveSingleAnalytic(TwoByTwo(0.25), Eigen::Vector2d(1, 1), 2.0);
  ASSERT_TRUE(s.feasible());
  EXPECT_NEAR(s.p(0), 4.0, 1e-12);
  EXPECT_NEAR(s.p(1), 4.0, 1e-12);
  EXPECT_NEAR(s.achieved_sinr(0), 2.0, 1e-12);
}

TEST(SingleAnalyticTest, InfeasibleAtBoundary) {
  const PowerSolution s = SolveSingleAnalytic(TwoByTwo(0.25), Eigen::Vector2d(1, 1), 4.0);
  EXPECT_EQ(s.status, PowerStatus::kInfeasibleSinr);
}

TEST(SingleAnalyticTest, ZeroNoiseGivesZeroPower) {
  const PowerSolution s = SolveSingleAnalytic(TwoByTwo(0.25), Eigen::Vector2d(0, 0), 2.0);
  ASSERT_TRUE(s.feasible());
  EXPECT_TRUE(s.p.isZero());
}

TEST(SingleAnalyticTest, FixedPointResidualAndMonotonicity) {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> uu(0.1, 1.0);
  for (int k = 0; k < 100; ++k) {
    const int n = 2 + k % 7;
    const Eigen::MatrixXd f = RandomNonnegative(n, rng);
    Eigen::VectorXd u(n);
    for (int i = 0; i < n; ++i) u(i) = uu(rng);
    const double rho = DenseRho(f);
    const PowerSolution a = SolveSingleAnalytic(f, u, 0.3 / rho);
    const PowerSolution b = SolveSingleAnalytic(f, u, 0.6 / rho);
    ASSERT_TRUE(a.feasible() && b.feasible());
    const Eigen::VectorXd residual = a.p - (0.3 / rho) * (f * a.p + u);
    EXPECT_LT(residual.cwiseAbs().maxCoeff(), 1e-10 * a.p.cwiseAbs().maxCoeff());
    EXPECT_TRUE((a.p.array() <= b.p.array()).all());
    for (int i = 0; i < n; ++i) EXPECT_NEAR(a.achieved_sinr(i), 0.3 / rho, 1e-8 * 0.3 / rho);
  }
}

TEST(SingleAnalyticTest, DivergesAtBoundary) {
  std::mt19937_64 rng(9);
  for (int k = 0; k < 20; ++k) {
    const int n = 2 + k % 6;
    const Eigen::MatrixXd f = RandomNonnegative(n, rng);
    const double rho = DenseRho(f);
    const Eigen::VectorXd u = Eigen::VectorXd::Ones(n);
    const auto near = SolveSingleAnalytic(f, u, 0.999 / rho);
    const auto mid = SolveSingleAnalytic(f, u, 0.5 / rho);
    ASSERT_TRUE(near.feasible() && mid.feasible());
    EXPECT_GT(near.p.norm(), 100.0 * mid.p.norm());
  }
}

TEST(SingleAnalyticTest, SpectralBoundaryProperty) {
  std::mt19937_64 rng(77);
  const OracleCheck check = CheckSpectralBoundary(rng, 100);
  EXPECT_TRUE(check.passed) << check.detail;
}

TEST(PowerCapsTest, ExceedsCapsFlagged) {
  PowerSolution s = SolveSingleAnalytic(TwoByTwo(0.25), Eigen::Vector2d(1, 1), 2.0);
  ApplyPowerCaps(s, 3.0, 0.0);
  EXPECT_EQ(s.status, PowerStatus::kExceedsCaps);
  PowerSolution t = SolveSingleAnalytic(TwoByTwo(0.25), Eigen::Vector2d(1, 1), 2.0);
  ApplyPowerCaps(t, 5.0, 0.0);
  EXPECT_TRUE(t.feasible());
}

TEST(BTildeTest, MacroOnlyReduction) {
  std::mt19937_64 rng(1);
  const Eigen::MatrixXd f = RandomNonnegative(4, rng);
  const Eigen::MatrixXd g = RandomNonnegative(4, rng);
  const BTilde bt = BuildBTilde(Eigen::VectorXd::Zero(4), f, g);
  EXPECT_TRUE(bt.a_pinv.topRows(4).isApprox(Eigen::MatrixXd::Identity(4, 4)));
  EXPECT_TRUE(bt.a_pinv.bottomRows(4).isZero());
  EXPECT_TRUE(bt.b_tilde.topLeftCorner(4, 4).isApprox(f));
  EXPECT_TRUE(bt.b_tilde.topRightCorner(4, 4).isApprox(g));
  EXPECT_TRUE(bt.b_tilde.bottomRows(4).isZero());
}

TEST(BTildeTest, IdentityCHalvesRows) {
  std::mt19937_64 rng(2);
  const Eigen::MatrixXd f = RandomNonnegative(3, rng);
  const Eigen::MatrixXd g = RandomNonnegative(3, rng);
  const BTilde bt = BuildBTilde(Eigen::VectorXd::Ones(3), f, g);
  Eigen::MatrixXd fg(3, 6);
  fg << f, g;
  EXPECT_TRUE(bt.b_tilde.topRows(3).isApprox(fg / 2.0, 1e-14));
  EXPECT_TRUE(bt.b_tilde.bottomRows(3).isApprox(fg / 2.0, 1e-14));
}

TEST(BTildeTest, DefiningIdentityAndReducedRadius) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> uc(0.0, 3.0);
  for (int k = 0; k < 50; ++k) {
    const int n = 1 + k % 8;
    const Eigen::MatrixXd f = RandomNonnegative(n, rng);
    const Eigen::MatrixXd g = RandomNonnegative(n, rng);
    Eigen::VectorXd c(n);
    for (int i = 0; i < n; ++i) c(i) = uc(rng);
    const BTilde bt = BuildBTilde(c, f, g);
    Eigen::MatrixXd a(n, 2 * n), fg(n, 2 * n);
    a << Eigen::MatrixXd::Identity(n, n), Eigen::MatrixXd(c.asDiagonal());
    fg << f, g;
    EXPECT_LT((a * bt.b_tilde - fg).cwiseAbs().maxCoeff(), 1e-12);
    const double dense = DenseRho(bt.b_tilde);
    EXPECT_NEAR(TwoLayerSpectralRadius(c, f, g).rho, dense, 1e-8 * std::max(dense, 1.0));
  }
}

TEST(TwoLayerAnalyticTest, CollapsesToSingleLayer) {
  std::mt19937_64 rng(5);
  const Eigen::MatrixXd f = RandomNonnegative(5, rng);
  const Eigen::VectorXd u = Eigen::VectorXd::Constant(5, 0.3);
  const double gamma = 0.5 / DenseRho(f);
  const auto single = SolveSingleAnalytic(f, u, gamma);
  const auto two = SolveTwoLayerAnalytic(Eigen::VectorXd::Zero(5), f,
                                         Eigen::MatrixXd::Zero(5, 5), u, gamma);
  ASSERT_TRUE(two.feasible());
  EXPECT_LT((two.p - single.p).norm(), 1e-10 * single.p.norm());
  EXPECT_TRUE(two.q.isZero());
}

TEST(TwoLayerAnalyticTest, SingleUserMinimumNorm) {
  const auto s = SolveTwoLayerAnalytic(Eigen::VectorXd::Ones(1), Eigen::MatrixXd::Zero(1, 1),
                                       Eigen::MatrixXd::Zero(1, 1),
                                       Eigen::VectorXd::Ones(1), 1.0);
  ASSERT_TRUE(s.feasible());
  EXPECT_NEAR(s.p(0), 0.5, 1e-12);
  EXPECT_NEAR(s.q(0), 0.5, 1e-12);
}

TEST(TwoLayerAnalyticTest, FixedPointResidual) {
  std::mt19937_64 rng(6);
  int checked = 0;
  for (int k = 0; k < 40; ++k) {
    const GainSystem gs = RandomGainSystem(3, true, rng);
    const double rho = TwoLayerSpectralRadius(gs.c, gs.f, gs.g_norm).rho;
    const double gamma = 0.5 / rho;
    const auto s = SolveTwoLayerAnalytic(gs.c, gs.f, gs.g_norm, gs.u, gamma);
    if (!s.feasible()) continue;
    ++checked;
    const Eigen::VectorXd lhs = s.p + gs.c.cwiseProduct(s.q);
    const Eigen::VectorXd rhs = gamma * (gs.f * s.p + gs.g_norm * s.q + gs.u);
    EXPECT_LT((lhs - rhs).cwiseAbs().maxCoeff(), 1e-10 * rhs.cwiseAbs().maxCoeff());
  }
  EXPECT_GT(checked, 20);
}

TEST(TwoLayerAnalyticTest, InfeasibleBeyondRadius) {
  std::mt19937_64 rng(7);
  const GainSystem gs = RandomGainSystem(4, true, rng);
  const double rho = TwoLayerSpectralRadius(gs.c, gs.f, gs.g_norm).rho;
  const auto s = SolveTwoLayerAnalytic(gs.c, gs.f, gs.g_norm, gs.u, 1.01 / rho);
  EXPECT_EQ(s.status, PowerStatus::kInfeasibleSinr);
}

}  // namespace
}  // namespace hetnet
