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

#include <gtest/gtest.h>

#include "hetnet/lp.h"
#include "hetnet/oracle.h"
#include "hetnet/simplex.h"
#include "hetnet/spectral.h"

namespace hetnet {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

LinearProgram MakeLp(Eigen::MatrixXd a, Eigen::VectorXd rhs, std::vector<RowSense> sense,
                     Eigen::VectorXd cost, Eigen::VectorXd lower, Eigen::VectorXd upper) {
  LinearProgram lp;
  lp.a = std::move(a);
  lp.rhs = std::move(rhs);
  lp.sense = std::move(sense);
  lp.cost = std::move(cost);
  lp.lower = std::move(lower);
  lp.upper = std::move(upper);
  return lp;
}

TEST(SimplexTest, TextbookMinimization) {
  // min -3x - 5y  s.t. x <= 4, 2y <= 12, 3x + 2y <= 18 -> (2, 6), -36.
  Eigen::MatrixXd a(3, 2);
  a << 1, 0, 0, 2, 3, 2;
  const auto lp = MakeLp(a, Eigen::Vector3d(4, 12, 18), {RowSense::kLessEqual,
                         RowSense::kLessEqual, RowSense::kLessEqual},
                         Eigen::Vector2d(-3, -5), Eigen::Vector2d(0, 0),
                         Eigen::Vector2d(kInf, kInf));
  for (auto rule : {PricingRule::kDantzig, PricingRule::kBland}) {
    SimplexOptions opt;
    opt.pricing = rule;
    const auto r = SolveLinearProgram(lp, opt);
    ASSERT_EQ(r.status, SimplexStatus::kOptimal);
    EXPECT_NEAR(r.objective, -36.0, 1e-9);
    EXPECT_NEAR(r.x(0), 2.0, 1e-9);
    EXPECT_NEAR(r.x(1), 6.0, 1e-9);
    EXPECT_LT(r.primal_residual, 1e-9);
    EXPECT_LT(r.dual_residual, 1e-9);
  }
}

TEST(SimplexTest, EqualityAndBoundsWithFlip) {
  // min x + 2y + 3z s.t. x + y + z = 5, x <= 2, y <= 2 -> (2, 2, 1), 9.
  Eigen::MatrixXd a(1, 3);
  a << 1, 1, 1;
  const auto lp = MakeLp(a, Eigen::VectorXd::Constant(1, 5.0), {RowSense::kEqual},
                         Eigen::Vector3d(1, 2, 3), Eigen::Vector3d::Zero(),
                         Eigen::Vector3d(2, 2, kInf));
  const auto r = SolveLinearProgram(lp);
  ASSERT_EQ(r.status, SimplexStatus::kOptimal);
  EXPECT_NEAR(r.objective, 9.0, 1e-9);
  EXPECT_NEAR(r.x(2), 1.0, 1e-9);
}

TEST(SimplexTest, DetectsInfeasibleAndUnbounded) {
  Eigen::MatrixXd a(2, 1);
  a << 1, 1;
  const auto infeasible =
      MakeLp(a, Eigen::Vector2d(3, 1), {RowSense::kGreaterEqual, RowSense::kLessEqual},
             Eigen::VectorXd::Ones(1), Eigen::VectorXd::Zero(1),
             Eigen::VectorXd::Constant(1, kInf));
  EXPECT_EQ(SolveLinearProgram(infeasible).status, SimplexStatus::kInfeasible);

  Eigen::MatrixXd b(1, 2);
  b << 1, -1;
  const auto unbounded =
      MakeLp(b, Eigen::VectorXd::Constant(1, 1.0), {RowSense::kLessEqual},
             Eigen::Vector2d(-1, -1), Eigen::Vector2d::Zero(),
             Eigen::Vector2d(kInf, kInf));
  EXPECT_EQ(SolveLinearProgram(unbounded).status, SimplexStatus::kUnbounded);
}

TEST(SimplexTest, NegativeRhsAndRedundantRows) {
  // -x - y >= -4 (x + y <= 4), x + y >= 1 twice; min x - y.
  Eigen::MatrixXd a(3, 2);
  a << -1, -1, 1, 1, 1, 1;
  const auto lp = MakeLp(a, Eigen::Vector3d(-4, 1, 1),
                         {RowSense::kGreaterEqual, RowSense::kGreaterEqual,
                          RowSense::kGreaterEqual},
                         Eigen::Vector2d(1, -1), Eigen::Vector2d::Zero(),
                         Eigen::Vector2d(kInf, kInf));
  const auto r = SolveLinearProgram(lp);
  ASSERT_EQ(r.status, SimplexStatus::kOptimal);
  EXPECT_NEAR(r.objective, -4.0, 1e-9);
}

TEST(SimplexTest, DegenerateCyclingExample) {
  // Beale's cycling example; Bland fallback must terminate at -0.05.
  Eigen::MatrixXd a(3, 4);
  a << 0.25, -60, -0.04, 9,
       0.5, -90, -0.02, 3,
       0, 0, 1, 0;
  const auto lp = MakeLp(a, Eigen::Vector3d(0, 0, 1),
                         {RowSense::kLessEqual, RowSense::kLessEqual, RowSense::kLessEqual},
                         Eigen::Vector4d(-0.75, 150, -0.02, 6), Eigen::Vector4d::Zero(),
                         Eigen::Vector4d::Constant(kInf));
  const auto r = SolveLinearProgram(lp);
  ASSERT_EQ(r.status, SimplexStatus::kOptimal);
  EXPECT_NEAR(r.objective, -0.05, 1e-9);
}

GainSystem TwoUserSystem() {
  Eigen::MatrixXd g(2, 2);
  g << 1, 0.25, 0.25, 1;
  return BuildGainSystem(g, Eigen::MatrixXd::Zero(2, 2), Eigen::VectorXd::Ones(2));
}

TEST(AssembleLpTest, SingleUserRow) {
  Eigen::MatrixXd g(1, 1);
  g << 1.0;
  const GainSystem gs =
      BuildGainSystem(g, Eigen::MatrixXd::Zero(1, 1), Eigen::VectorXd::Constant(1, 1e-3));
  MinPowerProblem problem{&gs, 1.0, kInf, kInf, {false}};
  const LinearProgram lp = AssembleLp(problem);
  ASSERT_EQ(lp.num_rows(), 1);
  ASSERT_EQ(lp.num_cols(), 2);
  // Undo the row scaling: p >= 1e-3.
  const double scale = lp.row_scale(0);
  EXPECT_NEAR(lp.rhs(0) * scale, 1e-3, 1e-15);
  EXPECT_NEAR(lp.a(0, 0) * scale, 1.0, 1e-15);
  EXPECT_EQ(lp.upper(1), 0.0);
  EXPECT_EQ(lp.sense[0], RowSense::kGreaterEqual);
  EXPECT_TRUE((lp.cost.array() == 1.0).all());
  const auto sol = SolveMinPower(problem);
  ASSERT_TRUE(sol.optimal());
  EXPECT_NEAR(sol.p(0), 1e-3, 1e-12);
}

TEST(AssembleLpTest, ZeroGammaGivesZeroPower) {
  const GainSystem gs = TwoUserSystem();
  MinPowerProblem problem{&gs, 0.0, kInf, kInf, {true, true}};
  const auto sol = SolveMinPower(problem);
  ASSERT_TRUE(sol.optimal());
  EXPECT_EQ(sol.objective, 0.0);
}

TEST(SolveMinPowerTest, TwoUserExample) {
  const GainSystem gs = TwoUserSystem();
  MinPowerProblem problem{&gs, 2.0, kInf, kInf, {false, false}};
  const auto sol = SolveMinPower(problem);
  ASSERT_TRUE(sol.optimal());
  EXPECT_NEAR(sol.p(0), 4.0, 1e-9);
  EXPECT_NEAR(sol.p(1), 4.0, 1e-9);
  EXPECT_NEAR(sol.objective, 8.0, 1e-9);
  EXPECT_TRUE(VerifySolution(problem, sol).ok());

  problem.p_max = 3.0;
  EXPECT_EQ(SolveMinPower(problem).status, LpStatus::kInfeasible);
}

TEST(SolveMinPowerTest, MatchesAnalyticOnRandomInstances) {
  std::mt19937_64 rng(31);
  const OracleCheck check = CheckLpVersusAnalytic(rng, 100);
  EXPECT_TRUE(check.passed) << check.detail;
}

TEST(SolveMinPowerTest, ConstraintsTightWithoutCaps) {
  std::mt19937_64 rng(32);
  const OracleCheck check = CheckFixedPointTightness(rng, 100);
  EXPECT_TRUE(check.passed) << check.detail;
}

TEST(SolveMinPowerTest, MonotoneInGammaAndMask) {
  std::mt19937_64 rng(33);
  for (int k = 0; k < 30; ++k) {
    const GainSystem gs = RandomGainSystem(2 + k % 8, true, rng);
    const int n = gs.n();
    const double rho = SpectralRadius(gs.f).rho;
    MinPowerProblem lo{&gs, 0.3 / rho, 5.0, 1.0, std::vector<bool>(n, true)};
    MinPowerProblem hi = lo;
    hi.gamma = 0.6 / rho;
    const auto a = SolveMinPower(lo), b = SolveMinPower(hi);
    if (a.optimal() && b.optimal()) EXPECT_LE(a.objective, b.objective * (1 + 1e-9));

    MinPowerProblem half = lo;
    for (int i = 0; i < n; i += 2) half.lowpower_active[i] = false;
    const auto c = SolveMinPower(half);
    if (a.optimal() && c.optimal()) EXPECT_LE(a.objective, c.objective * (1 + 1e-9));
    if (c.optimal()) {
      for (int i = 0; i < n; i += 2) EXPECT_EQ(c.q(i), 0.0);
      EXPECT_TRUE(VerifySolution(half, c).ok());
    }
  }
}

TEST(SolveMinPowerTest, ScaleInvariant) {
  std::mt19937_64 rng(34);
  for (int k = 0; k < 20; ++k) {
    const GainSystem gs = RandomGainSystem(2 + k % 6, true, rng);
    const GainSystem scaled = BuildGainSystem(gs.g * 1e-12, gs.h * 1e-12, gs.sigma2 * 1e-12);
    const double rho = TwoLayerSpectralRadius(gs.c, gs.f, gs.g_norm).rho;
    const std::vector<bool> mask(gs.n(), true);
    const auto a = SolveMinPower({&gs, 0.5 / rho, kInf, kInf, mask});
    const auto b = SolveMinPower({&scaled, 0.5 / rho, kInf, kInf, mask});
    ASSERT_TRUE(a.optimal() && b.optimal());
    EXPECT_NEAR(a.objective, b.objective, 1e-8 * a.objective);
  }
}

TEST(VerifySolutionTest, DetectsPerturbationAndZeroVector) {
  const GainSystem gs = TwoUserSystem();
  MinPowerProblem problem{&gs, 2.0, kInf, kInf, {false, false}};
  LpSolution sol = SolveMinPower(problem);
  ASSERT_TRUE(VerifySolution(problem, sol).ok());
  LpSolution bad = sol;
  bad.p(1) *= 0.9;
  const auto report = VerifySolution(problem, bad);
  EXPECT_FALSE(report.sinr_ok);
  ASSERT_EQ(report.sinr_violations.size(), 1u);
  EXPECT_EQ(report.sinr_violations[0], 1);

  LpSolution zero = sol;
  zero.p.setZero();
  EXPECT_FALSE(VerifySolution(problem, zero).ok());

  LpSolution masked = sol;
  masked.q(0) = 0.1;
  EXPECT_FALSE(VerifySolution(problem, masked).mask_ok);
}

TEST(VerifySolutionTest, NonMinimalPointFailsProbe) {
  const GainSystem gs = TwoUserSystem();
  MinPowerProblem problem{&gs, 2.0, kInf, kInf, {false, false}};
  LpSolution sol = SolveMinPower(problem);
  sol.p *= 1.5;
  const auto report = VerifySolution(problem, sol);
  EXPECT_TRUE(report.sinr_ok);
  EXPECT_FALSE(report.locally_minimal);
}

}  // namespace
}  // namespace hetnet
