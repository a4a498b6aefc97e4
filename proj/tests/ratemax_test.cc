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

#include "hetnet/drop.h"
#include "hetnet/lp.h"
#include "hetnet/oracle.h"
#include "hetnet/ratemax.h"

namespace hetnet {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

GainSystem Diagonal(double g, double sigma2) {
  Eigen::MatrixXd gm(1, 1);
  gm << g;
  return BuildGainSystem(gm, Eigen::MatrixXd::Zero(1, 1),
                         Eigen::VectorXd::Constant(1, sigma2));
}

TEST(ScenarioTest, NamesRoundTrip) {
  for (auto kind : {ScenarioKind::kSingleLayer, ScenarioKind::kMacroMicro,
                    ScenarioKind::kMacroRelay, ScenarioKind::kUncoordinatedSingle,
                    ScenarioKind::kUncoordinatedMicro, ScenarioKind::kUncoordinatedRelay}) {
    EXPECT_EQ(ParseScenario(ScenarioName(kind)), kind);
  }
  EXPECT_FALSE(ParseScenario("bogus").has_value());
  EXPECT_TRUE(UsesRelays(ScenarioKind::kUncoordinatedRelay));
  EXPECT_FALSE(UsesLowPower(ScenarioKind::kUncoordinatedSingle));
  EXPECT_TRUE(IsUncoordinated(ScenarioKind::kUncoordinatedMicro));
}

TEST(DiscardTest, KeepCount) {
  EXPECT_EQ(KeepCount(1.0, 57), 57);
  EXPECT_EQ(KeepCount(0.8, 57), 46);
  EXPECT_EQ(KeepCount(0.85, 57), 49);
  EXPECT_EQ(KeepCount(0.9, 57), 52);
  EXPECT_EQ(KeepCount(0.95, 57), 55);
  EXPECT_EQ(KeepCount(0.001, 57), 1);
  EXPECT_THROW(KeepCount(0.0, 57), std::invalid_argument);
  EXPECT_THROW(KeepCount(-0.5, 57), std::invalid_argument);
}

class DropFixture : public ::testing::Test {
 protected:
  void SetUp() override {
    auto rng = DropRng(11, 0);
    drop_ = GenerateDrop(layout_, ChannelModel::Cost231Pair(), {}, rng);
    p_full_ = Eigen::VectorXd::Constant(57, DbmToWatts(43.0));
    q_zero_ = Eigen::VectorXd::Zero(57);
  }
  Layout layout_ = BuildLayout(1000.0, 2);
  Drop drop_;
  Eigen::VectorXd p_full_, q_zero_;
};

TEST_F(DropFixture, DiscardKeepsTheRightCount) {
  EXPECT_EQ(DiscardUsers(drop_.gains, 1.0, p_full_, q_zero_).size(), 57u);
  EXPECT_EQ(DiscardUsers(drop_.gains, 0.8, p_full_, q_zero_).size(), 46u);
  EXPECT_THROW(DiscardUsers(drop_.gains, 0.0, p_full_, q_zero_), std::invalid_argument);
}

TEST_F(DropFixture, DiscardRemovesWorstAndNeverHurtsSurvivors) {
  const std::vector<int> order = DiscardOrder(drop_.gains, p_full_, q_zero_);
  ASSERT_EQ(order.size(), 57u);
  std::vector<int> active(57);
  for (int i = 0; i < 57; ++i) active[i] = i;
  for (int step = 0; step < 15; ++step) {
    const GainSystem sub = RestrictGainSystem(drop_.gains, active);
    const int m = sub.n();
    const Eigen::VectorXd sinr =
        ComputeSinr(sub, p_full_.head(m), q_zero_.head(m));
    Eigen::Index worst;
    sinr.minCoeff(&worst);
    EXPECT_EQ(active[worst], order[step]);
    std::vector<int> next = active;
    next.erase(next.begin() + worst);
    const GainSystem after = RestrictGainSystem(drop_.gains, next);
    const Eigen::VectorXd sinr_after =
        ComputeSinr(after, p_full_.head(m - 1), q_zero_.head(m - 1));
    for (int a = 0, b = 0; a < m; ++a) {
      if (a == worst) continue;
      EXPECT_GE(sinr_after(b), sinr(a) * (1 - 1e-12));
      ++b;
    }
    active = next;
  }
}

TEST_F(DropFixture, RelayDecodeSetLimits) {
  const std::vector<int> active = DiscardUsers(drop_.gains, 0.9, p_full_, q_zero_);
  const RelayLinks links = RestrictRelayLinks(drop_, active);
  std::vector<bool> present(active.size(), true);
  present[0] = false;
  const auto all = RelayDecodeSet(links, present, p_full_(0), 0.0);
  EXPECT_EQ(all, present);
  const auto none = RelayDecodeSet(links, present, p_full_(0), 1e6);
  for (bool b : none) EXPECT_FALSE(b);
  // Monotone in the rate.
  const auto lo = RelayDecodeSet(links, present, p_full_(0), 0.5);
  const auto hi = RelayDecodeSet(links, present, p_full_(0), 1.5);
  for (std::size_t j = 0; j < lo.size(); ++j) EXPECT_TRUE(lo[j] || !hi[j]);
}

TEST_F(DropFixture, ScenarioOrderingsOnOneDrop) {
  ScenarioParams params{DbmToWatts(43.0), DbmToWatts(33.0), DbmToWatts(30.0), {}};
  for (double load : {0.8, 0.9, 1.0}) {
    const auto active = DiscardUsers(drop_.gains, load, p_full_, q_zero_);
    const GainSystem gs = RestrictGainSystem(drop_.gains, active);
    auto run = [&](ScenarioKind kind) {
      return RunScenario(drop_, active, gs, kind, params);
    };
    const RateResult single = run(ScenarioKind::kSingleLayer);
    const RateResult micro = run(ScenarioKind::kMacroMicro);
    const RateResult relay = run(ScenarioKind::kMacroRelay);
    EXPECT_LE(single.common_rate, micro.common_rate + 1e-12);
    EXPECT_LE(single.common_rate, relay.common_rate + 1e-12);
    EXPECT_LE(relay.common_rate, micro.common_rate + 1e-12);
    const double dr = params.search.dr;
    EXPECT_LE(run(ScenarioKind::kUncoordinatedSingle).common_rate,
              single.common_rate + dr);
    EXPECT_LE(run(ScenarioKind::kUncoordinatedMicro).common_rate,
              micro.common_rate + dr);
    EXPECT_LE(run(ScenarioKind::kUncoordinatedRelay).common_rate,
              relay.common_rate + dr);

    // Powers inside the caps and silent relays outside the decode set.
    EXPECT_LE(micro.powers.p.maxCoeff(), params.p_max * (1 + 1e-9));
    EXPECT_LE(micro.powers.q.maxCoeff(), params.q_max_micro * (1 + 1e-9));
    EXPECT_GE(micro.powers.q.minCoeff(), -1e-12);
    EXPECT_LE(relay.powers.q.maxCoeff(), params.q_max_relay * (1 + 1e-9));
    std::vector<bool> on(active.size(), false);
    for (int j : relay.active_relays) on[j] = true;
    for (std::size_t j = 0; j < on.size(); ++j) {
      if (!on[j]) EXPECT_EQ(relay.powers.q(j), 0.0);
    }
  }
}

TEST_F(DropFixture, GridSoundness) {
  const double p_max = DbmToWatts(43.0);
  const auto active = DiscardUsers(drop_.gains, 0.9, p_full_, q_zero_);
  const GainSystem gs = RestrictGainSystem(drop_.gains, active);
  const RateResult r = MaximizeTwoLayer(gs, {p_max, DbmToWatts(33.0)},
                                        ScenarioKind::kMacroMicro,
                                        std::vector<bool>(gs.n(), true), nullptr);
  ASSERT_GT(r.common_rate, 0.0);
  auto solve = [&](double rate) {
    MinPowerProblem problem{&gs, std::exp2(rate) - 1.0, p_max, DbmToWatts(33.0),
                            std::vector<bool>(gs.n(), true)};
    return SolveMinPower(problem);
  };
  EXPECT_TRUE(solve(r.common_rate).optimal());
  EXPECT_EQ(solve(r.common_rate + 0.1).status, LpStatus::kInfeasible);

  const RateResult s = MaximizeSingle(gs, p_max);
  MinPowerProblem next{&gs, std::exp2(s.common_rate + 0.1) - 1.0, p_max, 0.0,
                       std::vector<bool>(gs.n(), false)};
  EXPECT_EQ(SolveMinPower(next).status, LpStatus::kInfeasible);
}

TEST_F(DropFixture, BisectionMatchesLinearScan) {
  ScenarioParams linear{DbmToWatts(43.0), DbmToWatts(33.0), DbmToWatts(30.0), {}};
  ScenarioParams bisect = linear;
  bisect.search.bisection = true;
  for (double load : {0.8, 1.0}) {
    const auto active = DiscardUsers(drop_.gains, load, p_full_, q_zero_);
    const GainSystem gs = RestrictGainSystem(drop_.gains, active);
    for (auto kind : {ScenarioKind::kSingleLayer, ScenarioKind::kMacroMicro,
                      ScenarioKind::kMacroRelay}) {
      EXPECT_EQ(RunScenario(drop_, active, gs, kind, linear).common_rate,
                RunScenario(drop_, active, gs, kind, bisect).common_rate);
    }
  }
}

TEST(MaximizeSingleTest, SingleUserCapacity) {
  const GainSystem gs = Diagonal(1.0, 1.0);
  const double p_max = 1e3;
  const double capacity = std::log2(1.0 + p_max);  // 9.967...
  const RateResult r = MaximizeSingle(gs, p_max);
  EXPECT_NEAR(r.common_rate, 9.9, 1e-9);
  EXPECT_LT(r.common_rate, capacity);
  EXPECT_GT(r.common_rate + 0.1, capacity);
}

TEST(MaximizeSingleTest, ZeroPowerFlagged) {
  const RateResult r = MaximizeSingle(Diagonal(1.0, 1.0), 0.0);
  EXPECT_EQ(r.common_rate, 0.0);
  EXPECT_TRUE(r.infeasible_at_start);
}

TEST(MaximizeSingleTest, MatchesLpSearchOnRandomInstances) {
  std::mt19937_64 rng(12);
  for (int k = 0; k < 30; ++k) {
    const GainSystem gs = RandomGainSystem(2 + k % 8, false, rng);
    const double p_max = 0.5 + k * 0.1;
    const RateResult r = MaximizeSingle(gs, p_max);
    // Independent scan with the LP.
    double expected = 0.0;
    for (int step = 0; step < 200; ++step) {
      const double rate = 0.1 + 0.1 * step;
      MinPowerProblem problem{&gs, std::exp2(rate) - 1.0, p_max, 0.0,
                              std::vector<bool>(gs.n(), false)};
      if (!SolveMinPower(problem).optimal()) break;
      expected = rate;
    }
    EXPECT_NEAR(r.common_rate, expected, 1e-9) << "case " << k;
  }
}

TEST(MaximizeTwoLayerTest, DeadLowPowerLayerCollapses) {
  std::mt19937_64 rng(13);
  const OracleCheck check = CheckLayerCollapse(rng, 30);
  EXPECT_TRUE(check.passed) << check.detail;
}

TEST(UncoordinatedTest, SingleUserNoInterference) {
  const GainSystem gs = Diagonal(2.0, 0.5);
  const RateResult r = UncoordinatedRate(gs, {3.0, 1.0}, ScenarioKind::kUncoordinatedSingle,
                                         {false}, nullptr);
  EXPECT_NEAR(r.common_rate, std::log2(1.0 + 3.0 * 2.0 / 0.5), 1e-12);
}

TEST(UncoordinatedTest, InterferenceLimitedSymmetricPair) {
  Eigen::MatrixXd g(2, 2);
  g << 1, 0.1, 0.1, 1;
  const GainSystem gs =
      BuildGainSystem(g, Eigen::MatrixXd::Zero(2, 2), Eigen::VectorXd::Constant(2, 1e-12));
  const RateResult r = UncoordinatedRate(gs, {1.0, 1.0}, ScenarioKind::kUncoordinatedSingle,
                                         {false, false}, nullptr);
  EXPECT_NEAR(r.common_rate, std::log2(11.0), 1e-9);
}

}  // namespace
}  // namespace hetnet
