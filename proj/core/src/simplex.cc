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

#include "hetnet/simplex.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace hetnet {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

enum class VarState { kBasic, kAtLower, kAtUpper };
enum class PhaseOutcome { kOptimal, kUnbounded, kIterationLimit };

// Columns are laid out as [structural | slack | artificial]. Every row owns
// one artificial, which forms the starting basis.
class BoundedSimplex {
 public:
  BoundedSimplex(const LinearProgram& lp, const SimplexOptions& options)
      : lp_(lp), options_(options) {}

  SimplexResult Solve();

 private:
  void Setup();
  void Refactor();
  PhaseOutcome RunPhase(const Eigen::VectorXd& cost);
  void Pivot(int row, int col);
  double NonbasicValue(int col) const {
    return state_[col] == VarState::kAtUpper ? ub_[col] : 0.0;
  }
  bool IsArtificial(int col) const { return col >= num_structural_ + num_slack_; }
  SimplexResult Finish(SimplexStatus status, const Eigen::VectorXd& cost);

  const LinearProgram& lp_;
  const SimplexOptions& options_;

  int rows_ = 0;
  int num_structural_ = 0;
  int num_slack_ = 0;
  int cols_ = 0;
  Eigen::MatrixXd aug_;   // equality-form constraint matrix
  Eigen::VectorXd b_;     // equality-form right-hand side (>= 0)
  Eigen::VectorXd row_sign_;
  Eigen::MatrixXd tab_;   // B^-1 aug_
  Eigen::VectorXd beta_;  // basic values
  Eigen::VectorXd ub_;    // shifted upper bounds
  Eigen::VectorXd d_;     // reduced costs
  std::vector<int> basic_;
  std::vector<VarState> state_;
  std::vector<bool> excluded_;
  int iterations_ = 0;
};

void BoundedSimplex::Setup() {
  rows_ = lp_.num_rows();
  num_structural_ = lp_.num_cols();
  num_slack_ = 0;
  for (RowSense s : lp_.sense) {
    if (s != RowSense::kEqual) ++num_slack_;
  }
  cols_ = num_structural_ + num_slack_ + rows_;

  aug_ = Eigen::MatrixXd::Zero(rows_, cols_);
  aug_.leftCols(num_structural_) = lp_.a;
  b_ = lp_.rhs - lp_.a * lp_.lower;
  int slack = num_structural_;
  for (int i = 0; i < rows_; ++i) {
    if (lp_.sense[i] == RowSense::kGreaterEqual) aug_(i, slack++) = -1.0;
    if (lp_.sense[i] == RowSense::kLessEqual) aug_(i, slack++) = 1.0;
  }
  row_sign_ = Eigen::VectorXd::Ones(rows_);
  for (int i = 0; i < rows_; ++i) {
    if (b_(i) < 0.0) {
      row_sign_(i) = -1.0;
      aug_.row(i) *= -1.0;
      b_(i) = -b_(i);
    }
    aug_(i, num_structural_ + num_slack_ + i) = 1.0;
  }

  ub_ = Eigen::VectorXd::Constant(cols_, kInf);
  ub_.head(num_structural_) = lp_.upper - lp_.lower;
  state_.assign(cols_, VarState::kAtLower);
  excluded_.assign(cols_, false);
  basic_.resize(rows_);
  for (int i = 0; i < rows_; ++i) {
    basic_[i] = num_structural_ + num_slack_ + i;
    state_[basic_[i]] = VarState::kBasic;
  }
  tab_ = aug_;
  beta_ = b_;
}

void BoundedSimplex::Refactor() {
  Eigen::MatrixXd basis(rows_, rows_);
  for (int i = 0; i < rows_; ++i) basis.col(i) = aug_.col(basic_[i]);
  Eigen::VectorXd rhs = b_;
  for (int j = 0; j < cols_; ++j) {
    if (state_[j] == VarState::kAtUpper) rhs -= ub_[j] * aug_.col(j);
  }
  const Eigen::PartialPivLU<Eigen::MatrixXd> lu(basis);
  tab_ = lu.solve(aug_);
  beta_ = lu.solve(rhs);
}

void BoundedSimplex::Pivot(int row, int col) {
  const double pivot = tab_(row, col);
  tab_.row(row) /= pivot;
  Eigen::VectorXd column = tab_.col(col);
  column(row) = 0.0;
  tab_.noalias() -= column * tab_.row(row);
  d_ -= d_(col) * tab_.row(row).transpose();
  tab_.col(col).setZero();
  tab_(row, col) = 1.0;
  d_(col) = 0.0;
}

PhaseOutcome BoundedSimplex::RunPhase(const Eigen::VectorXd& cost) {
  Eigen::VectorXd cost_basic(rows_);
  for (int i = 0; i < rows_; ++i) cost_basic(i) = cost(basic_[i]);
  d_ = cost - tab_.transpose() * cost_basic;

  bool bland = options_.pricing == PricingRule::kBland;
  int degenerate_streak = 0;
  for (;;) {
    if (iterations_ >= options_.max_iterations) {
      return PhaseOutcome::kIterationLimit;
    }
    int enter = -1;
    double best = 0.0;
    for (int j = 0; j < cols_; ++j) {
      if (excluded_[j] || state_[j] == VarState::kBasic || !(ub_[j] > 0.0)) {
        continue;
      }
      const double dj = d_(j);
      const bool improving =
          (state_[j] == VarState::kAtLower && dj < -options_.optimality_tol) ||
          (state_[j] == VarState::kAtUpper && dj > options_.optimality_tol);
      if (!improving) continue;
      if (bland) {
        enter = j;
        break;
      }
      if (std::abs(dj) > best) {
        best = std::abs(dj);
        enter = j;
      }
    }
    if (enter < 0) return PhaseOutcome::kOptimal;

    const double dir = state_[enter] == VarState::kAtLower ? 1.0 : -1.0;
    double step = kInf;
    int leave_row = -1;
    bool leave_to_upper = false;
    double leave_alpha = 0.0;
    for (int i = 0; i < rows_; ++i) {
      const double alpha = tab_(i, enter);
      const double rate = -dir * alpha;
      double limit;
      bool to_upper;
      if (rate < -options_.pivot_tol) {
        limit = std::max(beta_(i), 0.0) / -rate;
        to_upper = false;
      } else if (rate > options_.pivot_tol && std::isfinite(ub_[basic_[i]])) {
        limit = std::max(ub_[basic_[i]] - beta_(i), 0.0) / rate;
        to_upper = true;
      } else {
        continue;
      }
      bool take;
      const double tie_eps = 1e-12 * std::max(1.0, std::abs(step));
      if (leave_row < 0 || limit < step - tie_eps) {
        take = true;
      } else if (limit <= step + tie_eps) {
        take = bland ? basic_[i] < basic_[leave_row]
                     : std::abs(alpha) > std::abs(leave_alpha);
      } else {
        take = false;
      }
      if (take) {
        step = limit;
        leave_row = i;
        leave_to_upper = to_upper;
        leave_alpha = alpha;
      }
    }
    if (ub_[enter] <= step) {
      // The entering variable reaches its own opposite bound first.
      leave_row = -1;
      step = ub_[enter];
    }
    if (leave_row < 0 && !std::isfinite(step)) return PhaseOutcome::kUnbounded;

    beta_.noalias() += (-dir * step) * tab_.col(enter);
    if (leave_row < 0) {
      state_[enter] = state_[enter] == VarState::kAtLower ? VarState::kAtUpper
                                                          : VarState::kAtLower;
    } else {
      const int leaving = basic_[leave_row];
      state_[leaving] = leave_to_upper ? VarState::kAtUpper : VarState::kAtLower;
      beta_(leave_row) = dir > 0 ? step : ub_[enter] - step;
      Pivot(leave_row, enter);
      basic_[leave_row] = enter;
      state_[enter] = VarState::kBasic;
    }
    ++iterations_;

    if (step <= 1e-12) {
      if (++degenerate_streak > options_.degenerate_streak_limit) bland = true;
    } else {
      degenerate_streak = 0;
    }
  }
}

SimplexResult BoundedSimplex::Finish(SimplexStatus status,
                                     const Eigen::VectorXd& cost) {
  SimplexResult result;
  result.status = status;
  result.iterations = iterations_;
  if (status != SimplexStatus::kOptimal) return result;

  Refactor();
  Eigen::VectorXd values(cols_);
  for (int j = 0; j < cols_; ++j) values(j) = NonbasicValue(j);
  for (int i = 0; i < rows_; ++i) values(basic_[i]) = beta_(i);

  result.x = lp_.lower + values.head(num_structural_);
  result.x = result.x.cwiseMax(lp_.lower).cwiseMin(lp_.upper);
  result.objective = lp_.cost.dot(result.x);

  double primal = 0.0;
  const Eigen::VectorXd activity = lp_.a * result.x;
  for (int i = 0; i < rows_; ++i) {
    const double scale = std::max(1.0, std::abs(lp_.rhs(i)));
    double violation = 0.0;
    switch (lp_.sense[i]) {
      case RowSense::kGreaterEqual:
        violation = lp_.rhs(i) - activity(i);
        break;
      case RowSense::kLessEqual:
        violation = activity(i) - lp_.rhs(i);
        break;
      case RowSense::kEqual:
        violation = std::abs(activity(i) - lp_.rhs(i));
        break;
    }
    primal = std::max(primal, violation / scale);
  }
  result.primal_residual = primal;

  Eigen::MatrixXd basis(rows_, rows_);
  Eigen::VectorXd cost_basic(rows_);
  for (int i = 0; i < rows_; ++i) {
    basis.col(i) = aug_.col(basic_[i]);
    cost_basic(i) = cost(basic_[i]);
  }
  const Eigen::VectorXd y = basis.transpose().partialPivLu().solve(cost_basic);
  const Eigen::VectorXd reduced = cost - aug_.transpose() * y;
  double dual = 0.0;
  for (int j = 0; j < cols_; ++j) {
    if (excluded_[j] || !(ub_[j] > 0.0)) continue;
    switch (state_[j]) {
      case VarState::kBasic:
        dual = std::max(dual, std::abs(reduced(j)));
        break;
      case VarState::kAtLower:
        dual = std::max(dual, -reduced(j));
        break;
      case VarState::kAtUpper:
        dual = std::max(dual, reduced(j));
        break;
    }
  }
  result.dual_residual = dual;
  result.duals = y.cwiseProduct(row_sign_);
  return result;
}

SimplexResult BoundedSimplex::Solve() {
  if (lp_.a.cols() != lp_.cost.size() || lp_.lower.size() != lp_.cost.size() ||
      lp_.upper.size() != lp_.cost.size() || lp_.rhs.size() != lp_.a.rows() ||
      static_cast<Eigen::Index>(lp_.sense.size()) != lp_.a.rows()) {
    throw std::invalid_argument("inconsistent linear program dimensions");
  }
  if (!lp_.lower.allFinite()) {
    throw std::invalid_argument("lower bounds must be finite");
  }
  if ((lp_.upper.array() < lp_.lower.array()).any()) {
    SimplexResult result;
    result.status = SimplexStatus::kInfeasible;
    return result;
  }
  Setup();

  Eigen::VectorXd phase1_cost = Eigen::VectorXd::Zero(cols_);
  phase1_cost.tail(rows_).setOnes();
  switch (RunPhase(phase1_cost)) {
    case PhaseOutcome::kIterationLimit:
      return Finish(SimplexStatus::kIterationLimit, phase1_cost);
    case PhaseOutcome::kUnbounded:
      return Finish(SimplexStatus::kNumericalFailure, phase1_cost);
    case PhaseOutcome::kOptimal:
      break;
  }
  Refactor();
  double infeasibility = 0.0;
  for (int i = 0; i < rows_; ++i) {
    if (IsArtificial(basic_[i])) infeasibility += std::max(beta_(i), 0.0);
  }
  if (infeasibility > options_.feasibility_tol) {
    SimplexResult result;
    result.status = SimplexStatus::kInfeasible;
    result.iterations = iterations_;
    return result;
  }

  // Swap zero-level artificials out of the basis where the row allows it.
  for (int r = 0; r < rows_; ++r) {
    if (!IsArtificial(basic_[r])) continue;
    int best = -1;
    double best_abs = 1e-9;
    for (int j = 0; j < num_structural_ + num_slack_; ++j) {
      if (state_[j] == VarState::kBasic || !(ub_[j] > 0.0)) continue;
      if (std::abs(tab_(r, j)) > best_abs) {
        best_abs = std::abs(tab_(r, j));
        best = j;
      }
    }
    if (best < 0) continue;
    d_ = Eigen::VectorXd::Zero(cols_);
    state_[basic_[r]] = VarState::kAtLower;
    Pivot(r, best);
    basic_[r] = best;
    state_[best] = VarState::kBasic;
  }
  for (int j = num_structural_ + num_slack_; j < cols_; ++j) {
    if (state_[j] == VarState::kBasic) {
      ub_[j] = 0.0;  // redundant row: artificial pinned at zero
    } else {
      excluded_[j] = true;
    }
  }
  Refactor();

  Eigen::VectorXd phase2_cost = Eigen::VectorXd::Zero(cols_);
  phase2_cost.head(num_structural_) = lp_.cost;
  switch (RunPhase(phase2_cost)) {
    case PhaseOutcome::kIterationLimit:
      return Finish(SimplexStatus::kIterationLimit, phase2_cost);
    case PhaseOutcome::kUnbounded:
      return Finish(SimplexStatus::kUnbounded, phase2_cost);
    case PhaseOutcome::kOptimal:
      break;
  }
  SimplexResult result = Finish(SimplexStatus::kOptimal, phase2_cost);
  result.objective = lp_.cost.dot(result.x);
  return result;
}

}  // namespace

const char* SimplexStatusName(SimplexStatus status) {
  switch (status) {
    case SimplexStatus::kOptimal:
      return "optimal";
    case SimplexStatus::kInfeasible:
      return "infeasible";
    case SimplexStatus::kUnbounded:
      return "unbounded";
    case SimplexStatus::kIterationLimit:
      return "iteration_limit";
    case SimplexStatus::kNumericalFailure:
      return "numerical_failure";
  }
  return "unknown";
}

SimplexResult SolveLinearProgram(const LinearProgram& lp,
                                 const SimplexOptions& options) {
  BoundedSimplex solver(lp, options);
  return solver.Solve();
}

}  // namespace hetnet
