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

#ifndef HETNET_SIMPLEX_H_
#define HETNET_SIMPLEX_H_

#include <string>
#include <vector>

#include <Eigen/Dense>

namespace hetnet {

enum class RowSense { kGreaterEqual, kLessEqual, kEqual };

// min cost^T x  s.t.  a x (sense) rhs,  lower <= x <= upper.
// Lower bounds must be finite; upper bounds may be +inf.
struct LinearProgram {
  std::string name = "LP";
  Eigen::MatrixXd a;
  Eigen::VectorXd rhs;
  std::vector<RowSense> sense;
  Eigen::VectorXd cost;
  Eigen::VectorXd lower;
  Eigen::VectorXd upper;
  std::vector<std::string> row_names;
  std::vector<std::string> col_names;
  // Factor each row was divided by during assembly (empty when unscaled).
  Eigen::VectorXd row_scale;

  int num_rows() const { return static_cast<int>(a.rows()); }
  int num_cols() const { return static_cast<int>(a.cols()); }
};

enum class SimplexStatus {
  kOptimal,
  kInfeasible,
  kUnbounded,
  kIterationLimit,
  kNumericalFailure,
};

const char* SimplexStatusName(SimplexStatus status);

enum class PricingRule { kDantzig, kBland };

struct SimplexOptions {
  double feasibility_tol = 1e-9;  // phase-1 objective threshold
  double optimality_tol = 1e-9;
  double pivot_tol = 1e-11;
  int max_iterations = 50000;
  PricingRule pricing = PricingRule::kDantzig;
  // Dantzig pricing falls back to Bland's rule after this many consecutive
  // degenerate pivots.
  int degenerate_streak_limit = 50;
};

struct SimplexResult {
  SimplexStatus status = SimplexStatus::kNumericalFailure;
  Eigen::VectorXd x;
  double objective = 0.0;
  Eigen::VectorXd duals;  // one per row, sign convention of the input rows
  int iterations = 0;
  // Largest row or bound violation of x, and largest sign violation of the
  // reduced costs recomputed from the final basis.
  double primal_residual = 0.0;
  double dual_residual = 0.0;
};

// Two-phase primal simplex on a dense tableau with implicit upper bounds.
SimplexResult SolveLinearProgram(const LinearProgram& lp,
                                 const SimplexOptions& options = {});

}  // namespace hetnet

#endif  // HETNET_SIMPLEX_H_
