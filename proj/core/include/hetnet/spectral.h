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

#ifndef HETNET_SPECTRAL_H_
#define HETNET_SPECTRAL_H_

#include <string>

#include <Eigen/Dense>

namespace hetnet {

struct SpectralRadiusResult {
  double rho = 0.0;
  // Strong connectivity of the nonzero pattern. When false the Perron
  // positivity guarantees are not verified, although rho is still reported.
  bool irreducible = false;
  bool converged = false;
  int iterations = 0;
};

// Irreducibility test for a square matrix: the directed graph with an edge
// i -> j whenever m(i, j) != 0 (i != j) must be strongly connected.
bool IsIrreducible(const Eigen::MatrixXd& m);

// Dominant eigenvalue of a nonnegative square matrix by shifted power
// iteration. Stops when the Collatz-Wielandt bounds (or, for reducible input,
// successive Rayleigh estimates) agree to `rel_tol`.
SpectralRadiusResult SpectralRadius(const Eigen::MatrixXd& m,
                                    double rel_tol = 1e-10,
                                    int max_iterations = 100000);

struct FeasibilityReport {
  double rho = 0.0;
  double gamma_max = 0.0;  // 1 / rho, +inf when rho == 0
  double r_max = 0.0;      // log2(1 + gamma_max)
  bool irreducible = false;
};

FeasibilityReport FeasibilityFromRho(double rho, bool irreducible);
FeasibilityReport FeasibilitySingle(const Eigen::MatrixXd& f);

enum class PowerStatus { kFeasible, kInfeasibleSinr, kExceedsCaps };

const char* PowerStatusName(PowerStatus status);

struct PowerSolution {
  Eigen::VectorXd p;  // macro powers, watts
  Eigen::VectorXd q;  // low-power powers, watts (empty for single-layer)
  PowerStatus status = PowerStatus::kInfeasibleSinr;
  Eigen::VectorXd achieved_sinr;
  std::string diagnostic;

  bool feasible() const { return status == PowerStatus::kFeasible; }
};

// SINR of every user in normalized form:
//   (p_i + c_i q_i) / (sum_j F_ij p_j + G_ij q_j + u_i).
// Pass an empty q (and c, g) for single-layer systems.
Eigen::VectorXd NormalizedSinr(const Eigen::MatrixXd& f, const Eigen::VectorXd& c,
                               const Eigen::MatrixXd& g,
                               const Eigen::VectorXd& u,
                               const Eigen::VectorXd& p,
                               const Eigen::VectorXd& q);

// p* = gamma0 (I - gamma0 F)^-1 u, valid while gamma0 < 1 / rho(F).
PowerSolution SolveSingleAnalytic(const Eigen::MatrixXd& f,
                                  const Eigen::VectorXd& u, double gamma0);
// Same, with rho(F) supplied by the caller.
PowerSolution SolveSingleAnalytic(const Eigen::MatrixXd& f,
                                  const Eigen::VectorXd& u, double gamma0,
                                  double rho);

// Marks a feasible solution kExceedsCaps when any p_i > p_max or q_i > q_max.
void ApplyPowerCaps(PowerSolution& solution, double p_max, double q_max);

// A = [I | C] with C = diag(c). a_pinv = A^T (A A^T)^-1 is the minimum-norm
// right inverse and b_tilde = a_pinv [F | G], so A b_tilde = [F | G].
struct BTilde {
  Eigen::MatrixXd b_tilde;  // 2n x 2n
  Eigen::MatrixXd a_pinv;   // 2n x n
};

BTilde BuildBTilde(const Eigen::VectorXd& c, const Eigen::MatrixXd& f,
                   const Eigen::MatrixXd& g);

// rho(b_tilde) through the n x n matrix [F | G] a_pinv = (F + G C) (I + C^2)^-1,
// which shares its nonzero spectrum with b_tilde.
SpectralRadiusResult TwoLayerSpectralRadius(const Eigen::VectorXd& c,
                                            const Eigen::MatrixXd& f,
                                            const Eigen::MatrixXd& g);

// x* = gamma0 (I - gamma0 b_tilde)^-1 a_pinv u, valid while
// gamma0 < 1 / rho(b_tilde). Negative components are reported as
// kInfeasibleSinr.
PowerSolution SolveTwoLayerAnalytic(const Eigen::VectorXd& c,
                                    const Eigen::MatrixXd& f,
                                    const Eigen::MatrixXd& g,
                                    const Eigen::VectorXd& u, double gamma0);

}  // namespace hetnet

#endif  // HETNET_SPECTRAL_H_
