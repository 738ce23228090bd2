// Copyright 2026 The smtk Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Log-barrier interior-point method for the small convex programs behind
// attack maps and error exponents: divergence objectives of linear images of
// a nonnegative vector, under equality constraints and convex inequality
// constraints. All values are in nats.

#ifndef SMTK_BARRIER_H_
#define SMTK_BARRIER_H_

#include <optional>
#include <vector>

#include <Eigen/Dense>

namespace smtk {

// sum_a weight * phi(u_a, v_a), where u_a is the sum of the variables listed
// in u_groups[a] and v_a is either a sum over v_groups[a] or v_fixed[a].
//   kKl: phi(u, v) = u log(u / v)
//   kHc: phi(u, v) = u log((1+c) u / (u + c v)) + c v log((1+c) v / (u + c v))
struct PairTerm {
  enum class Kind { kKl, kHc };
  Kind kind = Kind::kKl;
  double weight = 1.0;
  double c = 1.0;
  std::vector<std::vector<int>> u_groups;
  std::vector<std::vector<int>> v_groups;  // empty means v_fixed is used
  std::vector<double> v_fixed;
};

// linear . x + constant + sum of pair terms.
struct ConvexFunction {
  Eigen::VectorXd linear;  // empty means zero
  double constant = 0.0;
  std::vector<PairTerm> terms;

  // +infinity outside the domain.
  double Value(const Eigen::VectorXd& x) const;
  // Adds scale * gradient and scale * Hessian.
  void AddDerivatives(const Eigen::VectorXd& x, double scale,
                      Eigen::VectorXd& grad, Eigen::MatrixXd& hess) const;
  // Gradient only, for linear-plus-terms functions used in constraints.
  Eigen::VectorXd Gradient(const Eigen::VectorXd& x) const;
};

// minimize objective(x) s.t. equality * x = rhs, g(x) <= 0 for g in
// constraints, x >= 0. x0 must be strictly feasible for the inequalities
// and x > 0; equality residuals are corrected by the Newton steps.
struct BarrierProblem {
  int n = 0;
  Eigen::MatrixXd equality;
  Eigen::VectorXd rhs;
  ConvexFunction objective;
  std::vector<ConvexFunction> constraints;
  Eigen::VectorXd x0;
};

struct BarrierOptions {
  double t0 = 1.0;
  double mu = 10.0;
  // Target on the duality gap (number of inequalities) / t, in nats.
  double gap_target = 1e-10;
  int max_newton_per_center = 200;
  int max_outer = 60;
  // Stop as soon as a centered point has objective below this value.
  std::optional<double> stop_below;
};

struct BarrierResult {
  Eigen::VectorXd x;
  double objective = 0.0;
  double gap = 0.0;
  int newton_steps = 0;
  // Objective at each centered point; non-increasing along the central path.
  std::vector<double> center_values;
  bool converged = false;
};

// Dense solver; problems above kBarrierMaxVariables throw ScaleGuardError.
inline constexpr int kBarrierMaxVariables = 2500;

BarrierResult SolveBarrier(const BarrierProblem& problem,
                           const BarrierOptions& options = {});

}  // namespace smtk

#endif  // SMTK_BARRIER_H_
