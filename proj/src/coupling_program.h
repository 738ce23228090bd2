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

// Convex programs over couplings shared by the attack and exponent code.
// Internal header. Values are in nats.

#ifndef SMTK_SRC_COUPLING_PROGRAM_H_
#define SMTK_SRC_COUPLING_PROGRAM_H_

#include <optional>
#include <vector>

#include <Eigen/Dense>

namespace smtk::internal {

// Boolean mask of usable cells; an empty matrix means all cells.
using CellMask = Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic>;

CellMask BandMask(int rows, int row_offset, int cols, int col_offset,
                  int width);

struct CouplingSolution {
  Eigen::MatrixXd flow;
  // Free reference pmf for programs that carry one; empty otherwise.
  Eigen::VectorXd extra;
  double objective = 0.0;  // nats; +inf when no finite point exists
  double gap = 0.0;        // nats
  int newton_steps = 0;
  std::vector<double> history;
  bool infinite() const;
};

enum class ProjectionObjective { kKl, kHc };

// Rows are fixed to `fixed`; the column marginal S is free. Minimizes
// KL(S || ref) or h_c(S, ref) subject to sum d * flow <= budget (if any) and
// flow confined to `mask`.
CouplingSolution ProjectFixedRows(const std::vector<double>& fixed,
                                  const std::vector<double>& ref,
                                  const Eigen::MatrixXd& d,
                                  std::optional<double> budget,
                                  const CellMask& mask,
                                  ProjectionObjective objective, double c);

// Both marginals free, total mass 1.
//   kFnLambda: min KL(row || row_ref) s.t. KL(col || col_ref) <= lambda
//   kTrZero:   min c KL(col || col_ref) + KL(row || row_ref)
//   kTrLambda: min c KL(R || col_ref) + KL(row || row_ref)
//              s.t. h_c(col, R) <= lambda
// plus sum d * flow <= budget (if any) and flow confined to `mask`.
enum class JointKind { kFnLambda, kTrZero, kTrLambda };

CouplingSolution SolveJoint(JointKind kind, const std::vector<double>& row_ref,
                            const std::vector<double>& col_ref,
                            const Eigen::MatrixXd& d,
                            std::optional<double> budget, const CellMask& mask,
                            double lambda_nats, double c);

}  // namespace smtk::internal

#endif  // SMTK_SRC_COUPLING_PROGRAM_H_
