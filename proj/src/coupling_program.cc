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

#include "coupling_program.h"

#include <cmath>
#include <limits>
#include <string>
#include <utility>

#include "smtk/barrier.h"
#include "smtk/errors.h"

namespace smtk::internal {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Cell {
  int i;
  int j;
};

bool Allowed(const CellMask& mask, int i, int j) {
  return mask.size() == 0 || mask(i, j);
}

CouplingSolution Infinite(int rows, int cols) {
  CouplingSolution s;
  s.flow = Eigen::MatrixXd::Zero(rows, cols);
  s.objective = kInf;
  return s;
}

// KL(u || ref) or h_c(u, ref) where u_j sums the cells of column j.
PairTerm ColumnTerm(const std::vector<Cell>& cells, int cols,
                    const std::vector<double>& ref, PairTerm::Kind kind,
                    double weight, double c) {
  PairTerm term;
  term.kind = kind;
  term.weight = weight;
  term.c = c;
  term.u_groups.resize(cols);
  for (size_t v = 0; v < cells.size(); ++v) {
    term.u_groups[cells[v].j].push_back(static_cast<int>(v));
  }
  term.v_fixed = ref;
  return term;
}

PairTerm RowTerm(const std::vector<Cell>& cells, int rows,
                 const std::vector<double>& ref, double weight) {
  PairTerm term;
  term.kind = PairTerm::Kind::kKl;
  term.weight = weight;
  term.u_groups.resize(rows);
  for (size_t v = 0; v < cells.size(); ++v) {
    term.u_groups[cells[v].i].push_back(static_cast<int>(v));
  }
  term.v_fixed = ref;
  return term;
}

ConvexFunction CostFunction(const std::vector<Cell>& cells, int n,
                            const Eigen::MatrixXd& d, double budget) {
  ConvexFunction g;
  g.linear = Eigen::VectorXd::Zero(n);
  for (size_t v = 0; v < cells.size(); ++v) {
    g.linear[v] = d(cells[v].i, cells[v].j);
  }
  g.constant = -budget;
  return g;
}

}  // namespace

bool CouplingSolution::infinite() const { return !std::isfinite(objective); }

CellMask BandMask(int rows, int row_offset, int cols, int col_offset,
                  int width) {
  CellMask mask(rows, cols);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) {
      mask(i, j) = std::abs((row_offset + i) - (col_offset + j)) <= width;
    }
  }
  return mask;
}

CouplingSolution ProjectFixedRows(const std::vector<double>& fixed,
                                  const std::vector<double>& ref,
                                  const Eigen::MatrixXd& d,
                                  std::optional<double> budget,
                                  const CellMask& mask,
                                  ProjectionObjective objective, double c) {
  const int k = static_cast<int>(fixed.size());
  const int m = static_cast<int>(ref.size());
  auto usable = [&](int i, int j) {
    return fixed[i] > 0.0 && Allowed(mask, i, j) &&
           (objective == ProjectionObjective::kHc || ref[j] > 0.0);
  };
  std::vector<double> row_min(k, kInf), row_max(k, -kInf);
  for (int i = 0; i < k; ++i) {
    if (fixed[i] <= 0.0) continue;
    for (int j = 0; j < m; ++j) {
      if (!usable(i, j)) continue;
      row_min[i] = std::min(row_min[i], d(i, j));
      row_max[i] = std::max(row_max[i], d(i, j));
    }
    if (!std::isfinite(row_min[i])) return Infinite(k, m);
  }

  bool knapsack = false;
  bool argmin_only = false;
  if (budget) {
    double c0 = 0.0, c_max = 0.0;
    for (int i = 0; i < k; ++i) {
      if (fixed[i] <= 0.0) continue;
      c0 += fixed[i] * row_min[i];
      c_max += fixed[i] * row_max[i];
    }
    const double tol = 1e-12 * std::max(1.0, *budget);
    if (c0 > *budget + tol) return Infinite(k, m);
    // With no slack the feasible set is the face where every row ships to
    // its cheapest cells only.
    argmin_only = c0 >= *budget - tol;
    knapsack = !argmin_only && c_max > *budget;
  }

  std::vector<Cell> cells;
  std::vector<int> argmin_count(k, 0), cell_count(k, 0);
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < m; ++j) {
      if (!usable(i, j)) continue;
      const bool is_min = d(i, j) <= row_min[i] + 1e-12;
      if (argmin_only && !is_min) continue;
      cells.push_back({i, j});
      ++cell_count[i];
      if (is_min) ++argmin_count[i];
    }
  }
  const int n = static_cast<int>(cells.size());

  BarrierProblem prob;
  prob.n = n;
  std::vector<int> row_index(k, -1);
  int eq_rows = 0;
  for (int i = 0; i < k; ++i) {
    if (fixed[i] > 0.0) row_index[i] = eq_rows++;
  }
  prob.equality = Eigen::MatrixXd::Zero(eq_rows, n);
  prob.rhs = Eigen::VectorXd::Zero(eq_rows);
  for (int i = 0; i < k; ++i) {
    if (row_index[i] >= 0) prob.rhs[row_index[i]] = fixed[i];
  }
  for (int v = 0; v < n; ++v) prob.equality(row_index[cells[v].i], v) = 1.0;

  prob.objective.terms.push_back(ColumnTerm(
      cells, m, ref,
      objective == ProjectionObjective::kKl ? PairTerm::Kind::kKl
                                            : PairTerm::Kind::kHc,
      1.0, c));
  if (knapsack) prob.constraints.push_back(CostFunction(cells, n, d, *budget));

  // Cheapest plan blended with the row-uniform plan; the blend weight is
  // halved until the budget holds strictly.
  auto start = [&](double theta) {
    Eigen::VectorXd x(n);
    for (int v = 0; v < n; ++v) {
      const Cell& e = cells[v];
      const bool is_min = d(e.i, e.j) <= row_min[e.i] + 1e-12;
      x[v] = fixed[e.i] * ((is_min ? (1.0 - theta) / argmin_count[e.i] : 0.0) +
                           theta / cell_count[e.i]);
    }
    return x;
  };
  double theta = 0.5;
  prob.x0 = start(theta);
  if (knapsack) {
    while (prob.constraints[0].Value(prob.x0) >= 0.0) {
      theta *= 0.5;
      if (theta < 1e-300) throw SolverError("no strictly feasible start", kInf);
      prob.x0 = start(theta);
    }
  }

  BarrierResult res = SolveBarrier(prob);
  CouplingSolution out;
  out.flow = Eigen::MatrixXd::Zero(k, m);
  for (int v = 0; v < n; ++v) out.flow(cells[v].i, cells[v].j) = res.x[v];
  // Exact row marginals; the interior iterate carries roundoff.
  for (int i = 0; i < k; ++i) {
    const double s = out.flow.row(i).sum();
    if (s > 0.0) out.flow.row(i) *= fixed[i] / s;
  }
  Eigen::VectorXd x(n);
  for (int v = 0; v < n; ++v) x[v] = out.flow(cells[v].i, cells[v].j);
  out.objective = std::max(0.0, prob.objective.Value(x));
  out.gap = res.gap;
  out.newton_steps = res.newton_steps;
  out.history = std::move(res.center_values);
  return out;
}

CouplingSolution SolveJoint(JointKind kind, const std::vector<double>& row_ref,
                            const std::vector<double>& col_ref,
                            const Eigen::MatrixXd& d,
                            std::optional<double> budget, const CellMask& mask,
                            double lambda_nats, double c) {
  const int k = static_cast<int>(row_ref.size());
  const int m = static_cast<int>(col_ref.size());
  const bool has_r = kind == JointKind::kTrLambda;
  const bool has_div_constraint = kind != JointKind::kTrZero;
  if (has_div_constraint && !(lambda_nats > 0.0)) {
    throw InputError("lambda must be positive");
  }
  auto usable = [&](int i, int j) {
    return row_ref[i] > 0.0 && Allowed(mask, i, j) &&
           (has_r || col_ref[j] > 0.0);
  };
  double d_min = kInf, d_max = -kInf;
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < m; ++j) {
      if (!usable(i, j)) continue;
      d_min = std::min(d_min, d(i, j));
      d_max = std::max(d_max, d(i, j));
    }
  }
  if (!std::isfinite(d_min)) return Infinite(k, m);

  bool knapsack = false;
  bool min_face = false;
  if (budget) {
    const double tol = 1e-12 * std::max(1.0, *budget);
    if (*budget < d_min - tol) return Infinite(k, m);
    min_face = *budget <= d_min + tol;
    knapsack = !min_face && d_max > *budget;
  }

  std::vector<Cell> cells;
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < m; ++j) {
      if (!usable(i, j)) continue;
      if (min_face && d(i, j) > d_min + 1e-12) continue;
      cells.push_back({i, j});
    }
  }
  const int nc = static_cast<int>(cells.size());
  std::vector<int> r_index(m, -1);
  int nr = 0;
  if (has_r) {
    for (int j = 0; j < m; ++j) {
      if (col_ref[j] > 0.0) r_index[j] = nc + nr++;
    }
  }
  const int n = nc + nr;

  BarrierProblem base;
  base.n = n;
  base.equality = Eigen::MatrixXd::Zero(has_r ? 2 : 1, n);
  base.rhs = Eigen::VectorXd::Ones(has_r ? 2 : 1);
  base.equality.block(0, 0, 1, nc).setOnes();
  if (has_r) base.equality.block(1, nc, 1, nr).setOnes();

  // The divergence that is bounded by lambda, without the -lambda constant.
  ConvexFunction div;
  if (kind == JointKind::kFnLambda) {
    div.terms.push_back(
        ColumnTerm(cells, m, col_ref, PairTerm::Kind::kKl, 1.0, 1.0));
  } else if (kind == JointKind::kTrLambda) {
    PairTerm hc = ColumnTerm(cells, m, {}, PairTerm::Kind::kHc, 1.0, c);
    hc.v_fixed.clear();
    hc.v_groups.resize(m);
    for (int j = 0; j < m; ++j) {
      if (r_index[j] >= 0) hc.v_groups[j].push_back(r_index[j]);
    }
    div.terms.push_back(std::move(hc));
  }

  ConvexFunction objective;
  objective.terms.push_back(RowTerm(cells, k, row_ref, 1.0));
  if (kind == JointKind::kTrZero) {
    objective.terms.push_back(
        ColumnTerm(cells, m, col_ref, PairTerm::Kind::kKl, c, 1.0));
  } else if (kind == JointKind::kTrLambda) {
    PairTerm r_term;
    r_term.kind = PairTerm::Kind::kKl;
    r_term.weight = c;
    r_term.u_groups.resize(m);
    for (int j = 0; j < m; ++j) {
      if (r_index[j] >= 0) r_term.u_groups[j].push_back(r_index[j]);
    }
    r_term.v_fixed = col_ref;
    objective.terms.push_back(std::move(r_term));
  }

  Eigen::VectorXd x(n);
  x.head(nc).setConstant(1.0 / nc);
  if (has_r) x.tail(nr).setConstant(1.0 / nr);

  ConvexFunction div_constraint = div;
  div_constraint.constant = -lambda_nats;
  int steps = 0;
  // Phase one: reach the strict interior of the divergence ball, then of the
  // budget, reusing the barrier solver with an early exit.
  if (has_div_constraint && !(div_constraint.Value(x) < 0.0)) {
    BarrierProblem p1 = base;
    p1.objective = div;
    p1.x0 = x;
    BarrierOptions opt;
    opt.stop_below = lambda_nats;
    BarrierResult r1 = SolveBarrier(p1, opt);
    steps += r1.newton_steps;
    if (!(r1.objective < lambda_nats)) return Infinite(k, m);
    x = r1.x;
  }
  ConvexFunction cost;
  if (knapsack) {
    cost = CostFunction(cells, n, d, *budget);
    if (!(cost.Value(x) < 0.0)) {
      BarrierProblem p2 = base;
      p2.objective = CostFunction(cells, n, d, 0.0);
      if (has_div_constraint) p2.constraints.push_back(div_constraint);
      p2.x0 = x;
      BarrierOptions opt;
      opt.stop_below = *budget;
      BarrierResult r2 = SolveBarrier(p2, opt);
      steps += r2.newton_steps;
      if (!(r2.objective < *budget)) {
        if (r2.objective <= *budget + 1e-9) {
          throw SolverError("budget lies on the boundary of the feasible set",
                            r2.gap);
        }
        return Infinite(k, m);
      }
      x = r2.x;
    }
  }

  BarrierProblem prob = base;
  prob.objective = objective;
  if (has_div_constraint) prob.constraints.push_back(div_constraint);
  if (knapsack) prob.constraints.push_back(cost);
  prob.x0 = x;
  BarrierResult res = SolveBarrier(prob);

  CouplingSolution out;
  out.flow = Eigen::MatrixXd::Zero(k, m);
  for (int v = 0; v < nc; ++v) out.flow(cells[v].i, cells[v].j) = res.x[v];
  out.flow /= out.flow.sum();
  if (has_r) {
    out.extra = Eigen::VectorXd::Zero(m);
    for (int j = 0; j < m; ++j) {
      if (r_index[j] >= 0) out.extra[j] = res.x[r_index[j]];
    }
    out.extra /= out.extra.sum();
  }
  out.objective = std::max(0.0, res.objective);
  out.gap = res.gap;
  out.newton_steps = steps + res.newton_steps;
  out.history = std::move(res.center_values);
  return out;
}

}  // namespace smtk::internal
