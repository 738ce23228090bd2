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

#include "smtk/exponent.h"

#include <cmath>
#include <limits>
#include <vector>

#include "coupling_program.h"
#include "smtk/errors.h"
#include "smtk/security_margin.h"

namespace smtk {
namespace {

const double kLn2 = std::log(2.0);

void CheckCommonAlphabet(const Pmf& a, const Pmf& b) {
  if (a.alphabet() != b.alphabet()) {
    throw InputError("exponent needs the two pmfs on a common alphabet");
  }
}

// Cost matrix and mask of a budget over a square alphabet.
struct BudgetGeometry {
  Eigen::MatrixXd d;
  std::optional<double> l_max;
  internal::CellMask mask;
};

BudgetGeometry Geometry(const DistortionBudget& budget, Alphabet a) {
  BudgetGeometry g;
  if (budget.is_linf()) {
    g.d = Eigen::MatrixXd::Zero(a.size, a.size);
    g.mask = internal::BandMask(a.size, a.offset, a.size, a.offset,
                                budget.linf_width());
  } else {
    g.d = budget.cost->Evaluate(a, a);
    g.l_max = budget.l_max;
  }
  return g;
}

ExponentResult InfiniteResult(const Pmf& p_x) {
  return {std::numeric_limits<double>::infinity(), p_x,
          TransportMap::Identity(p_x), std::nullopt, std::nullopt, 0.0, 0};
}

Pmf MarginalPmf(int offset, const Eigen::VectorXd& v) {
  std::vector<double> probs(v.data(), v.data() + v.size());
  double s = 0.0;
  for (double& x : probs) {
    x = std::max(0.0, x);
    s += x;
  }
  for (double& x : probs) x /= s;
  return ValidatePmf(offset, std::move(probs), /*renormalize=*/true);
}

ExponentResult FromJoint(const Pmf& p_x, internal::CouplingSolution sol) {
  if (sol.infinite()) return InfiniteResult(p_x);
  const int off = p_x.offset();
  Pmf argmin = MarginalPmf(off, sol.flow.rowwise().sum());
  Pmf reference = MarginalPmf(off, sol.flow.colwise().sum().transpose());
  std::optional<Pmf> training;
  if (sol.extra.size() > 0) training = MarginalPmf(off, sol.extra);
  return {sol.objective / kLn2,
          std::move(argmin),
          TransportMap(off, off, std::move(sol.flow)),
          std::move(reference),
          std::move(training),
          sol.gap / kLn2,
          sol.newton_steps};
}

}  // namespace

ExponentResult FnErrorExponent(const Pmf& p_x, const Pmf& p_y,
                               const DistortionBudget& budget) {
  CheckCommonAlphabet(p_x, p_y);
  BudgetGeometry g = Geometry(budget, p_x.alphabet());
  // Work with p_x on the fixed side: rows of the program are p_x symbols,
  // columns are P symbols, so the cost and mask are transposed.
  internal::CellMask mask_t;
  if (g.mask.size() > 0) mask_t = g.mask.transpose();
  internal::CouplingSolution sol = internal::ProjectFixedRows(
      p_x.probs(), p_y.probs(), g.d.transpose(), g.l_max, mask_t,
      internal::ProjectionObjective::kKl, 1.0);
  if (sol.infinite()) return InfiniteResult(p_x);
  Eigen::MatrixXd flow = sol.flow.transpose();
  const int off = p_x.offset();
  Pmf argmin = MarginalPmf(off, flow.rowwise().sum());
  return {sol.objective / kLn2,
          std::move(argmin),
          TransportMap(off, off, std::move(flow)),
          std::nullopt,
          std::nullopt,
          sol.gap / kLn2,
          sol.newton_steps};
}

ExponentResult FnErrorExponentLambda(const Pmf& p_x, const Pmf& p_y,
                                     double lambda,
                                     const DistortionBudget& budget) {
  CheckCommonAlphabet(p_x, p_y);
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    throw InputError("lambda must be positive");
  }
  BudgetGeometry g = Geometry(budget, p_x.alphabet());
  return FromJoint(p_x, internal::SolveJoint(internal::JointKind::kFnLambda,
                                             p_y.probs(), p_x.probs(), g.d,
                                             g.l_max, g.mask, lambda * kLn2,
                                             1.0));
}

ExponentResult TrErrorExponent(const Pmf& p_x, const Pmf& p_y,
                               const DistortionBudget& budget, double c,
                               double lambda) {
  CheckCommonAlphabet(p_x, p_y);
  if (p_x.size() > kTrMaxAlphabet) {
    throw ScaleGuardError("training-data exponent limited to alphabets of " +
                          std::to_string(kTrMaxAlphabet) + " symbols");
  }
  if (!(c > 0.0) || !std::isfinite(c)) throw InputError("c must be positive");
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) {
    throw InputError("lambda must be >= 0");
  }
  BudgetGeometry g = Geometry(budget, p_x.alphabet());
  const internal::JointKind kind = lambda == 0.0
                                       ? internal::JointKind::kTrZero
                                       : internal::JointKind::kTrLambda;
  return FromJoint(p_x, internal::SolveJoint(kind, p_y.probs(), p_x.probs(),
                                             g.d, g.l_max, g.mask,
                                             lambda * kLn2, c));
}

bool Indistinguishable(const Pmf& p_x, const Pmf& p_y,
                       const DistortionBudget& budget) {
  const double margin = budget.is_linf()
                            ? SecurityMarginLinf(p_y, p_x).value
                            : SecurityMargin(p_y, p_x, *budget.cost).value;
  return margin <= budget.l_max + 1e-9;
}

}  // namespace smtk
