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

// The attacker's optimal transportation map: the admissible coupling of the
// observed type that lands closest, in divergence, to the target source.

#ifndef SMTK_ATTACK_H_
#define SMTK_ATTACK_H_

#include <cstdint>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "smtk/pmf.h"
#include "smtk/transport.h"

namespace smtk {

// Per-letter distortion limit. Without a cost the limit is on the largest
// single-symbol displacement (L-infinity) and must be a whole number.
struct DistortionBudget {
  std::optional<CostSpec> cost;
  double l_max = 0.0;

  static DistortionBudget Additive(CostSpec cost, double l_max);
  static DistortionBudget Linf(int l_max);
  bool is_linf() const { return !cost.has_value(); }
  int linf_width() const;
  std::string MetricName() const;
};

struct AttackSolution {
  TransportMap map;
  double objective_bits = 0.0;
  int iterations = 0;  // Newton steps
  double gap = 0.0;    // bits; duality gap certificate
  // Objective at each barrier center, in bits.
  std::vector<double> history;
};

// argmin over admissible maps of D(S_Z || p_x). Dispatches to the
// L-infinity variant for a linf budget.
AttackSolution OptimalAttackMap(const Pmf& p_y, const Pmf& p_x,
                                const DistortionBudget& budget);
// argmin of h_c(S_Z, p_t) with c = N / n.
AttackSolution OptimalAttackMapTr(const Pmf& p_y, const Pmf& p_t,
                                  const DistortionBudget& budget, double c);
// Flow allowed only where |i - j| <= l_max.
AttackSolution OptimalAttackMapLinf(const Pmf& p_y, const Pmf& p_x, int l_max);

// Integer transformation counts n(i, j): each row's quotas n_i * S(i, j) /
// S_i are rounded by largest remainder so that row sums equal `row_counts`.
Eigen::MatrixXi RoundMapToCounts(const TransportMap& map,
                                 const std::vector<int64_t>& row_counts);

// Rewrites y according to the rounded map. Which occurrences of a symbol are
// rewritten is decided by a shuffle seeded from `seed`.
Sequence ApplyMapToSequence(const Sequence& y, const TransportMap& map,
                            uint64_t seed);

}  // namespace smtk

#endif  // SMTK_ATTACK_H_
