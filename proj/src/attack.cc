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

#include "smtk/attack.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "coupling_program.h"
#include "smtk/divergence.h"
#include "smtk/errors.h"
#include "smtk/rng.h"

namespace smtk {
namespace {

const double kLn2 = std::log(2.0);

void CheckCommonAlphabet(const Pmf& a, const Pmf& b) {
  if (a.alphabet() != b.alphabet()) {
    throw InputError("attack needs the two pmfs on a common alphabet");
  }
}

AttackSolution FromProjection(const Pmf& p_y, internal::CouplingSolution sol,
                              double fallback_bits) {
  if (sol.infinite()) {
    return {TransportMap::Identity(p_y), fallback_bits, 0, 0.0, {}};
  }
  std::vector<double> history;
  for (double h : sol.history) history.push_back(std::max(0.0, h / kLn2));
  return {TransportMap(p_y.offset(), p_y.offset(), std::move(sol.flow)),
          sol.objective / kLn2, sol.newton_steps, sol.gap / kLn2,
          std::move(history)};
}

}  // namespace

DistortionBudget DistortionBudget::Additive(CostSpec cost, double l_max) {
  if (!(l_max >= 0.0) || !std::isfinite(l_max)) {
    throw InputError("distortion budget must be finite and >= 0");
  }
  return {std::move(cost), l_max};
}

DistortionBudget DistortionBudget::Linf(int l_max) {
  if (l_max < 0) throw InputError("distortion budget must be >= 0");
  return {std::nullopt, static_cast<double>(l_max)};
}

int DistortionBudget::linf_width() const {
  const double w = std::floor(l_max);
  if (w != l_max) throw InputError("L-infinity budget must be an integer");
  return static_cast<int>(w);
}

std::string DistortionBudget::MetricName() const {
  return cost ? cost->Name() : "linf";
}

AttackSolution OptimalAttackMap(const Pmf& p_y, const Pmf& p_x,
                                const DistortionBudget& budget) {
  if (budget.is_linf()) {
    return OptimalAttackMapLinf(p_y, p_x, budget.linf_width());
  }
  CheckCommonAlphabet(p_y, p_x);
  const Eigen::MatrixXd d = budget.cost->Evaluate(p_y.alphabet(), p_x.alphabet());
  return FromProjection(
      p_y,
      internal::ProjectFixedRows(p_y.probs(), p_x.probs(), d, budget.l_max,
                                 {}, internal::ProjectionObjective::kKl, 1.0),
      KlDivergence(p_y, p_x));
}

AttackSolution OptimalAttackMapTr(const Pmf& p_y, const Pmf& p_t,
                                  const DistortionBudget& budget, double c) {
  CheckCommonAlphabet(p_y, p_t);
  if (!(c > 0.0) || !std::isfinite(c)) throw InputError("c must be positive");
  const int k = p_y.size();
  Eigen::MatrixXd d;
  std::optional<double> l_max;
  internal::CellMask mask;
  if (budget.is_linf()) {
    d = Eigen::MatrixXd::Zero(k, k);
    mask = internal::BandMask(k, p_y.offset(), k, p_t.offset(),
                              budget.linf_width());
  } else {
    d = budget.cost->Evaluate(p_y.alphabet(), p_t.alphabet());
    l_max = budget.l_max;
  }
  return FromProjection(
      p_y,
      internal::ProjectFixedRows(p_y.probs(), p_t.probs(), d, l_max, mask,
                                 internal::ProjectionObjective::kHc, c),
      HcDivergence(p_y, p_t, c));
}

AttackSolution OptimalAttackMapLinf(const Pmf& p_y, const Pmf& p_x,
                                    int l_max) {
  CheckCommonAlphabet(p_y, p_x);
  if (l_max < 0) throw InputError("distortion budget must be >= 0");
  const int k = p_y.size();
  return FromProjection(
      p_y,
      internal::ProjectFixedRows(
          p_y.probs(), p_x.probs(), Eigen::MatrixXd::Zero(k, k), std::nullopt,
          internal::BandMask(k, p_y.offset(), k, p_x.offset(), l_max),
          internal::ProjectionObjective::kKl, 1.0),
      KlDivergence(p_y, p_x));
}

Eigen::MatrixXi RoundMapToCounts(const TransportMap& map,
                                 const std::vector<int64_t>& row_counts) {
  if (static_cast<int>(row_counts.size()) != map.rows()) {
    throw InputError("row count vector does not match the map");
  }
  const int64_t n =
      std::accumulate(row_counts.begin(), row_counts.end(), int64_t{0});
  if (n <= 0) throw InputError("no symbols to rewrite");
  const std::vector<double> row_sums = map.RowSums();
  Eigen::MatrixXi counts = Eigen::MatrixXi::Zero(map.rows(), map.cols());
  for (int i = 0; i < map.rows(); ++i) {
    const double expected = static_cast<double>(row_counts[i]) / n;
    if (std::abs(row_sums[i] - expected) > 1e-9) {
      throw InputError("map row marginal does not match the sequence type");
    }
    if (row_counts[i] == 0) continue;
    std::vector<double> quota(map.cols());
    std::vector<double> frac(map.cols());
    int64_t assigned = 0;
    for (int j = 0; j < map.cols(); ++j) {
      quota[j] = row_counts[i] * map.flow()(i, j) / row_sums[i];
      const double fl = std::floor(quota[j]);
      counts(i, j) = static_cast<int>(fl);
      frac[j] = quota[j] - fl;
      assigned += counts(i, j);
    }
    std::vector<int> order(map.cols());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return frac[a] > frac[b]; });
    int64_t left = row_counts[i] - assigned;
    for (int r = 0; left > 0; r = (r + 1) % map.cols(), --left) {
      ++counts(i, order[r]);
    }
  }
  return counts;
}

Sequence ApplyMapToSequence(const Sequence& y, const TransportMap& map,
                            uint64_t seed) {
  const Alphabet src = map.source_alphabet();
  std::vector<std::vector<int64_t>> positions(src.size);
  const auto& sym = y.symbols();
  for (int64_t t = 0; t < y.length(); ++t) {
    if (!src.Contains(sym[t])) {
      throw InputError("sequence symbol outside the map's source alphabet");
    }
    positions[sym[t] - src.offset].push_back(t);
  }
  std::vector<int64_t> row_counts(src.size);
  for (int i = 0; i < src.size; ++i) row_counts[i] = positions[i].size();
  const Eigen::MatrixXi counts = RoundMapToCounts(map, row_counts);

  Rng rng(seed, 0);
  std::vector<int> z(sym.size());
  for (int i = 0; i < src.size; ++i) {
    auto& pos = positions[i];
    // Fisher-Yates with the toolkit generator, for cross-platform results.
    for (int64_t t = static_cast<int64_t>(pos.size()) - 1; t > 0; --t) {
      std::swap(pos[t], pos[rng.UniformIndex(t + 1)]);
    }
    size_t next = 0;
    for (int j = 0; j < map.cols(); ++j) {
      for (int c = 0; c < counts(i, j); ++c) {
        z[pos[next++]] = map.sink_offset() + j;
      }
    }
  }
  return Sequence(std::move(z), map.sink_alphabet());
}

}  // namespace smtk
