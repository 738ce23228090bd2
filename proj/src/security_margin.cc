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

#include "smtk/security_margin.h"

#include <algorithm>
#include <cmath>

#include "smtk/errors.h"

namespace smtk {

SecurityMarginReport SecurityMargin(const Pmf& p, const Pmf& q,
                                    const CostSpec& cost) {
  EmdSolution sol = SolveEmd(p, q, cost);
  return {std::max(0.0, sol.value), cost.Name(), std::move(sol.map),
          sol.method};
}

SecurityMarginReport SecurityMarginLinf(const Pmf& p, const Pmf& q) {
  TransportMap map = NwcMap(p, q);
  const int value = LinfCost(map);
  return {static_cast<double>(value), "linf", std::move(map), "nwc"};
}

std::vector<std::pair<double, double>> HoeffdingCoupling(
    const ContinuousSource& x, const ContinuousSource& y, int grid) {
  if (grid < 1) throw InputError("coupling grid must be positive");
  std::vector<std::pair<double, double>> out(grid);
  for (int t = 0; t < grid; ++t) {
    const double u = (t + 0.5) / grid;
    out[t] = {x.Quantile(u), y.Quantile(u)};
  }
  return out;
}

SecurityMarginReport SmContinuous(const ContinuousSource& x,
                                  const ContinuousSource& y, double p_exp,
                                  int grid) {
  if (grid < 1000) throw InputError("quantile grid must be at least 1000");
  if (!(p_exp >= 1.0)) throw InputError("lp cost exponent must be >= 1");
  // Pairwise-blocked summation keeps the reduction order fixed.
  double total = 0.0;
  double block = 0.0;
  for (int t = 0; t < grid; ++t) {
    const double u = (t + 0.5) / grid;
    const double gap = std::abs(x.Quantile(u) - y.Quantile(u));
    block += p_exp == 2.0 ? gap * gap : std::pow(gap, p_exp);
    if ((t + 1) % 1024 == 0) {
      total += block;
      block = 0.0;
    }
  }
  total += block;
  return {total / grid, "lp", std::nullopt, "quantile"};
}

double SmSameClass(double mu_x, double sigma_x, double mu_y, double sigma_y) {
  if (!(sigma_x > 0.0) || !(sigma_y > 0.0)) {
    throw InputError("sigmas must be positive");
  }
  const double dm = mu_x - mu_y;
  const double ds = sigma_x - sigma_y;
  return dm * dm + ds * ds;
}

double SmSameClass(const ContinuousSource& x, const ContinuousSource& y) {
  if (x.family() != y.family() ||
      x.family() == ContinuousSource::Family::kTabulated) {
    throw InputError("same-class formula needs two Gaussian or two Laplacian "
                     "sources, got " + x.Name() + " and " + y.Name());
  }
  return SmSameClass(x.mu(), x.sigma(), y.mu(), y.sigma());
}

double SmUpperBound(double mu_x, double sigma_x, double mu_y, double sigma_y) {
  if (!(sigma_x >= 0.0) || !(sigma_y >= 0.0)) {
    throw InputError("sigmas must be nonnegative");
  }
  const double dm = mu_x - mu_y;
  return dm * dm + sigma_x * sigma_x + sigma_y * sigma_y;
}

MallowsTerms MallowsDecomposition(const MomentStats& s) {
  if (!(s.sigma_x >= 0.0) || !(s.sigma_y >= 0.0)) {
    throw InputError("sigmas must be nonnegative");
  }
  const double bound = s.sigma_x * s.sigma_y;
  if (std::abs(s.cov_xy) > bound * (1.0 + 1e-12) + 1e-300) {
    throw InputError("covariance violates the Cauchy-Schwarz bound");
  }
  const double dm = s.mu_x - s.mu_y;
  const double ds = s.sigma_x - s.sigma_y;
  return {dm * dm, ds * ds, std::max(0.0, 2.0 * (bound - s.cov_xy))};
}

Pmf QuantizeSource(const ContinuousSource& x, double lo, double hi, int bins) {
  if (bins < 1 || !(hi > lo)) throw InputError("bad quantization window");
  std::vector<double> probs(bins);
  const double h = (hi - lo) / bins;
  double prev = 0.0;  // folds the left tail into cell 0
  for (int i = 0; i < bins; ++i) {
    const double next = i + 1 == bins ? 1.0 : x.Cdf(lo + (i + 1) * h);
    probs[i] = std::max(0.0, next - prev);
    prev = std::max(prev, next);
  }
  return ValidatePmf(0, std::move(probs), /*renormalize=*/true);
}

}  // namespace smtk
