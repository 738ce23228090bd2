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

// Security margins: the largest per-letter distortion budget under which two
// sources stay distinguishable, for discrete, L-infinity and continuous
// settings.

#ifndef SMTK_SECURITY_MARGIN_H_
#define SMTK_SECURITY_MARGIN_H_

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "smtk/continuous.h"
#include "smtk/pmf.h"
#include "smtk/transport.h"

namespace smtk {

inline constexpr int kDefaultQuantileGrid = 100000;

struct SecurityMarginReport {
  double value = 0.0;
  std::string metric;  // "lp", "hamming", "matrix" or "linf"
  std::optional<TransportMap> witness;
  std::string method;  // "nwc", "lp", "closed_form" or "quantile"
};

SecurityMarginReport SecurityMargin(const Pmf& p, const Pmf& q,
                                    const CostSpec& cost);
// Integer-valued margin under the maximum per-letter distance.
SecurityMarginReport SecurityMarginLinf(const Pmf& p, const Pmf& q);

// Quantile coupling pairs (F_X^-1(u), F_Y^-1(u)) at u = (t + 0.5) / grid.
std::vector<std::pair<double, double>> HoeffdingCoupling(
    const ContinuousSource& x, const ContinuousSource& y, int grid);

// Midpoint quadrature of E|F_X^-1(U) - F_Y^-1(U)|^p. grid >= 1000.
SecurityMarginReport SmContinuous(const ContinuousSource& x,
                                  const ContinuousSource& y, double p_exp,
                                  int grid = kDefaultQuantileGrid);

// (mu_x - mu_y)^2 + (sigma_x - sigma_y)^2.
double SmSameClass(double mu_x, double sigma_x, double mu_y, double sigma_y);
// Source version; only defined for two members of the same affine-closed
// family (Gaussian or Laplacian). Anything else throws InputError.
double SmSameClass(const ContinuousSource& x, const ContinuousSource& y);

// (mu_x - mu_y)^2 + sigma_x^2 + sigma_y^2.
double SmUpperBound(double mu_x, double sigma_x, double mu_y, double sigma_y);

struct MomentStats {
  double mu_x = 0.0;
  double mu_y = 0.0;
  double sigma_x = 1.0;
  double sigma_y = 1.0;
  double cov_xy = 0.0;
};

struct MallowsTerms {
  double location = 0.0;
  double spread = 0.0;
  double shape = 0.0;
  double Sum() const { return location + spread + shape; }
};

// Splits E[(X - Y)^2] into location, spread and shape terms.
MallowsTerms MallowsDecomposition(const MomentStats& stats);

// Discretizes a source into `bins` equal cells over [lo, hi]; mass outside
// the window is folded into the edge cells. Symbols are 0..bins-1.
Pmf QuantizeSource(const ContinuousSource& x, double lo, double hi, int bins);

}  // namespace smtk

#endif  // SMTK_SECURITY_MARGIN_H_
