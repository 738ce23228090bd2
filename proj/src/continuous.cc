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

#include "smtk/continuous.h"

#include <algorithm>
#include <cmath>
#include <string>

#include <boost/math/special_functions/erf.hpp>

#include "smtk/errors.h"

namespace smtk {
namespace {

void CheckMoments(double mu, double sigma) {
  if (!std::isfinite(mu)) throw InputError("mean must be finite");
  if (!(sigma > 0.0) || !std::isfinite(sigma)) {
    throw InputError("sigma must be positive and finite");
  }
}

}  // namespace

ContinuousSource ContinuousSource::Gaussian(double mu, double sigma) {
  CheckMoments(mu, sigma);
  ContinuousSource s;
  s.family_ = Family::kGaussian;
  s.mu_ = mu;
  s.sigma_ = sigma;
  return s;
}

ContinuousSource ContinuousSource::Laplacian(double mu, double sigma) {
  CheckMoments(mu, sigma);
  ContinuousSource s;
  s.family_ = Family::kLaplacian;
  s.mu_ = mu;
  s.sigma_ = sigma;
  return s;
}

ContinuousSource ContinuousSource::Tabulated(std::vector<double> grid,
                                             std::vector<double> density) {
  if (grid.size() < 2 || grid.size() != density.size()) {
    throw InputError("tabulated source needs >= 2 matching grid/density points");
  }
  for (size_t i = 0; i < grid.size(); ++i) {
    if (!std::isfinite(grid[i]) || !std::isfinite(density[i])) {
      throw InputError("tabulated source has a non-finite value");
    }
    if (density[i] < 0.0) throw InputError("tabulated density is negative");
    if (i > 0 && !(grid[i] > grid[i - 1])) {
      throw InputError("tabulated grid must be strictly increasing");
    }
  }
  std::vector<double> cums(grid.size(), 0.0);
  for (size_t i = 1; i < grid.size(); ++i) {
    cums[i] = cums[i - 1] +
              0.5 * (density[i] + density[i - 1]) * (grid[i] - grid[i - 1]);
  }
  const double total = cums.back();
  if (std::abs(total - 1.0) > 1e-6) {
    throw InputError("tabulated density integrates to " +
                     std::to_string(total));
  }
  for (double& c : cums) c /= total;
  cums.back() = 1.0;

  ContinuousSource s;
  s.family_ = Family::kTabulated;
  // Moments of the piecewise-uniform law the linear CDF describes.
  double m1 = 0.0;
  double m2 = 0.0;
  for (size_t i = 1; i < grid.size(); ++i) {
    const double w = cums[i] - cums[i - 1];
    const double a = grid[i - 1];
    const double b = grid[i];
    m1 += w * 0.5 * (a + b);
    m2 += w * (a * a + a * b + b * b) / 3.0;
  }
  s.mu_ = m1;
  s.sigma_ = std::sqrt(std::max(0.0, m2 - m1 * m1));
  if (!(s.sigma_ > 0.0)) throw InputError("tabulated source is degenerate");
  s.grid_ = std::move(grid);
  s.cums_ = std::move(cums);
  return s;
}

std::string ContinuousSource::Name() const {
  switch (family_) {
    case Family::kGaussian:
      return "gaussian";
    case Family::kLaplacian:
      return "laplacian";
    case Family::kTabulated:
      return "tabulated";
  }
  return "";
}

double ContinuousSource::Cdf(double x) const {
  switch (family_) {
    case Family::kGaussian:
      return 0.5 * std::erfc(-(x - mu_) / (sigma_ * std::sqrt(2.0)));
    case Family::kLaplacian: {
      const double b = sigma_ / std::sqrt(2.0);
      if (x < mu_) return 0.5 * std::exp((x - mu_) / b);
      return 1.0 - 0.5 * std::exp(-(x - mu_) / b);
    }
    case Family::kTabulated: {
      if (x <= grid_.front()) return 0.0;
      if (x >= grid_.back()) return 1.0;
      const size_t k =
          std::upper_bound(grid_.begin(), grid_.end(), x) - grid_.begin();
      const double t = (x - grid_[k - 1]) / (grid_[k] - grid_[k - 1]);
      return cums_[k - 1] + t * (cums_[k] - cums_[k - 1]);
    }
  }
  return 0.0;
}

double ContinuousSource::Quantile(double u) const {
  if (!(u > 0.0 && u < 1.0)) throw InputError("quantile level outside (0, 1)");
  switch (family_) {
    case Family::kGaussian:
      return mu_ - sigma_ * std::sqrt(2.0) * boost::math::erfc_inv(2.0 * u);
    case Family::kLaplacian: {
      const double b = sigma_ / std::sqrt(2.0);
      if (u < 0.5) return mu_ + b * std::log(2.0 * u);
      return mu_ - b * std::log(2.0 * (1.0 - u));
    }
    case Family::kTabulated: {
      // First grid point whose cumulative reaches u; on a flat stretch this
      // is its left end.
      const size_t k =
          std::lower_bound(cums_.begin(), cums_.end(), u) - cums_.begin();
      if (k == 0) return grid_.front();
      const double rise = cums_[k] - cums_[k - 1];
      const double t = rise > 0.0 ? (u - cums_[k - 1]) / rise : 0.0;
      return grid_[k - 1] + t * (grid_[k] - grid_[k - 1]);
    }
  }
  return 0.0;
}

}  // namespace smtk
