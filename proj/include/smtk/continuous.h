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

// One-dimensional continuous sources with CDF and quantile evaluation.

#ifndef SMTK_CONTINUOUS_H_
#define SMTK_CONTINUOUS_H_

#include <string>
#include <vector>

namespace smtk {

class ContinuousSource {
 public:
  enum class Family { kGaussian, kLaplacian, kTabulated };

  static ContinuousSource Gaussian(double mu, double sigma);
  // `sigma` is the standard deviation; the Laplace scale is sigma / sqrt(2).
  static ContinuousSource Laplacian(double mu, double sigma);
  // Density sampled on an increasing grid. Cell masses come from the
  // trapezoid rule, which must total 1 within 1e-6 (then rescaled to 1); the
  // CDF is linear between grid points.
  static ContinuousSource Tabulated(std::vector<double> grid,
                                    std::vector<double> density);

  Family family() const { return family_; }
  double mu() const { return mu_; }
  double sigma() const { return sigma_; }
  std::string Name() const;

  double Cdf(double x) const;
  // Generalized inverse inf{x : Cdf(x) >= u} for u in (0, 1).
  double Quantile(double u) const;

 private:
  ContinuousSource() = default;

  Family family_ = Family::kGaussian;
  double mu_ = 0.0;
  double sigma_ = 1.0;
  // Tabulated sources: grid points and cumulative mass at each of them.
  std::vector<double> grid_;
  std::vector<double> cums_;
};

}  // namespace smtk

#endif  // SMTK_CONTINUOUS_H_
