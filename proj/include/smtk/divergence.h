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

// Kullback-Leibler divergence and the training-data statistic h_c, in bits.
// Infinite values are returned as +infinity, never clamped.

#ifndef SMTK_DIVERGENCE_H_
#define SMTK_DIVERGENCE_H_

#include <span>

#include "smtk/pmf.h"

namespace smtk {

// Entries below this are exact zeros in the 0 log 0 convention.
inline constexpr double kZeroMass = 1e-300;

// D(p||q) in bits. Throws InputError on alphabet mismatch.
double KlDivergence(const Pmf& p, const Pmf& q);
// Same on raw vectors of equal length (no unit-sum check).
double KlDivergence(std::span<const double> p, std::span<const double> q);

// h_c(p, q) = D(p||u) + c D(q||u) with u = (p + c q) / (1 + c).
double HcDivergence(const Pmf& p, const Pmf& q, double c);
double HcDivergence(std::span<const double> p, std::span<const double> q,
                    double c);

}  // namespace smtk

#endif  // SMTK_DIVERGENCE_H_
