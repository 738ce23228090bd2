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

// False-negative error exponents of the source identification games, and
// the indistinguishability predicate.

#ifndef SMTK_EXPONENT_H_
#define SMTK_EXPONENT_H_

#include <optional>

#include "smtk/attack.h"
#include "smtk/pmf.h"
#include "smtk/transport.h"

namespace smtk {

struct ExponentResult {
  double epsilon_bits = 0.0;
  // Minimizing pmf P (closest to p_y in the indistinguishability region).
  Pmf argmin_pmf;
  // Coupling with rows indexed by P and columns by the pmf P is moved onto.
  TransportMap witness_map;
  // The intermediate pmf: Q for the lambda programs, R for the training
  // program in the lambda -> 0 limit.
  std::optional<Pmf> reference;
  // Training-sequence pmf R of the lambda > 0 training program.
  std::optional<Pmf> training;
  double gap_bits = 0.0;
  int iterations = 0;
};

// min D(P || p_y) over P with EMD(P, p_x) <= l_max (banded support for a
// linf budget).
ExponentResult FnErrorExponent(const Pmf& p_x, const Pmf& p_y,
                               const DistortionBudget& budget);

// min D(P || p_y) over P such that some Q has D(Q || p_x) <= lambda and
// EMD(P, Q) <= l_max. lambda in bits, > 0.
ExponentResult FnErrorExponentLambda(const Pmf& p_x, const Pmf& p_y,
                                     double lambda,
                                     const DistortionBudget& budget);

// Training-data game: min over R of c D(R || p_x) plus the smallest D(P ||
// p_y) over P within budget of the h_c acceptance ball around R (the EMD
// ball around R when lambda = 0). Alphabets above 3 symbols throw
// ScaleGuardError.
inline constexpr int kTrMaxAlphabet = 3;
ExponentResult TrErrorExponent(const Pmf& p_x, const Pmf& p_y,
                               const DistortionBudget& budget, double c,
                               double lambda);

// Security margin for the budget's metric is at most l_max.
bool Indistinguishable(const Pmf& p_x, const Pmf& p_y,
                       const DistortionBudget& budget);

}  // namespace smtk

#endif  // SMTK_EXPONENT_H_
