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

#include "smtk/divergence.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "smtk/errors.h"

namespace smtk {

double KlDivergence(std::span<const double> p, std::span<const double> q) {
  if (p.size() != q.size()) throw InputError("alphabet mismatch");
  double nats = 0.0;
  for (size_t a = 0; a < p.size(); ++a) {
    if (p[a] < kZeroMass) continue;
    if (q[a] < kZeroMass) return std::numeric_limits<double>::infinity();
    nats += p[a] * std::log(p[a] / q[a]);
  }
  // Roundoff can push an exact zero slightly negative.
  return std::max(0.0, nats / std::log(2.0));
}

double KlDivergence(const Pmf& p, const Pmf& q) {
  if (p.alphabet() != q.alphabet()) throw InputError("alphabet mismatch");
  return KlDivergence(std::span<const double>(p.probs()),
                      std::span<const double>(q.probs()));
}

double HcDivergence(std::span<const double> p, std::span<const double> q,
                    double c) {
  if (p.size() != q.size()) throw InputError("alphabet mismatch");
  if (!(c > 0.0) || !std::isfinite(c)) {
    throw InputError("h_c needs a positive finite c");
  }
  // Written termwise so the mixture never needs a separate allocation:
  // p log(p/u) + c q log(q/u), u = (p + c q)/(1 + c).
  double nats = 0.0;
  for (size_t a = 0; a < p.size(); ++a) {
    const double pa = p[a] < kZeroMass ? 0.0 : p[a];
    const double qa = q[a] < kZeroMass ? 0.0 : q[a];
    if (pa == qa) continue;  // both terms vanish
    const double u = (pa + c * qa) / (1.0 + c);
    if (pa > 0.0) nats += pa * std::log(pa / u);
    if (qa > 0.0) nats += c * qa * std::log(qa / u);
  }
  return std::max(0.0, nats / std::log(2.0));
}

double HcDivergence(const Pmf& p, const Pmf& q, double c) {
  if (p.alphabet() != q.alphabet()) throw InputError("alphabet mismatch");
  return HcDivergence(std::span<const double>(p.probs()),
                      std::span<const double>(q.probs()), c);
}

}  // namespace smtk
