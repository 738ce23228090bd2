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

// Random instance generators and independent reference computations used by
// the unit tests and the acceptance binary. Nothing here calls the solvers
// it is meant to check.

#ifndef SMTK_TESTS_TEST_UTIL_H_
#define SMTK_TESTS_TEST_UTIL_H_

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <random>
#include <vector>

#include "smtk/pmf.h"

namespace smtk::testing {

// Flat Dirichlet draw. With `min_mass` > 0 every entry is at least that.
inline Pmf RandomPmf(std::mt19937_64& gen, int size, int offset = 0,
                     double min_mass = 0.0) {
  std::exponential_distribution<double> e(1.0);
  std::vector<double> v(size);
  double s = 0.0;
  for (double& x : v) s += (x = e(gen));
  for (double& x : v) x = min_mass + (1.0 - size * min_mass) * x / s;
  s = 0.0;
  for (double x : v) s += x;
  for (double& x : v) x /= s;
  return ValidatePmf(offset, std::move(v), /*renormalize=*/true);
}

// Pmf whose support is a random subset (at least one symbol).
inline Pmf RandomSparsePmf(std::mt19937_64& gen, int size, int offset = 0) {
  std::bernoulli_distribution keep(0.6);
  std::exponential_distribution<double> e(1.0);
  std::vector<double> v(size, 0.0);
  double s = 0.0;
  for (double& x : v) {
    if (keep(gen)) s += (x = e(gen));
  }
  if (s == 0.0) {
    v[std::uniform_int_distribution<int>(0, size - 1)(gen)] = 1.0;
    s = 1.0;
  }
  for (double& x : v) x /= s;
  return ValidatePmf(offset, std::move(v), /*renormalize=*/true);
}

inline double Uniform(std::mt19937_64& gen, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(gen);
}

// Binary KL divergence D(Bern(a) || Bern(b)) in bits, written out directly.
inline double BinaryKl(double a, double b) {
  auto term = [](double p, double q) {
    if (p <= 0.0) return 0.0;
    if (q <= 0.0) return std::numeric_limits<double>::infinity();
    return p * std::log2(p / q);
  };
  return term(a, b) + term(1.0 - a, 1.0 - b);
}

// Binary h_c, from its definition as two divergences to the mixture.
inline double BinaryHc(double a, double b, double c) {
  const double u = (a + c * b) / (1.0 + c);
  return BinaryKl(a, u) + c * BinaryKl(b, u);
}

// Interval {q in [0, 1] : f(q) <= level} for f convex with f(center) = 0,
// located by bisection on each side.
inline std::pair<double, double> SublevelInterval(
    const std::function<double(double)>& f, double center, double level) {
  auto edge = [&](double inside, double outside) {
    if (f(outside) <= level) return outside;
    for (int it = 0; it < 60; ++it) {
      const double mid = 0.5 * (inside + outside);
      (f(mid) <= level ? inside : outside) = mid;
    }
    return inside;
  };
  return {edge(center, 0.0), edge(center, 1.0)};
}

inline double Clamp(double v, double lo, double hi) {
  return std::min(std::max(v, lo), hi);
}

// Minimum of a continuous function on [lo, hi]: dense grid with step at most
// `step`, endpoints included, then golden-section polish around the best
// grid point.
inline double GridMinimum(const std::function<double(double)>& f, double lo,
                          double hi, double step) {
  const int count = std::max(1, static_cast<int>(std::ceil((hi - lo) / step)));
  double best = f(lo);
  int best_i = 0;
  for (int i = 1; i <= count; ++i) {
    const double v = f(i == count ? hi : lo + (hi - lo) * i / count);
    if (v < best) {
      best = v;
      best_i = i;
    }
  }
  double a = lo + (hi - lo) * std::max(0, best_i - 1) / count;
  double b = lo + (hi - lo) * std::min(count, best_i + 1) / count;
  const double g = (std::sqrt(5.0) - 1.0) / 2.0;
  for (int it = 0; it < 100; ++it) {
    const double x1 = b - g * (b - a);
    const double x2 = a + g * (b - a);
    if (f(x1) < f(x2)) {
      b = x2;
    } else {
      a = x1;
    }
  }
  return std::min(best, f(0.5 * (a + b)));
}

// Binary instances: every pmf is Bern(prob of symbol 1); the transport cost
// between the two symbols is 1 for Hamming and every lp cost, so the EMD is
// |a - b| and the budget moves the parameter by at most l_max.

// Attack: min over z with |z - y| <= l of D(Bern(z) || Bern(x)).
inline double BinaryAttackOracle(double y, double x, double l) {
  return BinaryKl(Clamp(x, std::max(0.0, y - l), std::min(1.0, y + l)), x);
}

inline double BinaryAttackTrOracle(double y, double t, double l, double c) {
  return BinaryHc(Clamp(t, std::max(0.0, y - l), std::min(1.0, y + l)), t, c);
}

// min over P within l of p_x of D(P || p_y).
inline double BinaryFnOracle(double x, double y, double l) {
  return BinaryKl(Clamp(y, std::max(0.0, x - l), std::min(1.0, x + l)), y);
}

// As above with the centre replaced by the divergence ball of radius lambda.
inline double BinaryFnLambdaOracle(double x, double y, double l,
                                   double lambda) {
  const auto [lo, hi] = SublevelInterval(
      [&](double q) { return BinaryKl(q, x); }, x, lambda);
  return BinaryKl(Clamp(y, std::max(0.0, lo - l), std::min(1.0, hi + l)), y);
}

// Training game: outer minimization over R by dense line search.
inline double BinaryTrOracle(double x, double y, double l, double c,
                             double lambda, double step = 1e-5) {
  auto inner = [&](double r) {
    double lo = r, hi = r;
    if (lambda > 0.0) {
      std::tie(lo, hi) = SublevelInterval(
          [&](double q) { return BinaryHc(q, r, c); }, r, lambda);
    }
    const double p = Clamp(y, std::max(0.0, lo - l), std::min(1.0, hi + l));
    return c * BinaryKl(r, x) + BinaryKl(p, y);
  };
  return GridMinimum(inner, 0.0, 1.0, step);
}

}  // namespace smtk::testing

#endif  // SMTK_TESTS_TEST_UTIL_H_
