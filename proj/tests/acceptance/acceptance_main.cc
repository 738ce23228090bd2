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

// Acceptance checks AC1-AC12. Prints one PASS/FAIL line per criterion and
// exits nonzero if any fails. A criterion passes only if its check holds and
// it finishes inside its time limit.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "../test_util.h"
#include "smtk/attack.h"
#include "smtk/continuous.h"
#include "smtk/divergence.h"
#include "smtk/exponent.h"
#include "smtk/game.h"
#include "smtk/security_margin.h"
#include "smtk/transport.h"

namespace smtk {
namespace {

struct Check {
  bool ok = true;
  std::ostringstream detail;

  void Expect(bool cond, const std::string& what) {
    if (!cond && ok) detail << "first failure: " << what << "; ";
    ok = ok && cond;
  }
};

std::string Fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3g", v);
  return buf;
}

bool RunCriterion(const char* id, const char* name, double limit_s,
                  const std::function<void(Check&)>& body) {
  Check check;
  const auto start = std::chrono::steady_clock::now();
  try {
    body(check);
  } catch (const std::exception& e) {
    check.ok = false;
    check.detail << "exception: " << e.what() << "; ";
  }
  const double secs = std::chrono::duration<double>(
                          std::chrono::steady_clock::now() - start)
                          .count();
  if (secs > limit_s) {
    check.ok = false;
    check.detail << "over time limit " << limit_s << " s; ";
  }
  std::printf("%s %s  %s: %s(%.2f s)\n", id, check.ok ? "PASS" : "FAIL", name,
              check.detail.str().c_str(), secs);
  std::fflush(stdout);
  return check.ok;
}

void Ac1(Check& check) {
  std::mt19937_64 gen(101);
  double worst = 0.0;
  for (int i = 0; i < 50; ++i) {
    const double p = testing::Uniform(gen, 0, 1);
    const double q = testing::Uniform(gen, 0, 1);
    const double v = SecurityMargin(Pmf::Bernoulli(p), Pmf::Bernoulli(q),
                                    CostSpec::Hamming()).value;
    worst = std::max(worst, std::abs(v - std::abs(p - q)));
  }
  check.Expect(worst <= 1e-12, "|sm - |p-q|| = " + Fmt(worst));
  check.detail << "max error " << Fmt(worst) << " ";
}

void Ac2(Check& check) {
  std::mt19937_64 gen(102);
  double worst = 0.0;
  for (int k = 2; k <= 12; ++k) {
    for (int i = 0; i < 200; ++i) {
      const Pmf p = testing::RandomSparsePmf(gen, k);
      const Pmf q = testing::RandomSparsePmf(gen, k);
      for (const CostSpec& c : {CostSpec::Lp(1), CostSpec::Lp(2)}) {
        const double nwc = MapCost(NwcMap(p, q), c);
        const double lp = MinCostFlowEmd(p, q, c).value;
        worst = std::max(worst, std::abs(nwc - lp));
      }
    }
  }
  check.Expect(worst <= 1e-9, "nwc vs min-cost flow " + Fmt(worst));
  check.detail << "max |nwc - lp| " << Fmt(worst) << " ";
}

void Ac3(Check& check) {
  std::mt19937_64 gen(103);
  double worst = 0.0;
  for (int i = 0; i < 500; ++i) {
    const int k = 2 + i % 15;
    const Pmf p = testing::RandomSparsePmf(gen, k, -3);
    const Pmf q = testing::RandomSparsePmf(gen, k, -3);
    worst = std::max(worst, std::abs(EmdL1ClosedForm(p, q) -
                                     Emd(p, q, CostSpec::Lp(1))));
  }
  check.Expect(worst <= 1e-9, "closed form vs emd " + Fmt(worst));
  check.detail << "max error " << Fmt(worst) << " ";
}

// All compositions of `total` into `parts` nonnegative parts.
void Compositions(int total, int parts, std::vector<int>& cur,
                  std::vector<std::vector<int>>& out) {
  if (static_cast<int>(cur.size()) == parts - 1) {
    cur.push_back(total);
    out.push_back(cur);
    cur.pop_back();
    return;
  }
  for (int v = 0; v <= total; ++v) {
    cur.push_back(v);
    Compositions(total - v, parts, cur, out);
    cur.pop_back();
  }
}

void Ac4(Check& check) {
  int64_t pairs = 0, plans = 0, mismatches = 0;
  for (int k = 1; k <= 4; ++k) {
    for (int total = 5; total <= 8; ++total) {
      std::vector<std::vector<int>> comps;
      std::vector<int> cur;
      Compositions(total, k, cur, comps);
      for (const auto& a : comps) {
        for (const auto& b : comps) {
          int best = k;
          ForEachIntegerPlan(a, b, [&](const Eigen::MatrixXi& plan) {
            ++plans;
            int worst = 0;
            for (int i = 0; i < k; ++i) {
              for (int j = 0; j < k; ++j) {
                if (plan(i, j) > 0) worst = std::max(worst, std::abs(i - j));
              }
            }
            best = std::min(best, worst);
          });
          std::vector<double> pa(a.begin(), a.end()), pb(b.begin(), b.end());
          for (double& v : pa) v /= total;
          for (double& v : pb) v /= total;
          const Pmf p(0, pa), q(0, pb);
          const int nwc = LinfCost(NwcMap(p, q));
          const double margin = SecurityMarginLinf(p, q).value;
          if (nwc != best || margin != best) ++mismatches;
          ++pairs;
        }
      }
    }
  }
  check.Expect(mismatches == 0, std::to_string(mismatches) + " mismatches");
  check.detail << pairs << " marginal pairs, " << plans << " plans, "
               << mismatches << " mismatches ";
}

void Ac5(Check& check) {
  const double base =
      SmContinuous(ContinuousSource::Gaussian(0, 1), ContinuousSource::Gaussian(2, 3),
                   2.0, 100000).value;
  double worst = std::abs(base - 8.0) / 8.0;
  std::mt19937_64 gen(105);
  for (int family = 0; family < 2; ++family) {
    for (int i = 0; i < 5; ++i) {
      const double mx = testing::Uniform(gen, -5, 5), sx = testing::Uniform(gen, 0.2, 4);
      const double my = testing::Uniform(gen, -5, 5), sy = testing::Uniform(gen, 0.2, 4);
      const auto x = family ? ContinuousSource::Laplacian(mx, sx)
                            : ContinuousSource::Gaussian(mx, sx);
      const auto y = family ? ContinuousSource::Laplacian(my, sy)
                            : ContinuousSource::Gaussian(my, sy);
      const double exact = (mx - my) * (mx - my) + (sx - sy) * (sx - sy);
      const double v = SmContinuous(x, y, 2.0, 100000).value;
      worst = std::max(worst, std::abs(v - exact) / exact);
    }
  }
  check.Expect(worst <= 0.01, "relative error " + Fmt(worst));
  check.detail << "N(0,1) vs N(2,3): " << Fmt(base) << ", max relative error "
               << Fmt(worst) << " ";
}

void Ac6(Check& check) {
  std::mt19937_64 gen(106);
  double worst = -INFINITY;
  for (int i = 0; i < 20; ++i) {
    const double mx = testing::Uniform(gen, -5, 5), sx = testing::Uniform(gen, 0.2, 4);
    const double my = testing::Uniform(gen, -5, 5), sy = testing::Uniform(gen, 0.2, 4);
    const auto x = i % 2 ? ContinuousSource::Laplacian(mx, sx)
                         : ContinuousSource::Gaussian(mx, sx);
    const auto y = i % 2 ? ContinuousSource::Gaussian(my, sy)
                         : ContinuousSource::Laplacian(my, sy);
    const double v = SmContinuous(x, y, 2.0).value;
    worst = std::max(worst, v - SmUpperBound(mx, sx, my, sy));
  }
  check.Expect(worst <= 1e-6, "bound exceeded by " + Fmt(worst));
  check.detail << "max (sm - bound) " << Fmt(worst) << " ";
}

void Ac7(Check& check) {
  std::mt19937_64 gen(107);
  int instances = 0;
  for (int k : {2, 4}) {
    for (int i = 0; i < 10; ++i) {
      const Pmf p_y = testing::RandomPmf(gen, k, 0, 0.02);
      const Pmf p_x = testing::RandomPmf(gen, k, 0, 0.02);
      const CostSpec cost = CostSpec::Lp(1);
      const double emd = Emd(p_y, p_x, cost);
      const std::vector<double> budgets = {0.0,        0.25 * emd, 0.5 * emd,
                                           0.9 * emd,  emd - 1e-6, emd,
                                           emd + 1e-6, 1.5 * emd};
      double previous = INFINITY;
      for (double l : budgets) {
        const AttackSolution s =
            OptimalAttackMap(p_y, p_x, DistortionBudget::Additive(cost, l));
        const std::string tag = "k=" + std::to_string(k) + " L=" + Fmt(l) +
                                " emd=" + Fmt(emd);
        check.Expect(s.objective_bits <= previous + 1e-9, "increase at " + tag);
        previous = s.objective_bits;
        if (l >= emd) {
          check.Expect(s.objective_bits <= 1e-6, "not zero at " + tag);
        } else {
          const Pmf z = s.map.ColMarginal();
          double diff = 0.0;
          for (int j = 0; j < k; ++j) diff = std::max(diff, std::abs(z[j] - p_x[j]));
          check.Expect(s.objective_bits > 0.0 && diff > 0.0,
                       "target reached below threshold at " + tag);
        }
      }
      ++instances;
    }
  }
  check.detail << instances << " instances ";
}

void Ac8(Check& check) {
  std::mt19937_64 gen(108);
  double worst = 0.0, oracle_err = 0.0, oracle_gap = 0.0;
  bool monotone = true;
  for (int i = 0; i < 20; ++i) {
    const int k = 2 + i % 2;
    const Pmf p_x = testing::RandomPmf(gen, k, 0, 0.02);
    const Pmf p_y = testing::RandomPmf(gen, k, 0, 0.02);
    const auto budget = DistortionBudget::Additive(
        CostSpec::Lp(1), 0.5 * Emd(p_x, p_y, CostSpec::Lp(1)));
    const double limit = FnErrorExponent(p_x, p_y, budget).epsilon_bits;
    const double small = FnErrorExponentLambda(p_x, p_y, 1e-6, budget).epsilon_bits;
    worst = std::max(worst, std::abs(limit - small));
    if (k == 2) {
      // The line-search oracle shows whether a gap comes from the solver.
      const double x = p_x[1], y = p_y[1];
      const double l = 0.5 * std::abs(x - y);
      oracle_err = std::max(
          oracle_err,
          std::abs(small - testing::BinaryFnLambdaOracle(x, y, l, 1e-6)));
      oracle_gap = std::max(oracle_gap,
                            std::abs(testing::BinaryFnOracle(x, y, l) -
                                     testing::BinaryFnLambdaOracle(x, y, l, 1e-6)));
    }
    double previous = INFINITY;
    for (double lambda : {0.001, 0.01, 0.05, 0.1}) {
      const double e = FnErrorExponentLambda(p_x, p_y, lambda, budget).epsilon_bits;
      monotone = monotone && e <= previous + 1e-9;
      previous = e;
    }
  }
  check.Expect(worst <= 1e-4, "|eps(1e-6) - eps(0)| = " + Fmt(worst));
  check.Expect(monotone, "eps(lambda) increased");
  check.detail << "max |eps(1e-6) - eps(0)| " << Fmt(worst) << ", monotone "
               << (monotone ? "yes" : "no") << "; binary oracle: solver error "
               << Fmt(oracle_err) << ", oracle gap " << Fmt(oracle_gap) << " ";
}

void Ac9(Check& check) {
  std::mt19937_64 gen(109);
  double worst = 0.0;
  for (int i = 0; i < 8; ++i) {
    const double x = testing::Uniform(gen, 0.05, 0.95);
    const double y = testing::Uniform(gen, 0.05, 0.95);
    const double l = testing::Uniform(gen, 0.0, 0.3);
    const double lambda = testing::Uniform(gen, 0.005, 0.1);
    const double c = testing::Uniform(gen, 0.5, 3.0);
    const Pmf px = Pmf::Bernoulli(x), py = Pmf::Bernoulli(y);
    const auto budget = DistortionBudget::Additive(CostSpec::Hamming(), l);
    const double errs[] = {
        FnErrorExponent(px, py, budget).epsilon_bits - testing::BinaryFnOracle(x, y, l),
        FnErrorExponentLambda(px, py, lambda, budget).epsilon_bits -
            testing::BinaryFnLambdaOracle(x, y, l, lambda),
        TrErrorExponent(px, py, budget, c, 0.0).epsilon_bits -
            testing::BinaryTrOracle(x, y, l, c, 0.0),
        TrErrorExponent(px, py, budget, c, lambda).epsilon_bits -
            testing::BinaryTrOracle(x, y, l, c, lambda),
    };
    for (double e : errs) worst = std::max(worst, std::abs(e));
  }
  check.Expect(worst <= 1e-5, "oracle error " + Fmt(worst));
  check.detail << "max oracle error " << Fmt(worst) << " ";
}

// Exact probability that a Bern(p) sequence of length n fails the known
// source test, by summing the binomial law over rejected types.
double ExactFalsePositive(double p, int n, double lambda) {
  double total = 0.0;
  const Pmf src = Pmf::Bernoulli(p);
  for (int k = 0; k <= n; ++k) {
    if (DefenderAcceptsKs(Pmf::Bernoulli(double(k) / n), src, lambda, n)) continue;
    const double log_mass = std::lgamma(n + 1.0) - std::lgamma(k + 1.0) -
                            std::lgamma(n - k + 1.0) + k * std::log(p) +
                            (n - k) * std::log1p(-p);
    total += std::exp(log_mass);
  }
  return total;
}

GameConfig Bern37(int64_t n, double l_max, int64_t trials) {
  return GameConfig{
      .p_x = Pmf::Bernoulli(0.3),
      .p_y = Pmf::Bernoulli(0.7),
      .n = n,
      .c = 1.0,
      .lambda = 0.05,
      .budget = DistortionBudget::Additive(CostSpec::Hamming(), l_max),
      .trials = trials,
      .seed = 2026,
      .mode = GameMode::kKs,
      .threads = 0,
  };
}

void Ac10(Check& check) {
  const GameOutcome out = SimulateGame(Bern37(500, 0.1, 10000));
  check.Expect(out.fp_rate <= out.fp_bound,
               "fp_rate " + Fmt(out.fp_rate) + " > bound " + Fmt(out.fp_bound));
  check.detail << out.fp_count << " false positives in " << out.trials
               << ", bound " << Fmt(out.fp_bound) << ", exact P_fp of the test "
               << Fmt(ExactFalsePositive(0.3, 500, 0.05)) << " ";
}

void Ac11(Check& check) {
  const GameOutcome out = SimulateGame(Bern37(1000, 0.1, 100000));
  const double rel = std::abs(out.empirical_fn_exponent - out.theoretical_exponent) /
                     out.theoretical_exponent;
  check.Expect(rel <= 0.25, "relative gap " + Fmt(rel));
  const GameOutcome margin = SimulateGame(Bern37(1000, 0.4, 100000));
  check.Expect(margin.fn_rate >= 0.9, "fn_rate at margin " + Fmt(margin.fn_rate));
  check.detail << "empirical " << Fmt(out.empirical_fn_exponent) << " ("
               << out.fn_count << " fn) vs theory " << Fmt(out.theoretical_exponent)
               << ", relative gap " << Fmt(rel) << "; fn_rate at l_max 0.4 "
               << Fmt(margin.fn_rate) << " ";
}

void Ac12(Check& check) {
  std::mt19937_64 gen(112);
  double worst_c = 0.0;
  for (int i = 0; i < 6; ++i) {
    const double x = testing::Uniform(gen, 0.1, 0.9);
    double y = testing::Uniform(gen, 0.1, 0.9);
    if (std::abs(x - y) < 0.05) y = x < 0.5 ? x + 0.3 : x - 0.3;
    const Pmf px = Pmf::Bernoulli(x), py = Pmf::Bernoulli(y);
    const double emd = std::abs(x - y);
    auto tr = [&](double l, double c) {
      return TrErrorExponent(px, py, DistortionBudget::Additive(CostSpec::Hamming(), l),
                             c, 0.0)
          .epsilon_bits;
    };
    const std::string tag = " at x=" + Fmt(x) + " y=" + Fmt(y);
    check.Expect(tr(emd - 1e-4, 1.0) > 1e-9, "zero below threshold" + tag);
    check.Expect(tr(emd, 1.0) <= 1e-9, "nonzero at threshold" + tag);
    check.Expect(tr(emd + 0.05, 1.0) <= 1e-9, "nonzero above threshold" + tag);
    const double l = 0.5 * emd;
    const auto budget = DistortionBudget::Additive(CostSpec::Hamming(), l);
    const double ks = FnErrorExponent(px, py, budget).epsilon_bits;
    check.Expect(tr(l, 1.0) <= ks + 1e-9, "tr above ks" + tag);
    worst_c = std::max(worst_c, std::abs(tr(l, 1e3) - ks));
  }
  check.Expect(worst_c <= 1e-3, "c=1e3 gap " + Fmt(worst_c));
  check.detail << "max |eps_tr(c=1e3) - eps_ks| " << Fmt(worst_c) << " ";
}

}  // namespace
}  // namespace smtk

int main() {
  using smtk::RunCriterion;
  bool ok = true;
  ok &= RunCriterion("AC1", "bernoulli hamming margin", 1, smtk::Ac1);
  ok &= RunCriterion("AC2", "northwest corner optimality", 30, smtk::Ac2);
  ok &= RunCriterion("AC3", "l1 closed form", 5, smtk::Ac3);
  ok &= RunCriterion("AC4", "linf margin optimality", 60, smtk::Ac4);
  ok &= RunCriterion("AC5", "same-class continuous margin", 10, smtk::Ac5);
  ok &= RunCriterion("AC6", "continuous upper bound", 10, smtk::Ac6);
  ok &= RunCriterion("AC7", "attack threshold behaviour", 30, smtk::Ac7);
  ok &= RunCriterion("AC8", "exponent lambda limit", 120, smtk::Ac8);
  ok &= RunCriterion("AC9", "binary oracle equivalence", 60, smtk::Ac9);
  ok &= RunCriterion("AC10", "simulator false-positive bound", 60, smtk::Ac10);
  ok &= RunCriterion("AC11", "simulator exponent agreement", 300, smtk::Ac11);
  ok &= RunCriterion("AC12", "training-data margin", 180, smtk::Ac12);
  return ok ? 0 : 1;
}
