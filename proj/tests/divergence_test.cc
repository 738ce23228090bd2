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

#include <cmath>
#include <limits>
#include <random>

#include "gtest/gtest.h"
#include "smtk/errors.h"
#include "test_util.h"

namespace smtk {
namespace {

TEST(KlDivergenceTest, Examples) {
  const Pmf p(0, {0.5, 0.5});
  EXPECT_EQ(KlDivergence(p, p), 0.0);
  EXPECT_NEAR(KlDivergence(p, Pmf(0, {0.25, 0.75})),
              0.5 * std::log2(2.0) + 0.5 * std::log2(2.0 / 3.0), 1e-15);
  EXPECT_NEAR(KlDivergence(p, Pmf(0, {0.25, 0.75})), 0.2075, 1e-4);
  EXPECT_EQ(KlDivergence(p, Pmf(0, {1.0, 0.0})),
            std::numeric_limits<double>::infinity());
  EXPECT_EQ(KlDivergence(Pmf(0, {1.0, 0.0}), p), 1.0);
}

TEST(KlDivergenceTest, AlphabetMismatch) {
  EXPECT_THROW(KlDivergence(Pmf(0, {1.0}), Pmf(0, {0.5, 0.5})), InputError);
  EXPECT_THROW(KlDivergence(Pmf(1, {0.5, 0.5}), Pmf(0, {0.5, 0.5})),
               InputError);
}

TEST(KlDivergenceTest, DenormalMassCountsAsZero) {
  EXPECT_EQ(KlDivergence(std::vector<double>{1e-310, 1.0},
                         std::vector<double>{0.0, 1.0}),
            0.0);
}

TEST(HcDivergenceTest, Examples) {
  const Pmf p(0, {0.3, 0.7});
  for (double c : {0.1, 1.0, 7.0}) EXPECT_EQ(HcDivergence(p, p, c), 0.0);
  EXPECT_NEAR(HcDivergence(Pmf(0, {1, 0}), Pmf(0, {0, 1}), 1.0), 2.0, 1e-15);
  EXPECT_THROW(HcDivergence(p, p, 0.0), InputError);
  EXPECT_THROW(HcDivergence(p, p, -1.0), InputError);
}

TEST(HcDivergenceTest, MatchesMixtureDefinition) {
  std::mt19937_64 gen(3);
  for (int trial = 0; trial < 100; ++trial) {
    const Pmf p = testing::RandomSparsePmf(gen, 4);
    const Pmf q = testing::RandomSparsePmf(gen, 4);
    const double c = testing::Uniform(gen, 0.1, 5.0);
    std::vector<double> u(4);
    for (int a = 0; a < 4; ++a) u[a] = (p[a] + c * q[a]) / (1 + c);
    const double expected =
        KlDivergence(p.probs(), u) + c * KlDivergence(q.probs(), u);
    EXPECT_NEAR(HcDivergence(p, q, c), expected, 1e-12);
  }
}

TEST(DivergencePropertyTest, NonnegativeAndZeroOnlyOnEqualInputs) {
  std::mt19937_64 gen(5);
  for (int trial = 0; trial < 300; ++trial) {
    const int k = 2 + trial % 7;
    const Pmf p = testing::RandomPmf(gen, k);
    const Pmf q = testing::RandomPmf(gen, k);
    EXPECT_GT(KlDivergence(p, q), 0.0);
    EXPECT_GT(HcDivergence(p, q, 1.0), 0.0);
    EXPECT_LE(KlDivergence(p, p), 1e-12);
    EXPECT_LE(HcDivergence(q, q, 2.5), 1e-12);
  }
}

TEST(DivergencePropertyTest, HcNeverExceedsKl) {
  std::mt19937_64 gen(17);
  for (int k : {2, 4, 8}) {
    for (double c : {0.5, 1.0, 4.0}) {
      for (int trial = 0; trial < 1000; ++trial) {
        const Pmf p = testing::RandomSparsePmf(gen, k);
        const Pmf q = testing::RandomPmf(gen, k);
        ASSERT_LE(HcDivergence(p, q, c), KlDivergence(p, q) + 1e-12)
            << "k=" << k << " c=" << c;
      }
    }
  }
}

TEST(DivergencePropertyTest, KlJointlyConvex) {
  std::mt19937_64 gen(19);
  for (int trial = 0; trial < 500; ++trial) {
    const int k = 2 + trial % 6;
    const Pmf p1 = testing::RandomPmf(gen, k), p2 = testing::RandomPmf(gen, k);
    const Pmf q1 = testing::RandomPmf(gen, k), q2 = testing::RandomPmf(gen, k);
    const double w = testing::Uniform(gen, 0.0, 1.0);
    std::vector<double> pm(k), qm(k);
    for (int a = 0; a < k; ++a) {
      pm[a] = w * p1[a] + (1 - w) * p2[a];
      qm[a] = w * q1[a] + (1 - w) * q2[a];
    }
    EXPECT_LE(KlDivergence(pm, qm),
              w * KlDivergence(p1, q1) + (1 - w) * KlDivergence(p2, q2) + 1e-12);
  }
}

}  // namespace
}  // namespace smtk
