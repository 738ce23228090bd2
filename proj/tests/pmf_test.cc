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

#include "smtk/pmf.h"

#include <cmath>
#include <random>

#include "gtest/gtest.h"
#include "smtk/errors.h"
#include "test_util.h"

namespace smtk {
namespace {

TEST(EmpiricalTypeTest, CountsSymbols) {
  EXPECT_EQ(EmpiricalType(Sequence({0, 0, 1, 1}, {0, 2}), 2, 0).probs(),
            (std::vector<double>{0.5, 0.5}));
  EXPECT_EQ(EmpiricalType(Sequence({2, 2, 2}, {0, 4}), 4, 0).probs(),
            (std::vector<double>{0, 0, 1, 0}));
  const Pmf t = EmpiricalType(Sequence({0, 1, 1, 2, 2, 2}, {0, 3}), 3, 0);
  EXPECT_DOUBLE_EQ(t[0], 1.0 / 6);
  EXPECT_DOUBLE_EQ(t[1], 2.0 / 6);
  EXPECT_DOUBLE_EQ(t[2], 3.0 / 6);
}

TEST(EmpiricalTypeTest, RejectsSymbolOutsideAlphabet) {
  EXPECT_THROW(EmpiricalType(Sequence({0, 3}, {0, 4}), 3, 0), InputError);
  EXPECT_THROW(Sequence({0, 5}, {0, 4}), InputError);
}

TEST(EmpiricalTypeTest, EntriesAreMultiplesOfOneOverN) {
  std::mt19937_64 gen(7);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 1 + static_cast<int>(gen() % 200);
    const Pmf p = testing::RandomPmf(gen, 5, -2);
    const Pmf t = EmpiricalType(SampleSequence(p, n, gen()));
    for (double v : t.probs()) {
      EXPECT_NEAR(v * n, std::round(v * n), 1e-9);
    }
  }
}

TEST(ValidatePmfTest, Tolerances) {
  EXPECT_EQ(ValidatePmf(0, {0.5, 0.5}, false).probs(),
            (std::vector<double>{0.5, 0.5}));
  const Pmf r = ValidatePmf(0, {0.5, 0.5000004}, true);
  EXPECT_NEAR(r[0] + r[1], 1.0, 1e-15);
  EXPECT_THROW(ValidatePmf(0, {0.5, 0.5000004}, false), InputError);
  EXPECT_THROW(ValidatePmf(0, {0.5, 0.51}, true), InputError);
  EXPECT_THROW(ValidatePmf(0, {-0.1, 1.1}, true), InputError);
  EXPECT_THROW(ValidatePmf(0, {0.0, 0.0}, true), InputError);
}

TEST(CdfTest, RunningSums) {
  EXPECT_EQ(CumulativeOf(Pmf(0, {1.0})).cums, (std::vector<double>{1.0}));
  EXPECT_EQ(CumulativeOf(Pmf(0, {0.25, 0.25, 0.5})).cums,
            (std::vector<double>{0.25, 0.5, 1.0}));
  const Cdf c = CumulativeOf(Pmf(3, {0.0, 0.3, 0.7}));
  EXPECT_EQ(c.offset, 3);
  EXPECT_DOUBLE_EQ(c.cums[1], 0.3);
  EXPECT_DOUBLE_EQ(c.cums[2], 1.0);
}

TEST(CdfTest, MonotoneAndEndsAtOne) {
  std::mt19937_64 gen(11);
  for (int trial = 0; trial < 200; ++trial) {
    const Cdf c = CumulativeOf(testing::RandomSparsePmf(gen, 1 + trial % 9));
    for (size_t i = 1; i < c.cums.size(); ++i) {
      EXPECT_LE(c.cums[i - 1], c.cums[i]);
    }
    EXPECT_NEAR(c.cums.back(), 1.0, 1e-9);
  }
}

TEST(SampleSequenceTest, DegenerateAndDeterministic) {
  EXPECT_EQ(SampleSequence(Pmf(0, {0, 1, 0}), 5, 3).symbols(),
            (std::vector<int>{1, 1, 1, 1, 1}));
  const Pmf p(4, {0.2, 0.3, 0.5});
  EXPECT_EQ(SampleSequence(p, 1000, 42).symbols(),
            SampleSequence(p, 1000, 42).symbols());
  EXPECT_NE(SampleSequence(p, 1000, 42).symbols(),
            SampleSequence(p, 1000, 43).symbols());
  EXPECT_THROW(SampleSequence(p, 0, 1), InputError);
}

TEST(SampleSequenceTest, FairCoinConcentrates) {
  const Pmf t = EmpiricalType(SampleSequence(Pmf::Bernoulli(0.5), 100000, 5));
  EXPECT_NEAR(t[0], 0.5, 0.01);
}

// Types of i.i.d. samples approach the source: total variation at most
// 3 sqrt(|X| / n) on at least 99% of seeded draws.
TEST(SampleSequenceTest, TypeConvergesToSource) {
  std::mt19937_64 gen(13);
  for (int k : {2, 5, 10}) {
    for (int n : {100, 1000, 10000}) {
      const Pmf p = testing::RandomPmf(gen, k);
      int within = 0;
      const int draws = 200;
      for (int s = 0; s < draws; ++s) {
        const Pmf t = EmpiricalType(SampleSequence(p, n, 1000 * k + s));
        if (TotalVariation(t, p) <= 3.0 * std::sqrt(double(k) / n)) ++within;
      }
      EXPECT_GE(within, 0.99 * draws) << "k=" << k << " n=" << n;
    }
  }
}

TEST(PmfTest, EmbeddingAndJointAlphabet) {
  const Pmf p(2, {0.5, 0.5});
  const Alphabet j = JointAlphabet(p.alphabet(), Alphabet{0, 2});
  EXPECT_EQ(j, (Alphabet{0, 4}));
  EXPECT_EQ(p.Embedded(j).probs(), (std::vector<double>{0, 0, 0.5, 0.5}));
  EXPECT_EQ(p.AtSymbol(3), 0.5);
  EXPECT_EQ(p.AtSymbol(7), 0.0);
}

}  // namespace
}  // namespace smtk
