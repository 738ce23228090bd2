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

// Defender tests and the Monte Carlo simulation of the source
// identification game, with known sources (ks) or training data (tr).

#ifndef SMTK_GAME_H_
#define SMTK_GAME_H_

#include <cstdint>

#include "smtk/attack.h"
#include "smtk/pmf.h"

namespace smtk {

// Accepts iff D(type_x || p_x) < lambda - |X| log2(n + 1) / n.
bool DefenderAcceptsKs(const Pmf& type_x, const Pmf& p_x, double lambda,
                       int64_t n);
// Accepts iff h_c(type_x, type_t) < lambda - |X| log2((n + 1)(N + 1)) / n,
// with c = N / n.
bool DefenderAcceptsTr(const Pmf& type_x, const Pmf& type_t, double lambda,
                       int64_t n, int64_t big_n);

enum class GameMode { kKs, kTr };

struct GameConfig {
  Pmf p_x;
  Pmf p_y;
  int64_t n = 0;
  double c = 1.0;  // training length ratio N / n, tr mode only
  double lambda = 0.0;
  DistortionBudget budget;
  int64_t trials = 0;
  uint64_t seed = 0;
  GameMode mode = GameMode::kKs;
  // Worker threads; 0 reads SMTK_THREADS, else the hardware count.
  int threads = 0;
};

struct GameOutcome {
  int64_t fp_count = 0;
  int64_t fn_count = 0;
  int64_t trials = 0;
  int64_t training_length = 0;  // N, tr mode only
  double fp_rate = 0.0;
  double fn_rate = 0.0;
  // Add-one estimate -log2((fn_count + 1) / (trials + 1)) / n.
  double empirical_fn_exponent = 0.0;
  // Asymptotic exponent at this lambda and budget; NaN when the training
  // program is out of range for the alphabet.
  double theoretical_exponent = 0.0;
  // 2^(-lambda n).
  double fp_bound = 0.0;
};

// Trial t draws from generator streams derived from (seed, t), so results do
// not depend on the thread count.
GameOutcome SimulateGame(const GameConfig& cfg);

int ResolveThreadCount(int requested);

}  // namespace smtk

#endif  // SMTK_GAME_H_
