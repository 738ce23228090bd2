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

#include "smtk/game.h"

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <map>
#include <mutex>
#include <thread>
#include <vector>

#include "smtk/divergence.h"
#include "smtk/errors.h"
#include "smtk/exponent.h"
#include "smtk/rng.h"

namespace smtk {
namespace {

// Stream layout per trial.
constexpr uint64_t kStreamsPerTrial = 8;
enum Leg : uint64_t {
  kNullTest = 0,
  kNullTraining = 1,
  kAltSource = 2,
  kAltTraining = 3,
  kAltShuffle = 4,
};

uint64_t StreamSeed(uint64_t seed, int64_t trial, Leg leg) {
  return Rng::Mix(seed, static_cast<uint64_t>(trial) * kStreamsPerTrial + leg);
}

void Validate(const GameConfig& cfg) {
  if (cfg.p_x.alphabet() != cfg.p_y.alphabet()) {
    throw InputError("p_x and p_y must share an alphabet");
  }
  if (cfg.n < 1) throw InputError("n must be at least 1");
  if (!(cfg.lambda > 0.0) || !std::isfinite(cfg.lambda)) {
    throw InputError("lambda must be positive");
  }
  if (cfg.trials < 1) throw InputError("trials must be at least 1");
  if (cfg.mode == GameMode::kTr) {
    if (!(cfg.c > 0.0) || !std::isfinite(cfg.c)) {
      throw InputError("c must be positive");
    }
    if (std::llround(cfg.c * cfg.n) < 1) {
      throw InputError("training length round(c n) must be at least 1");
    }
  }
}

using CountKey = std::vector<int64_t>;

struct Worker {
  const GameConfig& cfg;
  int64_t big_n;
  std::map<std::pair<CountKey, CountKey>, TransportMap> cache;
  int64_t fp = 0;
  int64_t fn = 0;

  const TransportMap& AttackMap(const Sequence& y, const Pmf& type_y,
                                const Sequence* t, const Pmf* type_t) {
    std::pair<CountKey, CountKey> key{y.Counts(),
                                      t ? t->Counts() : CountKey{}};
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    AttackSolution sol =
        type_t ? OptimalAttackMapTr(type_y, *type_t, cfg.budget, cfg.c)
               : OptimalAttackMap(type_y, cfg.p_x, cfg.budget);
    return cache.emplace(std::move(key), std::move(sol.map)).first->second;
  }

  void RunTrial(int64_t trial) {
    const bool tr = cfg.mode == GameMode::kTr;
    const int k = cfg.p_x.size();
    const int off = cfg.p_x.offset();
    // Null hypothesis: the observed sequence really comes from X.
    {
      const Sequence x =
          SampleSequence(cfg.p_x, cfg.n, StreamSeed(cfg.seed, trial, kNullTest));
      const Pmf type_x = EmpiricalType(x, k, off);
      bool accept;
      if (tr) {
        const Sequence t = SampleSequence(
            cfg.p_x, big_n, StreamSeed(cfg.seed, trial, kNullTraining));
        accept = DefenderAcceptsTr(type_x, EmpiricalType(t, k, off),
                                   cfg.lambda, cfg.n, big_n);
      } else {
        accept = DefenderAcceptsKs(type_x, cfg.p_x, cfg.lambda, cfg.n);
      }
      if (!accept) ++fp;
    }
    // Alternative: Y's output, rewritten by the attacker.
    {
      const Sequence y =
          SampleSequence(cfg.p_y, cfg.n, StreamSeed(cfg.seed, trial, kAltSource));
      const Pmf type_y = EmpiricalType(y, k, off);
      bool accept;
      if (tr) {
        const Sequence t = SampleSequence(
            cfg.p_x, big_n, StreamSeed(cfg.seed, trial, kAltTraining));
        const Pmf type_t = EmpiricalType(t, k, off);
        const TransportMap& map = AttackMap(y, type_y, &t, &type_t);
        const Sequence z = ApplyMapToSequence(
            y, map, StreamSeed(cfg.seed, trial, kAltShuffle));
        accept = DefenderAcceptsTr(EmpiricalType(z, k, off), type_t,
                                   cfg.lambda, cfg.n, big_n);
      } else {
        const TransportMap& map = AttackMap(y, type_y, nullptr, nullptr);
        const Sequence z = ApplyMapToSequence(
            y, map, StreamSeed(cfg.seed, trial, kAltShuffle));
        accept = DefenderAcceptsKs(EmpiricalType(z, k, off), cfg.p_x,
                                   cfg.lambda, cfg.n);
      }
      if (accept) ++fn;
    }
  }
};

}  // namespace

bool DefenderAcceptsKs(const Pmf& type_x, const Pmf& p_x, double lambda,
                       int64_t n) {
  if (n < 1) throw InputError("n must be at least 1");
  const double threshold =
      lambda - type_x.size() * std::log2(static_cast<double>(n) + 1.0) / n;
  if (!(threshold > 0.0)) return false;
  return KlDivergence(type_x, p_x) < threshold;
}

bool DefenderAcceptsTr(const Pmf& type_x, const Pmf& type_t, double lambda,
                       int64_t n, int64_t big_n) {
  if (n < 1 || big_n < 1) throw InputError("n and N must be at least 1");
  const double threshold =
      lambda - type_x.size() *
                   std::log2((static_cast<double>(n) + 1.0) *
                             (static_cast<double>(big_n) + 1.0)) /
                   n;
  if (!(threshold > 0.0)) return false;
  const double c = static_cast<double>(big_n) / static_cast<double>(n);
  return HcDivergence(type_x, type_t, c) < threshold;
}

int ResolveThreadCount(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("SMTK_THREADS")) {
    const int v = std::atoi(env);
    if (v > 0) return v;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

GameOutcome SimulateGame(const GameConfig& cfg) {
  Validate(cfg);
  const int64_t big_n =
      cfg.mode == GameMode::kTr ? std::llround(cfg.c * cfg.n) : 0;
  const int threads = static_cast<int>(
      std::min<int64_t>(ResolveThreadCount(cfg.threads), cfg.trials));

  std::vector<Worker> workers;
  workers.reserve(threads);
  for (int w = 0; w < threads; ++w) workers.push_back(Worker{cfg, big_n, {}});
  std::atomic<int64_t> next{0};
  std::exception_ptr error;
  std::mutex error_mu;
  auto run = [&](Worker& worker) {
    try {
      // Trials are claimed in small blocks; each trial's outcome depends
      // only on its index, so the claim order does not matter.
      constexpr int64_t kBlock = 64;
      for (;;) {
        const int64_t begin = next.fetch_add(kBlock);
        if (begin >= cfg.trials) break;
        const int64_t end = std::min(cfg.trials, begin + kBlock);
        for (int64_t t = begin; t < end; ++t) worker.RunTrial(t);
      }
    } catch (...) {
      std::lock_guard<std::mutex> lock(error_mu);
      if (!error) error = std::current_exception();
      next.store(cfg.trials);
    }
  };
  if (threads == 1) {
    run(workers[0]);
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < threads; ++w) pool.emplace_back(run, std::ref(workers[w]));
    for (auto& th : pool) th.join();
  }
  if (error) std::rethrow_exception(error);

  GameOutcome out;
  for (const Worker& w : workers) {
    out.fp_count += w.fp;
    out.fn_count += w.fn;
  }
  out.trials = cfg.trials;
  out.training_length = big_n;
  out.fp_rate = static_cast<double>(out.fp_count) / cfg.trials;
  out.fn_rate = static_cast<double>(out.fn_count) / cfg.trials;
  out.empirical_fn_exponent =
      -std::log2(static_cast<double>(out.fn_count + 1) /
                 static_cast<double>(cfg.trials + 1)) /
      cfg.n;
  out.fp_bound = std::exp2(-cfg.lambda * cfg.n);
  if (cfg.mode == GameMode::kKs) {
    out.theoretical_exponent =
        FnErrorExponentLambda(cfg.p_x, cfg.p_y, cfg.lambda, cfg.budget)
            .epsilon_bits;
  } else if (cfg.p_x.size() <= kTrMaxAlphabet) {
    out.theoretical_exponent =
        TrErrorExponent(cfg.p_x, cfg.p_y, cfg.budget, cfg.c, cfg.lambda)
            .epsilon_bits;
  } else {
    out.theoretical_exponent = std::nan("");
  }
  return out;
}

}  // namespace smtk
