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

#ifndef SMTK_RNG_H_
#define SMTK_RNG_H_

#include <cstdint>
#include <random>

namespace smtk {

// Deterministic generator keyed by (seed, stream). Streams are decorrelated
// with a SplitMix64 finalizer before seeding the Mersenne Twister, so
// per-trial generators can be derived without shared state. Uniform draws are
// built from raw 64-bit output rather than std distributions, whose algorithms
// differ between standard libraries.
class Rng {
 public:
  Rng(uint64_t seed, uint64_t stream) : engine_(Mix(seed, stream)) {}

  // Uniform on [0, 1) with 53 random bits.
  double Uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  // Uniform integer on [0, bound), rejection-sampled so it is unbiased.
  uint64_t UniformIndex(uint64_t bound) {
    const uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    uint64_t r;
    do {
      r = engine_();
    } while (r >= limit);
    return r % bound;
  }

  static uint64_t Mix(uint64_t seed, uint64_t stream) {
    uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace smtk

#endif  // SMTK_RNG_H_
