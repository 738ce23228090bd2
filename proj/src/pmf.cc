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

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "smtk/errors.h"
#include "smtk/rng.h"

namespace smtk {
namespace {

void CheckEntries(const std::vector<double>& probs) {
  if (probs.empty()) throw InputError("pmf has no entries");
  for (double v : probs) {
    if (!std::isfinite(v)) throw InputError("pmf entry is not finite");
    if (v < 0.0) {
      throw InputError("pmf entry is negative: " + std::to_string(v));
    }
  }
}

}  // namespace

Pmf::Pmf(int offset, std::vector<double> probs)
    : offset_(offset), probs_(std::move(probs)) {
  CheckEntries(probs_);
  const double sum = std::accumulate(probs_.begin(), probs_.end(), 0.0);
  if (std::abs(sum - 1.0) > kPmfTolerance) {
    throw InputError("pmf entries sum to " + std::to_string(sum));
  }
}

Pmf Pmf::Uniform(int offset, int size) {
  if (size < 1) throw InputError("uniform pmf needs a nonempty alphabet");
  return Pmf(offset, std::vector<double>(size, 1.0 / size));
}

Pmf Pmf::Bernoulli(double p_one) {
  if (!(p_one >= 0.0 && p_one <= 1.0)) {
    throw InputError("Bernoulli parameter outside [0, 1]");
  }
  return Pmf(0, {1.0 - p_one, p_one});
}

double Pmf::AtSymbol(int symbol) const {
  const int index = symbol - offset_;
  if (index < 0 || index >= size()) return 0.0;
  return probs_[index];
}

Pmf Pmf::Embedded(Alphabet target) const {
  if (offset_ < target.first() || alphabet().last() > target.last()) {
    throw InputError("target alphabet does not contain the pmf support range");
  }
  std::vector<double> out(target.size, 0.0);
  for (int i = 0; i < size(); ++i) out[offset_ - target.offset + i] = probs_[i];
  return Pmf(target.offset, std::move(out));
}

Alphabet JointAlphabet(Alphabet a, Alphabet b) {
  const int lo = std::min(a.first(), b.first());
  const int hi = std::max(a.last(), b.last());
  return {lo, hi - lo + 1};
}

Pmf ValidatePmf(int offset, std::vector<double> probs, bool renormalize) {
  CheckEntries(probs);
  const double sum = std::accumulate(probs.begin(), probs.end(), 0.0);
  if (!(sum > 0.0)) throw InputError("pmf has no positive entry");
  const double dev = std::abs(sum - 1.0);
  if (dev <= kPmfTolerance) return Pmf(offset, std::move(probs));
  if (renormalize && dev <= kRenormalizeTolerance) {
    for (double& v : probs) v /= sum;
    return Pmf(offset, std::move(probs));
  }
  throw InputError("pmf entries sum to " + std::to_string(sum) +
                   (renormalize ? " (beyond renormalization tolerance)"
                                : " (renormalization not requested)"));
}

Sequence::Sequence(std::vector<int> symbols, Alphabet alphabet)
    : symbols_(std::move(symbols)), alphabet_(alphabet) {
  if (alphabet_.size < 1) throw InputError("sequence alphabet is empty");
  if (symbols_.empty()) throw InputError("sequence is empty");
  for (int s : symbols_) {
    if (!alphabet_.Contains(s)) {
      throw InputError("symbol " + std::to_string(s) + " outside alphabet");
    }
  }
}

std::vector<int64_t> Sequence::Counts() const {
  std::vector<int64_t> counts(alphabet_.size, 0);
  for (int s : symbols_) ++counts[s - alphabet_.offset];
  return counts;
}

Pmf TypeFromCounts(std::span<const int64_t> counts, int offset) {
  int64_t n = 0;
  for (int64_t c : counts) {
    if (c < 0) throw InputError("negative count");
    n += c;
  }
  if (n == 0) throw InputError("type of an empty count vector");
  std::vector<double> probs(counts.size());
  for (size_t i = 0; i < counts.size(); ++i) {
    probs[i] = static_cast<double>(counts[i]) / static_cast<double>(n);
  }
  // Each entry is the correctly rounded quotient, so the sum is within a few
  // ulps of 1 and the strict constructor accepts it.
  return Pmf(offset, std::move(probs));
}

Pmf EmpiricalType(const Sequence& seq, int alphabet_size, int offset) {
  const Alphabet target{offset, alphabet_size};
  if (alphabet_size < 1) throw InputError("alphabet size must be positive");
  std::vector<int64_t> counts(alphabet_size, 0);
  for (int s : seq.symbols()) {
    if (!target.Contains(s)) {
      throw InputError("symbol " + std::to_string(s) + " outside alphabet");
    }
    ++counts[s - offset];
  }
  return TypeFromCounts(counts, offset);
}

Pmf EmpiricalType(const Sequence& seq) {
  return EmpiricalType(seq, seq.alphabet().size, seq.alphabet().offset);
}

Cdf CumulativeOf(const Pmf& p) {
  Cdf out{p.offset(), std::vector<double>(p.size())};
  std::partial_sum(p.probs().begin(), p.probs().end(), out.cums.begin());
  // Clamp accumulated roundoff so the sequence stays inside [0, 1].
  for (double& c : out.cums) c = std::min(c, 1.0);
  out.cums.back() = 1.0;
  return out;
}

Sequence SampleSequence(const Pmf& p, int64_t n, uint64_t seed) {
  if (n < 1) throw InputError("sequence length must be at least 1");
  const Cdf cdf = CumulativeOf(p);
  Rng rng(seed, 0);
  std::vector<int> symbols(n);
  for (int64_t t = 0; t < n; ++t) {
    const double u = rng.Uniform();
    auto it = std::upper_bound(cdf.cums.begin(), cdf.cums.end(), u);
    int index = static_cast<int>(it - cdf.cums.begin());
    index = std::min(index, p.size() - 1);
    symbols[t] = p.offset() + index;
  }
  return Sequence(std::move(symbols), p.alphabet());
}

double TotalVariation(const Pmf& p, const Pmf& q) {
  if (p.alphabet() != q.alphabet()) throw InputError("alphabet mismatch");
  double s = 0.0;
  for (int i = 0; i < p.size(); ++i) s += std::abs(p[i] - q[i]);
  return 0.5 * s;
}

}  // namespace smtk
