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

// Alphabets, probability mass functions, empirical types and sequences.
//
// Every alphabet is a contiguous integer range {offset, ..., offset+size-1};
// all cost functions in the toolkit depend on symbol differences, so the
// numeric embedding is part of the data model.

#ifndef SMTK_PMF_H_
#define SMTK_PMF_H_

#include <cstdint>
#include <span>
#include <vector>

namespace smtk {

// Tolerance on the unit-sum invariant of a Pmf.
inline constexpr double kPmfTolerance = 1e-9;
// Largest unit-sum deviation that ValidatePmf will repair on request.
inline constexpr double kRenormalizeTolerance = 1e-6;

struct Alphabet {
  int offset = 0;
  int size = 0;

  int first() const { return offset; }
  int last() const { return offset + size - 1; }
  bool Contains(int symbol) const {
    return symbol >= offset && symbol < offset + size;
  }
  friend bool operator==(const Alphabet&, const Alphabet&) = default;
};

// A pmf over a contiguous integer alphabet. Construction enforces the
// invariants: entries are finite and nonnegative and sum to 1 within
// kPmfTolerance.
class Pmf {
 public:
  Pmf(int offset, std::vector<double> probs);

  // Point mass / uniform helpers used throughout the tests and CLI.
  static Pmf Uniform(int offset, int size);
  static Pmf Bernoulli(double p_one);

  int offset() const { return offset_; }
  int size() const { return static_cast<int>(probs_.size()); }
  Alphabet alphabet() const { return {offset_, size()}; }
  const std::vector<double>& probs() const { return probs_; }
  double operator[](int index) const { return probs_[index]; }
  // Probability of a symbol value; zero outside the alphabet.
  double AtSymbol(int symbol) const;

  // Copy of this pmf re-expressed on a wider alphabet (zero padded).
  Pmf Embedded(Alphabet target) const;

  friend bool operator==(const Pmf&, const Pmf&) = default;

 private:
  int offset_;
  std::vector<double> probs_;
};

// Smallest alphabet containing both.
Alphabet JointAlphabet(Alphabet a, Alphabet b);

// Checks raw pmf data. Sums within kPmfTolerance pass unchanged. With
// `renormalize`, sums within kRenormalizeTolerance are rescaled to exactly
// one. Anything else, or a negative entry, throws InputError.
Pmf ValidatePmf(int offset, std::vector<double> probs, bool renormalize);

// A sequence of symbols drawn from a declared alphabet.
class Sequence {
 public:
  Sequence(std::vector<int> symbols, Alphabet alphabet);

  const std::vector<int>& symbols() const { return symbols_; }
  Alphabet alphabet() const { return alphabet_; }
  int64_t length() const { return static_cast<int64_t>(symbols_.size()); }

  // Occurrence count of every alphabet symbol, indexed from the offset.
  std::vector<int64_t> Counts() const;

 private:
  std::vector<int> symbols_;
  Alphabet alphabet_;
};

struct Cdf {
  int offset = 0;
  std::vector<double> cums;
};

// Type (empirical pmf) of `seq` over {offset..offset+alphabet_size-1}.
// Entries are count/n. Throws InputError for out-of-alphabet symbols.
Pmf EmpiricalType(const Sequence& seq, int alphabet_size, int offset);
Pmf EmpiricalType(const Sequence& seq);
// Type from a count vector.
Pmf TypeFromCounts(std::span<const int64_t> counts, int offset);

Cdf CumulativeOf(const Pmf& p);

// n i.i.d. draws from p, reproducible from `seed`.
Sequence SampleSequence(const Pmf& p, int64_t n, uint64_t seed);

// Total variation distance between pmfs on the same alphabet.
double TotalVariation(const Pmf& p, const Pmf& q);

}  // namespace smtk

#endif  // SMTK_PMF_H_
