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

#ifndef SMTK_ERRORS_H_
#define SMTK_ERRORS_H_

#include <stdexcept>
#include <string>

namespace smtk {

// Malformed or inconsistent input (bad pmf, alphabet mismatch, ...).
class InputError : public std::invalid_argument {
 public:
  explicit InputError(const std::string& what) : std::invalid_argument(what) {}
};

// An optimizer failed to reach its accuracy target. Carries the certificate
// it did reach so callers can report it.
class SolverError : public std::runtime_error {
 public:
  SolverError(const std::string& what, double achieved_gap)
      : std::runtime_error(what), achieved_gap_(achieved_gap) {}
  double achieved_gap() const { return achieved_gap_; }

 private:
  double achieved_gap_;
};

// Instance exceeds the size a dense/exhaustive code path is built for.
class ScaleGuardError : public std::length_error {
 public:
  explicit ScaleGuardError(const std::string& what) : std::length_error(what) {}
};

}  // namespace smtk

#endif  // SMTK_ERRORS_H_
