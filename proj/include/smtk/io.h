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

// File formats shared by the command-line tool.
//
//   pmf file       {"offset": int, "probs": [real, ...]}
//   sequence file  whitespace-separated decimal integers
//   csv matrix     one row per line, comma-separated reals

#ifndef SMTK_IO_H_
#define SMTK_IO_H_

#include <string>
#include <vector>

#include "smtk/pmf.h"

namespace smtk {

// Parses pmf JSON text. Sums within the ingest tolerance are renormalized.
Pmf ParsePmfJson(const std::string& text);
Pmf ReadPmfFile(const std::string& path);

std::vector<int> ReadSymbolsFile(const std::string& path);
void WriteSymbolsFile(const std::string& path, const std::vector<int>& symbols);

std::vector<std::vector<double>> ReadCsvMatrix(const std::string& path);

std::string ReadTextFile(const std::string& path);

}  // namespace smtk

#endif  // SMTK_IO_H_
