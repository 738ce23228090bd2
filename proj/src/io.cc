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

#include "smtk/io.h"

#include <fstream>
#include <sstream>

#include "json.hpp"
#include "smtk/errors.h"

namespace smtk {

std::string ReadTextFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Pmf ParsePmfJson(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError(std::string("pmf JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("probs") || !j["probs"].is_array()) {
    throw InputError("pmf JSON must be an object with a \"probs\" array");
  }
  int offset = 0;
  if (j.contains("offset")) {
    if (!j["offset"].is_number_integer()) {
      throw InputError("pmf \"offset\" must be an integer");
    }
    offset = j["offset"].get<int>();
  }
  std::vector<double> probs;
  for (const auto& v : j["probs"]) {
    if (!v.is_number()) throw InputError("pmf \"probs\" entries must be numbers");
    probs.push_back(v.get<double>());
  }
  return ValidatePmf(offset, std::move(probs), /*renormalize=*/true);
}

Pmf ReadPmfFile(const std::string& path) {
  try {
    return ParsePmfJson(ReadTextFile(path));
  } catch (const InputError& e) {
    throw InputError(path + ": " + e.what());
  }
}

std::vector<int> ReadSymbolsFile(const std::string& path) {
  std::istringstream in(ReadTextFile(path));
  std::vector<int> out;
  std::string token;
  while (in >> token) {
    size_t pos = 0;
    int v = 0;
    try {
      v = std::stoi(token, &pos);
    } catch (const std::exception&) {
      pos = 0;
    }
    if (pos != token.size()) {
      throw InputError(path + ": not an integer symbol: " + token);
    }
    out.push_back(v);
  }
  if (out.empty()) throw InputError(path + ": empty sequence");
  return out;
}

void WriteSymbolsFile(const std::string& path,
                      const std::vector<int>& symbols) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + path);
  for (size_t i = 0; i < symbols.size(); ++i) {
    out << symbols[i] << ((i + 1) % 32 == 0 ? '\n' : ' ');
  }
  out << '\n';
}

std::vector<std::vector<double>> ReadCsvMatrix(const std::string& path) {
  std::istringstream in(ReadTextFile(path));
  std::vector<std::vector<double>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::vector<double> row;
    std::istringstream cells(line);
    std::string cell;
    while (std::getline(cells, cell, ',')) {
      size_t pos = 0;
      double v = 0.0;
      try {
        v = std::stod(cell, &pos);
      } catch (const std::exception&) {
        throw InputError(path + ": bad number '" + cell + "'");
      }
      if (cell.find_first_not_of(" \t\r", pos) != std::string::npos) {
        throw InputError(path + ": bad number '" + cell + "'");
      }
      row.push_back(v);
    }
    if (!rows.empty() && row.size() != rows.front().size()) {
      throw InputError(path + ": ragged rows");
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw InputError(path + ": no rows");
  return rows;
}

}  // namespace smtk
