// Copyright 2026 The Walklink Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef WALKLINK_CONFIG_HPP_
#define WALKLINK_CONFIG_HPP_

#include <cstddef>
#include <iosfwd>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "walklink/training.hpp"

namespace walklink {

using Settings = std::vector<std::pair<std::string, std::string>>;

// Everything a train or sweep run needs. Keys of the flat file format are
// the field names below; model dimensions sit at the top level.
struct RunConfig {
  std::string kb;
  std::string corpus;
  std::string valid_corpus;
  std::string embeddings;   // word vectors; empty means random vectors
  std::size_t embedding_dim = 50;  // only used without an embeddings file
  std::string checkpoint;
  std::string log;
  std::string output;       // sweep CSV; stdout when empty
  TrainConfig train;
  std::vector<std::size_t> sweep_k = {0, 1, 2, 3, 4, 5, 6, 7};
  std::vector<double> sweep_lambda = {0.5};
  std::vector<double> sweep_gamma = {0.1};

  void Validate() const;
};

// "key = value" lines. Blank lines and lines starting with '#' are skipped.
// A line without '=' raises ParseError with its line number.
Settings ParseSettings(std::istream &in);

// Throws ConfigError on an unknown key or a malformed value.
void ApplySetting(RunConfig &config, std::string_view key, std::string_view value);

// Relative paths in the file resolve against the file's directory.
RunConfig LoadRunConfig(const std::string &path);

// The settings that reproduce `config`, in a fixed order.
Settings Describe(const RunConfig &config);

}  // namespace walklink

#endif  // WALKLINK_CONFIG_HPP_
