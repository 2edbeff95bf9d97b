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

#include "walklink/config.hpp"

#include <charconv>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "walklink/errors.hpp"

namespace walklink {
namespace {

std::string_view Trim(std::string_view s) {
  auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string_view::npos) return {};
  auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

double ToDouble(std::string_view key, std::string_view value) {
  std::string text(value);
  std::size_t used = 0;
  double out = 0.0;
  try {
    out = std::stod(text, &used);
  } catch (const std::exception &) {
    used = 0;
  }
  if (used == 0 || used != text.size()) {
    throw ConfigError(std::string(key) + ": expected a number, got '" + text + "'");
  }
  return out;
}

std::uint64_t ToUnsigned(std::string_view key, std::string_view value) {
  std::uint64_t out = 0;
  auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc() || ptr != value.data() + value.size()) {
    throw ConfigError(std::string(key) + ": expected a nonnegative integer, got '" +
                      std::string(value) + "'");
  }
  return out;
}

bool ToBool(std::string_view key, std::string_view value) {
  if (value == "true" || value == "1") return true;
  if (value == "false" || value == "0") return false;
  throw ConfigError(std::string(key) + ": expected true or false, got '" +
                    std::string(value) + "'");
}

template <typename T, typename Parse>
std::vector<T> ToList(std::string_view key, std::string_view value, Parse parse) {
  std::vector<T> out;
  std::size_t start = 0;
  while (start <= value.size()) {
    auto comma = value.find(',', start);
    if (comma == std::string_view::npos) comma = value.size();
    auto item = Trim(value.substr(start, comma - start));
    if (item.empty()) throw ConfigError(std::string(key) + ": empty list element");
    out.push_back(static_cast<T>(parse(key, item)));
    start = comma + 1;
  }
  return out;
}

template <typename T>
std::string Join(const std::vector<T> &values) {
  std::ostringstream out;
  out.precision(17);
  for (std::size_t i = 0; i < values.size(); ++i) out << (i ? "," : "") << values[i];
  return out.str();
}

std::string Number(double x) {
  std::ostringstream out;
  out.precision(17);
  out << x;
  return out.str();
}

}  // namespace

void RunConfig::Validate() const {
  train.Validate();
  if (sweep_k.empty() || sweep_lambda.empty() || sweep_gamma.empty()) {
    throw ConfigError("sweep grids must not be empty");
  }
  for (double l : sweep_lambda) {
    if (!(l >= 0.0 && l <= 1.0)) throw ConfigError("sweep_lambda values must lie in [0, 1]");
  }
  for (double g : sweep_gamma) {
    if (!(g >= 0.0 && g <= 1.0)) throw ConfigError("sweep_gamma values must lie in [0, 1]");
  }
  if (embeddings.empty() && embedding_dim == 0) {
    throw ConfigError("embedding_dim must be positive when no embeddings file is given");
  }
}

Settings ParseSettings(std::istream &in) {
  Settings settings;
  std::string line;
  long number = 0;
  while (std::getline(in, line)) {
    ++number;
    auto text = Trim(line);
    if (text.empty() || text.front() == '#') continue;
    auto eq = text.find('=');
    if (eq == std::string_view::npos) throw ParseError("expected key = value", number);
    auto key = Trim(text.substr(0, eq));
    if (key.empty()) throw ParseError("empty key", number);
    settings.emplace_back(std::string(key), std::string(Trim(text.substr(eq + 1))));
  }
  return settings;
}

void ApplySetting(RunConfig &config, std::string_view key, std::string_view value) {
  auto &train = config.train;
  auto &model = train.model;
  if (key == "kb") config.kb = value;
  else if (key == "corpus") config.corpus = value;
  else if (key == "valid_corpus") config.valid_corpus = value;
  else if (key == "embeddings") config.embeddings = value;
  else if (key == "embedding_dim") config.embedding_dim = ToUnsigned(key, value);
  else if (key == "checkpoint") config.checkpoint = value;
  else if (key == "log") config.log = value;
  else if (key == "output") config.output = value;
  else if (key == "gamma") train.gamma = ToDouble(key, value);
  else if (key == "lambda") train.lambda = ToDouble(key, value);
  else if (key == "k") train.layers = ToUnsigned(key, value);
  else if (key == "alpha") train.alpha = ToDouble(key, value);
  else if (key == "learning_rate") train.learning_rate = ToDouble(key, value);
  else if (key == "pretrain_epochs") train.pretrain_epochs = ToUnsigned(key, value);
  else if (key == "finetune_epochs") train.finetune_epochs = ToUnsigned(key, value);
  else if (key == "seed") train.seed = ToUnsigned(key, value);
  else if (key == "mode") train.mode = ParseMode(value);
  else if (key == "update_embeddings") train.update_embeddings = ToBool(key, value);
  else if (key == "consistency_restart") train.consistency_restart = ToBool(key, value);
  else if (key == "filters") model.filters = ToUnsigned(key, value);
  else if (key == "window") model.window = ToUnsigned(key, value);
  else if (key == "context_window") model.context_window = ToUnsigned(key, value);
  else if (key == "prefix_tokens") model.prefix_tokens = ToUnsigned(key, value);
  else if (key == "max_candidates") model.max_candidates = ToUnsigned(key, value);
  else if (key == "propagation_candidates") model.propagation_candidates = ToUnsigned(key, value);
  else if (key == "sweep_k") config.sweep_k = ToList<std::size_t>(key, value, ToUnsigned);
  else if (key == "sweep_lambda") config.sweep_lambda = ToList<double>(key, value, ToDouble);
  else if (key == "sweep_gamma") config.sweep_gamma = ToList<double>(key, value, ToDouble);
  else throw ConfigError("unknown setting '" + std::string(key) + "'");
}

RunConfig LoadRunConfig(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw LoadError("cannot open config '" + path + "'");
  Settings settings;
  try {
    settings = ParseSettings(in);
  } catch (const ParseError &e) {
    throw ParseError(path + ": " + e.what());
  }
  RunConfig config;
  const auto base = std::filesystem::path(path).parent_path();
  for (const auto &[key, value] : settings) {
    ApplySetting(config, key, value);
  }
  for (std::string *p : {&config.kb, &config.corpus, &config.valid_corpus, &config.embeddings,
                         &config.checkpoint, &config.log, &config.output}) {
    if (!p->empty() && std::filesystem::path(*p).is_relative()) {
      *p = (base / *p).lexically_normal().string();
    }
  }
  return config;
}

Settings Describe(const RunConfig &config) {
  const auto &train = config.train;
  const auto &model = train.model;
  return {
      {"kb", config.kb},
      {"corpus", config.corpus},
      {"valid_corpus", config.valid_corpus},
      {"embeddings", config.embeddings},
      {"embedding_dim", std::to_string(config.embedding_dim)},
      {"gamma", Number(train.gamma)},
      {"lambda", Number(train.lambda)},
      {"k", std::to_string(train.layers)},
      {"alpha", Number(train.alpha)},
      {"learning_rate", Number(train.learning_rate)},
      {"pretrain_epochs", std::to_string(train.pretrain_epochs)},
      {"finetune_epochs", std::to_string(train.finetune_epochs)},
      {"seed", std::to_string(train.seed)},
      {"mode", std::string(ModeName(train.mode))},
      {"update_embeddings", train.update_embeddings ? "true" : "false"},
      {"consistency_restart", train.consistency_restart ? "true" : "false"},
      {"filters", std::to_string(model.filters)},
      {"window", std::to_string(model.window)},
      {"context_window", std::to_string(model.context_window)},
      {"prefix_tokens", std::to_string(model.prefix_tokens)},
      {"max_candidates", std::to_string(model.max_candidates)},
      {"propagation_candidates", std::to_string(model.propagation_candidates)},
      {"sweep_k", Join(config.sweep_k)},
      {"sweep_lambda", Join(config.sweep_lambda)},
      {"sweep_gamma", Join(config.sweep_gamma)},
  };
}

}  // namespace walklink
