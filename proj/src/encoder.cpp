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

#include "walklink/encoder.hpp"

#include <cmath>
#include <fstream>
#include <istream>
#include <sstream>

#include "walklink/errors.hpp"

namespace walklink {

int Vocabulary::Add(std::string_view token) {
  auto found = Find(token);
  if (found) return *found;
  int id = static_cast<int>(tokens_.size());
  tokens_.emplace_back(token);
  ids_.emplace(tokens_.back(), id);
  return id;
}

std::optional<int> Vocabulary::Find(std::string_view token) const {
  auto it = ids_.find(std::string(token));
  if (it == ids_.end()) return std::nullopt;
  return it->second;
}

int Vocabulary::Lookup(std::string_view token) const {
  auto found = Find(token);
  return found ? *found : oov_id();
}

std::vector<int> Vocabulary::Encode(std::span<const std::string> tokens) const {
  std::vector<int> ids;
  ids.reserve(tokens.size());
  for (const auto &token : tokens) ids.push_back(Lookup(token));
  return ids;
}

std::span<const double> EmbeddingTable::Row(int id) const {
  static const std::vector<double> kZeros(4096, 0.0);
  if (id == kPadToken) return std::span<const double>(kZeros).first(dim());
  return std::span<const double>(matrix.values).subspan(
      static_cast<std::size_t>(id) * dim(), dim());
}

EmbeddingTable ParseEmbeddings(std::istream &in) {
  EmbeddingTable table;
  std::vector<double> rows;
  std::size_t dim = 0;
  std::string line;
  long number = 0;
  bool first = true;
  while (std::getline(in, line)) {
    ++number;
    std::istringstream fields(line);
    std::vector<std::string> parts;
    for (std::string part; fields >> part;) parts.push_back(part);
    if (parts.empty()) continue;
    if (first) {
      first = false;
      if (parts.size() == 2 &&
          parts[0].find_first_not_of("0123456789") == std::string::npos &&
          parts[1].find_first_not_of("0123456789") == std::string::npos) {
        dim = std::stoul(parts[1]);
        continue;
      }
    }
    if (dim == 0) dim = parts.size() - 1;
    if (dim == 0 || parts.size() != dim + 1) {
      throw ParseError("expected token and " + std::to_string(dim) +
                           " values, found " + std::to_string(parts.size()) +
                           " fields",
                       number);
    }
    if (table.vocab.Find(parts[0])) continue;  // first vector wins
    table.vocab.Add(parts[0]);
    for (std::size_t i = 1; i < parts.size(); ++i) {
      char *end = nullptr;
      double value = std::strtod(parts[i].c_str(), &end);
      if (end == parts[i].c_str() || *end != '\0' || !std::isfinite(value)) {
        throw ParseError("bad number '" + parts[i] + "'", number);
      }
      rows.push_back(value);
    }
  }
  if (dim > 4096) throw LoadError("embedding dimension above 4096");
  if (dim == 0) throw LoadError("embedding file has no vectors");
  table.matrix = Tensor({table.vocab.size() + 1, dim});
  std::copy(rows.begin(), rows.end(), table.matrix.values.begin());
  return table;
}

EmbeddingTable LoadEmbeddings(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw LoadError("cannot open embeddings '" + path + "'");
  return ParseEmbeddings(in);
}

EmbeddingTable RandomEmbeddings(std::span<const std::string> tokens,
                                std::size_t dim, double scale,
                                std::mt19937_64 &rng) {
  EmbeddingTable table;
  for (const auto &token : tokens) table.vocab.Add(token);
  table.matrix = Tensor({table.vocab.size() + 1, dim});
  std::uniform_real_distribution<double> uniform(-scale, scale);
  for (std::size_t i = 0; i < table.vocab.size() * dim; ++i) {
    table.matrix.values[i] = uniform(rng);
  }
  return table;
}

ConvEncoder ConvEncoder::Create(std::size_t filters, std::size_t window,
                                std::size_t input_dim, std::mt19937_64 &rng) {
  ConvEncoder encoder;
  encoder.filters = filters;
  encoder.window = window;
  encoder.input_dim = input_dim;
  encoder.weights = Tensor({filters, window, input_dim});
  std::uniform_real_distribution<double> uniform(-0.01, 0.01);
  for (double &w : encoder.weights.values) w = uniform(rng);
  return encoder;
}

Vector Encode(const ConvEncoder &encoder, const EmbeddingTable &embeddings,
              std::span<const int> ids, EncodeTrace *trace) {
  const std::size_t v = encoder.filters, l = encoder.window, h = encoder.input_dim;
  std::vector<int> padded(ids.begin(), ids.end());
  while (!padded.empty() && padded.back() == kPadToken) padded.pop_back();
  if (padded.size() < l) padded.resize(l, kPadToken);

  const std::size_t windows = padded.size() - l + 1;
  Vector pre(windows * v, 0.0);
  const double *weights = encoder.weights.data();
  for (std::size_t w = 0; w < windows; ++w) {
    for (std::size_t k = 0; k < l; ++k) {
      int id = padded[w + k];
      if (id == kPadToken) continue;
      auto row = embeddings.Row(id);
      for (std::size_t o = 0; o < v; ++o) {
        const double *m = weights + (o * l + k) * h;
        double sum = 0.0;
        for (std::size_t d = 0; d < h; ++d) sum += m[d] * row[d];
        pre[w * v + o] += sum;
      }
    }
  }
  Vector out(v, 0.0);
  for (std::size_t w = 0; w < windows; ++w) {
    for (std::size_t o = 0; o < v; ++o) out[o] += std::max(0.0, pre[w * v + o]);
  }
  for (double &x : out) x /= static_cast<double>(windows);
  if (trace) {
    trace->ids = std::move(padded);
    trace->preactivations = std::move(pre);
    trace->windows = windows;
  }
  return out;
}

void EncodeBackward(const ConvEncoder &encoder, const EmbeddingTable &embeddings,
                    const EncodeTrace &trace, std::span<const double> grad_output,
                    Tensor *grad_filters, Tensor *grad_embeddings) {
  const std::size_t v = encoder.filters, l = encoder.window, h = encoder.input_dim;
  const double scale = 1.0 / static_cast<double>(trace.windows);
  const double *weights = encoder.weights.data();
  Vector active(v);
  for (std::size_t w = 0; w < trace.windows; ++w) {
    bool any = false;
    for (std::size_t o = 0; o < v; ++o) {
      // Subgradient of ReLU at 0 is 0.
      active[o] = trace.preactivations[w * v + o] > 0.0 ? grad_output[o] * scale : 0.0;
      any = any || active[o] != 0.0;
    }
    if (!any) continue;
    for (std::size_t k = 0; k < l; ++k) {
      int id = trace.ids[w + k];
      if (id == kPadToken) continue;
      auto row = embeddings.Row(id);
      double *erow = grad_embeddings
                         ? grad_embeddings->data() + static_cast<std::size_t>(id) * h
                         : nullptr;
      for (std::size_t o = 0; o < v; ++o) {
        double g = active[o];
        if (g == 0.0) continue;
        if (grad_filters) {
          double *gm = grad_filters->data() + (o * l + k) * h;
          for (std::size_t d = 0; d < h; ++d) gm[d] += g * row[d];
        }
        if (erow) {
          const double *m = weights + (o * l + k) * h;
          for (std::size_t d = 0; d < h; ++d) erow[d] += g * m[d];
        }
      }
    }
  }
}

Vector PositionalEncoding::operator()(std::size_t ordinal) const {
  Vector out(dim_);
  for (std::size_t c = 0; c < dim_; ++c) {
    std::size_t pair = c / 2;
    double angle = static_cast<double>(ordinal) /
                   std::pow(10000.0, 2.0 * static_cast<double>(pair) /
                                         static_cast<double>(dim_));
    out[c] = (c % 2 == 0) ? std::sin(angle) : std::cos(angle);
  }
  return out;
}

}  // namespace walklink
