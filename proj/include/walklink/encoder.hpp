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

#ifndef WALKLINK_ENCODER_HPP_
#define WALKLINK_ENCODER_HPP_

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "walklink/tensor.hpp"

namespace walklink {

// Token id of the padding symbol. Its embedding is a frozen zero vector.
inline constexpr int kPadToken = -1;

class Vocabulary {
 public:
  // Returns the id of `token`, adding it if needed.
  int Add(std::string_view token);
  std::optional<int> Find(std::string_view token) const;
  // Unknown tokens map to oov_id().
  int Lookup(std::string_view token) const;
  std::vector<int> Encode(std::span<const std::string> tokens) const;

  int oov_id() const { return static_cast<int>(tokens_.size()); }
  std::size_t size() const { return tokens_.size(); }
  const std::string &token(int id) const { return tokens_[id]; }
  const std::vector<std::string> &tokens() const { return tokens_; }

 private:
  std::unordered_map<std::string, int> ids_;
  std::vector<std::string> tokens_;
};

// Word vectors. Row vocab.size() is the shared trainable OOV row.
struct EmbeddingTable {
  Vocabulary vocab;
  Tensor matrix;  // (vocab.size() + 1) x dim

  std::size_t dim() const { return matrix.shape.empty() ? 0 : matrix.shape[1]; }
  std::size_t rows() const { return matrix.shape.empty() ? 0 : matrix.shape[0]; }
  // kPadToken yields a zero span.
  std::span<const double> Row(int id) const;
};

// Reads "<token> <v1> ... <vh>" lines with an optional "<count> <dim>" header.
EmbeddingTable LoadEmbeddings(const std::string &path);
EmbeddingTable ParseEmbeddings(std::istream &in);

// Random table over the given tokens, rows drawn from uniform(-scale, scale).
EmbeddingTable RandomEmbeddings(std::span<const std::string> tokens,
                                std::size_t dim, double scale,
                                std::mt19937_64 &rng);

// Convolution over word windows followed by ReLU and mean pooling. The same
// instance encodes every text granularity.
struct ConvEncoder {
  std::size_t filters = 64;
  std::size_t window = 3;
  std::size_t input_dim = 0;
  Tensor weights;  // filters x window x input_dim

  static ConvEncoder Create(std::size_t filters, std::size_t window,
                            std::size_t input_dim, std::mt19937_64 &rng);
};

// Intermediate values of one Encode call needed for the backward pass.
struct EncodeTrace {
  std::vector<int> ids;  // after pad handling
  Vector preactivations;  // windows x filters
  std::size_t windows = 0;
};

// Mean over all N - l + 1 windows of ReLU(M * window). Trailing pads are
// stripped, then inputs shorter than the window are right-padded.
Vector Encode(const ConvEncoder &encoder, const EmbeddingTable &embeddings,
              std::span<const int> ids, EncodeTrace *trace = nullptr);

// Accumulates gradients of the encoding given d loss / d output. Either
// destination may be null. The pad embedding receives nothing.
void EncodeBackward(const ConvEncoder &encoder, const EmbeddingTable &embeddings,
                    const EncodeTrace &trace, std::span<const double> grad_output,
                    Tensor *grad_filters, Tensor *grad_embeddings);

// Sinusoidal position vectors: sin at even components, cos at odd ones,
// angle ordinal / 10000^(2k / dim).
class PositionalEncoding {
 public:
  explicit PositionalEncoding(std::size_t dim) : dim_(dim) {}
  Vector operator()(std::size_t ordinal) const;
  std::size_t dim() const { return dim_; }

 private:
  std::size_t dim_;
};

}  // namespace walklink

#endif  // WALKLINK_ENCODER_HPP_
