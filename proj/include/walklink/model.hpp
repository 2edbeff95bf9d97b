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

#ifndef WALKLINK_MODEL_HPP_
#define WALKLINK_MODEL_HPP_

#include <array>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "walklink/corpus.hpp"
#include "walklink/encoder.hpp"
#include "walklink/kb.hpp"
#include "walklink/local_scorer.hpp"
#include "walklink/propagation.hpp"
#include "walklink/tensor.hpp"

namespace walklink {

struct ModelConfig {
  std::size_t filters = 64;
  std::size_t window = 3;
  std::size_t context_window = 10;
  std::size_t prefix_tokens = 100;
  std::size_t max_candidates = 7;
  std::size_t propagation_candidates = 4;
};

inline constexpr std::size_t kTensorCount = 4;
inline constexpr std::array<std::string_view, kTensorCount> kTensorNames = {
    "embeddings", "filters", "w_local", "w_relation"};

// Everything the objective is differentiated with respect to.
struct Parameters {
  EmbeddingTable embeddings;
  ConvEncoder encoder;
  Tensor local_weights;     // kLocalFeatureCount
  Tensor relation_weights;  // 2 * filters, learned transition mode only

  // Filters, local and relation weights from uniform(-0.01, 0.01).
  static Parameters Initialize(EmbeddingTable embeddings, const ModelConfig &config,
                               std::uint64_t seed);

  std::array<Tensor *, kTensorCount> tensors();
  std::array<const Tensor *, kTensorCount> tensors() const;
};

struct Gradients {
  std::array<Tensor, kTensorCount> tensors;

  explicit Gradients(const Parameters &params);
  void Zero();
};

struct MentionInstance {
  std::size_t ordinal = 0;
  std::vector<int> surface_ids;
  std::vector<int> context_ids;
  std::vector<int> rows;  // candidate positions in the document's union
  std::vector<SparseFeatures> sparse;
  int gold = -1;  // candidate slot of the gold entity, -1 if none
};

struct EntityInstance {
  std::vector<int> title_ids;
  std::vector<int> body_ids;  // first prefix_tokens body tokens
  std::size_t ordinal = 0;    // first mention listing the entity
};

// A document with every input of the model resolved to ids and features.
struct DocumentInstance {
  std::string doc_id;
  std::vector<int> prefix_ids;
  std::vector<MentionInstance> mentions;
  std::vector<EntityInstance> entities;
  std::vector<double> link_relatedness;  // dim x dim, row-major

  std::size_t dim() const { return entities.size(); }
  std::vector<std::vector<int>> candidate_rows() const;
};

DocumentInstance CompileDocument(const Document &doc, const KnowledgeBase &kb,
                                 const Vocabulary &vocab, const ModelConfig &config);

// Forward values of the local model for one document.
struct LocalOutput {
  Vector document;
  EncodeTrace document_trace;
  std::vector<MentionVectors> mentions;
  std::vector<std::array<EncodeTrace, 2>> mention_traces;  // surface, context
  std::vector<EntityVectors> entities;
  std::vector<std::array<EncodeTrace, 2>> entity_traces;  // title, body
  std::vector<std::vector<CnnFeatures>> cnn;
  std::vector<Vector> phi;    // per mention, per candidate
  std::vector<Vector> local;  // normalized phi
};

struct ObjectiveWeights {
  double cross_entropy = 1.0;
  double consistency = 0.0;
  std::size_t layers = 0;
  TransitionMode mode = TransitionMode::kFull;
  double consistency_restart = 0.0;  // 0 gives the restart-free walk
  bool update_embeddings = true;
};

struct ObjectiveParts {
  double cross_entropy = 0.0;
  double consistency = 0.0;
  std::size_t supervised = 0;  // mentions contributing to cross entropy
  std::size_t correct = 0;     // of those, local argmax equals gold
};

// Document-level scorer over a fixed parameter set.
class Model {
 public:
  Model(const Parameters &params, const ModelConfig &config);

  LocalOutput Local(const DocumentInstance &doc) const;

  // Each mention's candidate rows cut to the propagation_candidates best by
  // local probability.
  std::vector<std::vector<int>> PropagationRows(const DocumentInstance &doc,
                                                const LocalOutput &local) const;

  // Raw score p(e_from -> e_to) before clamping and normalization.
  double RawScore(const DocumentInstance &doc, const std::vector<Vector> &semantic,
                  TransitionMode mode, int from, int to) const;

  // Positioned page vectors of every candidate.
  std::vector<Vector> SemanticVectors(const DocumentInstance &doc,
                                      const LocalOutput &local) const;

  TransitionMatrix Transition(const DocumentInstance &doc, const LocalOutput &local,
                              TransitionMode mode,
                              const std::vector<std::vector<int>> &rows) const;

  // Local scoring, `layers` random-walk layers, then per-mention argmax.
  std::vector<Decision> Link(const DocumentInstance &doc, TransitionMode mode,
                             std::size_t layers, double restart) const;

  // weights.cross_entropy * CE + weights.consistency * consistency. When
  // `grads` is set, accumulates the gradient. `signature` receives a record
  // of every piecewise branch taken (ReLU signs, clamps, pruning), which
  // gradient checks compare to detect kinks.
  double Objective(const DocumentInstance &doc, const ObjectiveWeights &weights,
                   Gradients *grads, ObjectiveParts *parts = nullptr,
                   std::vector<std::uint8_t> *signature = nullptr) const;

  const ModelConfig &config() const { return config_; }
  const Parameters &params() const { return params_; }

 private:
  const Parameters &params_;
  ModelConfig config_;
  PositionalEncoding positions_;
};

}  // namespace walklink

#endif  // WALKLINK_MODEL_HPP_
