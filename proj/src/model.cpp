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

#include "walklink/model.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <unordered_map>

#include "walklink/errors.hpp"

namespace walklink {

Parameters Parameters::Initialize(EmbeddingTable embeddings, const ModelConfig &config,
                                  std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  Parameters params;
  const std::size_t dim = embeddings.dim();
  params.embeddings = std::move(embeddings);
  params.encoder = ConvEncoder::Create(config.filters, config.window, dim, rng);
  std::uniform_real_distribution<double> uniform(-0.01, 0.01);
  params.local_weights = Tensor({kLocalFeatureCount});
  for (double &w : params.local_weights.values) w = uniform(rng);
  params.relation_weights = Tensor({2 * config.filters});
  for (double &w : params.relation_weights.values) w = uniform(rng);
  return params;
}

std::array<Tensor *, kTensorCount> Parameters::tensors() {
  return {&embeddings.matrix, &encoder.weights, &local_weights, &relation_weights};
}

std::array<const Tensor *, kTensorCount> Parameters::tensors() const {
  return {&embeddings.matrix, &encoder.weights, &local_weights, &relation_weights};
}

Gradients::Gradients(const Parameters &params) {
  auto sources = params.tensors();
  for (std::size_t t = 0; t < kTensorCount; ++t) tensors[t] = Tensor(sources[t]->shape);
}

void Gradients::Zero() {
  for (auto &tensor : tensors) tensor.Zero();
}

std::vector<std::vector<int>> DocumentInstance::candidate_rows() const {
  std::vector<std::vector<int>> rows;
  for (const auto &mention : mentions) rows.push_back(mention.rows);
  return rows;
}

DocumentInstance CompileDocument(const Document &doc, const KnowledgeBase &kb,
                                 const Vocabulary &vocab, const ModelConfig &config) {
  DocumentInstance instance;
  instance.doc_id = doc.doc_id;
  auto prefix = DocumentPrefix(doc, config.prefix_tokens);
  instance.prefix_ids = vocab.Encode(prefix);

  std::unordered_map<std::string, int> rows;
  for (std::size_t r = 0; r < doc.candidate_union.size(); ++r) {
    rows.emplace(doc.candidate_union[r], static_cast<int>(r));
  }
  const std::size_t n = doc.candidate_union.size();
  instance.entities.resize(n);
  std::vector<bool> placed(n, false);

  for (const auto &mention : doc.mentions) {
    MentionInstance m;
    m.ordinal = mention.ordinal;
    m.surface_ids = vocab.Encode(mention.surface);
    auto context = ContextWindow(doc, mention, config.context_window);
    m.context_ids = vocab.Encode(context);
    m.gold = mention.GoldSlot();
    for (std::size_t c = 0; c < mention.candidates.size(); ++c) {
      const auto &candidate = mention.candidates[c];
      int row = rows.at(candidate.entity);
      m.rows.push_back(row);
      const auto &page = kb.page(candidate.kb_index);
      std::size_t body_len = std::min(config.prefix_tokens, page.body.size());
      std::span<const std::string> body(page.body.data(), body_len);
      SparseInputs inputs;
      inputs.prior = candidate.prior;
      inputs.rank = c;
      inputs.surface = mention.surface;
      inputs.title = page.title;
      inputs.context = context;
      inputs.body_prefix = body;
      inputs.inlinks = kb.inlinks(candidate.kb_index).size();
      m.sparse.push_back(ComputeSparseFeatures(inputs));
      if (!placed[row]) {
        placed[row] = true;
        auto &entity = instance.entities[row];
        entity.title_ids = vocab.Encode(page.title);
        entity.body_ids = vocab.Encode(body);
        entity.ordinal = mention.ordinal;
      }
    }
    instance.mentions.push_back(std::move(m));
  }

  instance.link_relatedness.assign(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      double sr = kb.LinkRelatedness(doc.union_kb[i], doc.union_kb[j]);
      instance.link_relatedness[i * n + j] = sr;
      instance.link_relatedness[j * n + i] = sr;
    }
  }
  return instance;
}

Model::Model(const Parameters &params, const ModelConfig &config)
    : params_(params), config_(config), positions_(2 * params.encoder.filters) {}

LocalOutput Model::Local(const DocumentInstance &doc) const {
  const auto &enc = params_.encoder;
  const auto &emb = params_.embeddings;
  LocalOutput out;
  out.document = Encode(enc, emb, doc.prefix_ids, &out.document_trace);

  out.entities.resize(doc.entities.size());
  out.entity_traces.resize(doc.entities.size());
  for (std::size_t e = 0; e < doc.entities.size(); ++e) {
    out.entities[e].title =
        Encode(enc, emb, doc.entities[e].title_ids, &out.entity_traces[e][0]);
    out.entities[e].body =
        Encode(enc, emb, doc.entities[e].body_ids, &out.entity_traces[e][1]);
  }

  const auto weights = std::span<const double>(params_.local_weights.values);
  out.mentions.resize(doc.mentions.size());
  out.mention_traces.resize(doc.mentions.size());
  for (std::size_t m = 0; m < doc.mentions.size(); ++m) {
    const auto &mention = doc.mentions[m];
    auto &vectors = out.mentions[m];
    vectors.surface = Encode(enc, emb, mention.surface_ids, &out.mention_traces[m][0]);
    vectors.context = Encode(enc, emb, mention.context_ids, &out.mention_traces[m][1]);
    vectors.document = out.document;
    std::vector<CnnFeatures> cnn;
    Vector phi;
    for (std::size_t c = 0; c < mention.rows.size(); ++c) {
      cnn.push_back(ComputeCnnFeatures(vectors, out.entities[mention.rows[c]]));
      phi.push_back(Phi(mention.sparse[c], cnn.back(), weights));
    }
    out.local.push_back(NormalizeScores(phi));
    out.cnn.push_back(std::move(cnn));
    out.phi.push_back(std::move(phi));
  }
  return out;
}

std::vector<std::vector<int>> Model::PropagationRows(const DocumentInstance &doc,
                                                     const LocalOutput &local) const {
  std::vector<std::vector<int>> rows;
  for (std::size_t m = 0; m < doc.mentions.size(); ++m) {
    const auto &p = local.local[m];
    std::vector<std::size_t> order(p.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return p[a] > p[b]; });
    order.resize(std::min(order.size(), config_.propagation_candidates));
    std::vector<int> kept;
    for (std::size_t c : order) kept.push_back(doc.mentions[m].rows[c]);
    rows.push_back(std::move(kept));
  }
  return rows;
}

std::vector<Vector> Model::SemanticVectors(const DocumentInstance &doc,
                                           const LocalOutput &local) const {
  std::vector<Vector> semantic;
  for (std::size_t e = 0; e < doc.entities.size(); ++e) {
    semantic.push_back(
        SemanticVector(local.entities[e], positions_(doc.entities[e].ordinal)));
  }
  return semantic;
}

double Model::RawScore(const DocumentInstance &doc, const std::vector<Vector> &semantic,
                       TransitionMode mode, int from, int to) const {
  const std::size_t n = doc.dim();
  double link = doc.link_relatedness[static_cast<std::size_t>(to) * n +
                                     static_cast<std::size_t>(from)];
  switch (mode) {
    case TransitionMode::kLinkOnly:
      return link;
    case TransitionMode::kFull:
      return link + Cosine(semantic[to], semantic[from]);
    case TransitionMode::kLearned: {
      const auto &w = params_.relation_weights.values;
      double z = 0.0;
      for (std::size_t k = 0; k < w.size(); ++k) z += w[k] * semantic[to][k] * semantic[from][k];
      return Sigmoid(z);
    }
  }
  return 0.0;
}

TransitionMatrix Model::Transition(const DocumentInstance &doc, const LocalOutput &local,
                                   TransitionMode mode,
                                   const std::vector<std::vector<int>> &rows) const {
  auto mask = NeighborMask::Build(doc.dim(), rows);
  auto semantic = SemanticVectors(doc, local);
  return TransitionMatrix::FromScores(
      mask, [&](int from, int to) { return RawScore(doc, semantic, mode, from, to); });
}

std::vector<Decision> Model::Link(const DocumentInstance &doc, TransitionMode mode,
                                  std::size_t layers, double restart) const {
  if (doc.mentions.empty()) return {};
  auto local = Local(doc);
  auto all_rows = doc.candidate_rows();
  auto state = InitialState(doc.dim(), all_rows, local.local, restart);
  if (layers > 0) {
    auto transition = Transition(doc, local, mode, PropagationRows(doc, local));
    state = Propagate(std::move(state), transition, layers);
  }
  return Decide(state, all_rows);
}

double Model::Objective(const DocumentInstance &doc, const ObjectiveWeights &weights,
                        Gradients *grads, ObjectiveParts *parts,
                        std::vector<std::uint8_t> *signature) const {
  ObjectiveParts local_parts;
  if (!parts) parts = &local_parts;
  *parts = ObjectiveParts();
  if (doc.mentions.empty()) return 0.0;

  const std::size_t n = doc.dim();
  const std::size_t v = params_.encoder.filters;
  LocalOutput local = Local(doc);

  auto record_trace = [&](const EncodeTrace &trace) {
    if (!signature) return;
    for (double pre : trace.preactivations) signature->push_back(pre > 0.0 ? 1 : 0);
  };
  if (signature) {
    record_trace(local.document_trace);
    for (const auto &traces : local.mention_traces) {
      for (const auto &t : traces) record_trace(t);
    }
    for (const auto &traces : local.entity_traces) {
      for (const auto &t : traces) record_trace(t);
    }
  }

  std::vector<Vector> grad_local(doc.mentions.size());
  for (std::size_t m = 0; m < doc.mentions.size(); ++m) {
    grad_local[m].assign(doc.mentions[m].rows.size(), 0.0);
  }

  // Cross entropy on the local distributions.
  for (std::size_t m = 0; m < doc.mentions.size(); ++m) {
    int gold = doc.mentions[m].gold;
    if (gold < 0) continue;
    const auto &p = local.local[m];
    ++parts->supervised;
    auto best = std::max_element(p.begin(), p.end()) - p.begin();
    if (best == gold) ++parts->correct;
    parts->cross_entropy -= std::log(p[gold]);
    grad_local[m][gold] -= weights.cross_entropy / p[gold];
  }

  // K-th order consistency through the transition matrix.
  std::vector<EntityVectors> grad_entities(n);
  for (auto &g : grad_entities) {
    g.title.assign(v, 0.0);
    g.body.assign(v, 0.0);
  }
  Vector grad_relation(params_.relation_weights.size(), 0.0);
  const bool use_consistency = weights.consistency != 0.0 && weights.layers > 0;
  if (use_consistency) {
    auto rows = PropagationRows(doc, local);
    auto mask = NeighborMask::Build(n, rows);
    auto semantic = SemanticVectors(doc, local);
    auto transition = TransitionMatrix::FromScores(mask, [&](int from, int to) {
      return RawScore(doc, semantic, weights.mode, from, to);
    });
    if (signature) {
      for (const auto &r : rows) {
        for (int row : r) signature->push_back(static_cast<std::uint8_t>(row & 0xFF));
      }
      for (std::size_t j = 0; j < n; ++j) {
        signature->push_back(transition.column(j).empty() ? 1 : 0);
        for (int i : mask.neighbors(j)) {
          signature->push_back(
              RawScore(doc, semantic, weights.mode, static_cast<int>(j), i) > 0.0 ? 1 : 0);
        }
      }
      for (const auto &u : semantic) signature->push_back(Norm(u) > 0.0 ? 1 : 0);
    }

    std::vector<std::vector<double>> grad_transition(n);
    for (std::size_t j = 0; j < n; ++j) {
      grad_transition[j].assign(transition.column(j).size(), 0.0);
    }
    for (std::size_t m = 0; m < doc.mentions.size(); ++m) {
      const auto &mention = doc.mentions[m];
      Vector p0(n, 0.0);
      for (std::size_t c = 0; c < mention.rows.size(); ++c) {
        p0[mention.rows[c]] += local.local[m][c];
      }
      auto trajectory = Walk(transition, p0, weights.layers, weights.consistency_restart);
      const Vector &last = trajectory.back();
      Vector upstream(n), grad_p0(n);
      for (std::size_t i = 0; i < n; ++i) {
        double diff = p0[i] - last[i];
        parts->consistency += diff * diff;
        upstream[i] = -2.0 * weights.consistency * diff;
        grad_p0[i] = 2.0 * weights.consistency * diff;
      }
      WalkBackward(transition, p0, trajectory, upstream, weights.consistency_restart,
                   &grad_transition, grad_p0);
      for (std::size_t c = 0; c < mention.rows.size(); ++c) {
        grad_local[m][c] += grad_p0[mention.rows[c]];
      }
    }

    auto grad_scores = TransitionBackward(transition, grad_transition);
    std::vector<Vector> grad_semantic(n, Vector(2 * v, 0.0));
    const auto &w = params_.relation_weights.values;
    for (std::size_t j = 0; j < n; ++j) {
      auto column = transition.column(j);
      for (std::size_t e = 0; e < column.size(); ++e) {
        const int i = column[e].row;
        const double g = grad_scores[j][e];
        if (g == 0.0) continue;
        if (RawScore(doc, semantic, weights.mode, static_cast<int>(j), i) <= 0.0) continue;
        switch (weights.mode) {
          case TransitionMode::kLinkOnly:
            break;
          case TransitionMode::kFull:
            CosineBackward(semantic[i], semantic[j], g, grad_semantic[i], grad_semantic[j]);
            break;
          case TransitionMode::kLearned: {
            double z = 0.0;
            for (std::size_t k = 0; k < w.size(); ++k) z += w[k] * semantic[i][k] * semantic[j][k];
            double s = Sigmoid(z);
            double gz = g * s * (1.0 - s);
            for (std::size_t k = 0; k < w.size(); ++k) {
              grad_relation[k] += gz * semantic[i][k] * semantic[j][k];
              grad_semantic[i][k] += gz * w[k] * semantic[j][k];
              grad_semantic[j][k] += gz * w[k] * semantic[i][k];
            }
            break;
          }
        }
      }
    }
    for (std::size_t e = 0; e < n; ++e) {
      // Pages without content have a constant semantic vector.
      if (Norm(semantic[e]) == 0.0) continue;
      for (std::size_t k = 0; k < v; ++k) {
        grad_entities[e].title[k] += grad_semantic[e][k];
        grad_entities[e].body[k] += grad_semantic[e][v + k];
      }
    }
  }

  double objective = weights.cross_entropy * parts->cross_entropy +
                     weights.consistency * parts->consistency;
  if (!grads) return objective;

  // Back through normalization, sigmoid and the local features.
  const auto &w_local = params_.local_weights.values;
  auto &g_local_weights = grads->tensors[2].values;
  std::vector<MentionVectors> grad_mentions(doc.mentions.size());
  Vector grad_document(v, 0.0);
  for (std::size_t m = 0; m < doc.mentions.size(); ++m) {
    const auto &mention = doc.mentions[m];
    auto &gm = grad_mentions[m];
    gm.surface.assign(v, 0.0);
    gm.context.assign(v, 0.0);
    gm.document.assign(v, 0.0);
    const auto &phi = local.phi[m];
    const auto &p = local.local[m];
    double total = std::accumulate(phi.begin(), phi.end(), 0.0);
    double weighted = 0.0;
    for (std::size_t c = 0; c < p.size(); ++c) weighted += grad_local[m][c] * p[c];
    for (std::size_t c = 0; c < p.size(); ++c) {
      double g_phi = (grad_local[m][c] - weighted) / total;
      double g_z = g_phi * phi[c] * (1.0 - phi[c]);
      if (g_z == 0.0) continue;
      auto x = LocalFeatures(mention.sparse[c], local.cnn[m][c]);
      for (std::size_t k = 0; k < kLocalFeatureCount; ++k) g_local_weights[k] += g_z * x[k];
      CnnFeatures g_cnn;
      for (std::size_t k = 0; k < kCnnFeatureCount; ++k) {
        g_cnn[k] = g_z * w_local[kSparseFeatureCount + k];
      }
      CnnFeaturesBackward(local.mentions[m], local.entities[mention.rows[c]], g_cnn, &gm,
                          &grad_entities[mention.rows[c]]);
    }
    for (std::size_t k = 0; k < v; ++k) grad_document[k] += gm.document[k];
  }
  for (std::size_t k = 0; k < grad_relation.size(); ++k) {
    grads->tensors[3].values[k] += grad_relation[k];
  }

  Tensor *grad_embeddings = weights.update_embeddings ? &grads->tensors[0] : nullptr;
  Tensor *grad_filters = &grads->tensors[1];
  const auto &enc = params_.encoder;
  const auto &emb = params_.embeddings;
  EncodeBackward(enc, emb, local.document_trace, grad_document, grad_filters,
                 grad_embeddings);
  for (std::size_t m = 0; m < doc.mentions.size(); ++m) {
    EncodeBackward(enc, emb, local.mention_traces[m][0], grad_mentions[m].surface,
                   grad_filters, grad_embeddings);
    EncodeBackward(enc, emb, local.mention_traces[m][1], grad_mentions[m].context,
                   grad_filters, grad_embeddings);
  }
  for (std::size_t e = 0; e < n; ++e) {
    EncodeBackward(enc, emb, local.entity_traces[e][0], grad_entities[e].title,
                   grad_filters, grad_embeddings);
    EncodeBackward(enc, emb, local.entity_traces[e][1], grad_entities[e].body,
                   grad_filters, grad_embeddings);
  }
  return objective;
}

}  // namespace walklink
