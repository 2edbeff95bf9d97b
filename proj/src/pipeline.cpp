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

#include "walklink/pipeline.hpp"

#include <ostream>
#include <random>
#include <set>
#include <sstream>

#include "json.hpp"
#include "walklink/errors.hpp"

namespace walklink {

EmbeddingTable PrepareEmbeddings(const RunConfig &config, const KnowledgeBase &kb,
                                 const Corpus &corpus) {
  if (!config.embeddings.empty()) return LoadEmbeddings(config.embeddings);
  std::set<std::string> tokens;
  for (EntityIndex e = 0; e < static_cast<EntityIndex>(kb.total_entities()); ++e) {
    const auto &page = kb.page(e);
    tokens.insert(page.title.begin(), page.title.end());
    tokens.insert(page.body.begin(), page.body.end());
  }
  for (const auto &doc : corpus.documents) tokens.insert(doc.tokens.begin(), doc.tokens.end());
  std::vector<std::string> ordered(tokens.begin(), tokens.end());
  std::mt19937_64 rng(config.train.seed ^ 0x5eed5eed5eed5eedULL);
  return RandomEmbeddings(ordered, config.embedding_dim, 0.5, rng);
}

std::vector<DocumentInstance> CompileCorpus(const Corpus &corpus, const KnowledgeBase &kb,
                                            const Vocabulary &vocab,
                                            const ModelConfig &config) {
  std::vector<DocumentInstance> out;
  out.reserve(corpus.documents.size());
  for (const auto &doc : corpus.documents) out.push_back(CompileDocument(doc, kb, vocab, config));
  return out;
}

std::vector<Prediction> LinkCorpus(const Model &model, const Corpus &corpus,
                                   const std::vector<DocumentInstance> &instances,
                                   TransitionMode mode, std::size_t layers, double restart) {
  std::vector<Prediction> out;
  for (std::size_t d = 0; d < corpus.documents.size(); ++d) {
    const auto &doc = corpus.documents[d];
    auto decisions = model.Link(instances[d], mode, layers, restart);
    for (std::size_t m = 0; m < doc.mentions.size(); ++m) {
      const auto &mention = doc.mentions[m];
      Prediction p;
      p.doc_id = doc.doc_id;
      p.mention_index = mention.source_index;
      p.start = mention.char_begin;
      p.end = mention.char_end;
      p.entity = mention.candidates[decisions[m].slot].entity;
      p.score = decisions[m].score;
      p.k = layers;
      p.mode = ModeName(mode);
      out.push_back(std::move(p));
    }
  }
  return out;
}

std::string EpochJson(const EpochStats &s) {
  nlohmann::ordered_json out;
  out["phase"] = s.phase;
  out["epoch"] = s.epoch;
  out["loss"] = s.loss;
  out["cross_entropy"] = s.cross_entropy;
  out["consistency"] = s.consistency;
  out["regularizer"] = s.regularizer;
  out["accuracy"] = s.accuracy;
  out["parameter_norm"] = s.parameter_norm;
  return out.dump();
}

std::vector<SweepRow> Sweep(const RunConfig &config, const KnowledgeBase &kb,
                            const Corpus &train, const Corpus &valid,
                            const EmbeddingTable &embeddings,
                            const std::function<void(const SweepRow &)> &on_row) {
  config.Validate();
  const auto &model_config = config.train.model;
  Parameters base = Parameters::Initialize(embeddings, model_config, config.train.seed);
  auto train_docs = CompileCorpus(train, kb, base.embeddings.vocab, model_config);
  auto valid_docs = CompileCorpus(valid, kb, base.embeddings.vocab, model_config);

  TrainConfig pretrain = config.train;
  pretrain.finetune_epochs = 0;
  Trainer trainer(base, pretrain);
  trainer.Train(train_docs);
  const OptimizerState pretrained = trainer.optimizer();

  std::vector<SweepRow> rows;
  for (std::size_t k : config.sweep_k) {
    for (double gamma : config.sweep_gamma) {
      Parameters params = base;
      TrainConfig finetune = config.train;
      finetune.layers = k;
      finetune.gamma = gamma;
      finetune.pretrain_epochs = 0;
      Trainer cell(params, finetune, pretrained);
      cell.Train(train_docs);
      Model model(params, model_config);
      for (double lambda : config.sweep_lambda) {
        auto predictions = LinkCorpus(model, valid, valid_docs, config.train.mode, k, lambda);
        SweepRow row{k, lambda, gamma, Evaluate(predictions, valid).micro_f1};
        if (on_row) on_row(row);
        rows.push_back(row);
      }
    }
  }
  return rows;
}

void WriteSweepCsv(std::ostream &out, const std::vector<SweepRow> &rows) {
  out << "k,lambda,gamma,micro_f1\n";
  for (const auto &row : rows) {
    std::ostringstream line;
    line.precision(17);
    line << row.k << ',' << row.lambda << ',' << row.gamma << ',';
    if (row.micro_f1) line << *row.micro_f1;
    out << line.str() << '\n';
  }
}

}  // namespace walklink
