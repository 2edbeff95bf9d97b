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

#ifndef WALKLINK_PIPELINE_HPP_
#define WALKLINK_PIPELINE_HPP_

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "walklink/config.hpp"
#include "walklink/corpus.hpp"
#include "walklink/evaluation.hpp"
#include "walklink/kb.hpp"
#include "walklink/model.hpp"
#include "walklink/training.hpp"

namespace walklink {

// Vectors from config.embeddings, or seeded random vectors over every token
// of the KB and `corpus` when no file is configured.
EmbeddingTable PrepareEmbeddings(const RunConfig &config, const KnowledgeBase &kb,
                                 const Corpus &corpus);

std::vector<DocumentInstance> CompileCorpus(const Corpus &corpus, const KnowledgeBase &kb,
                                            const Vocabulary &vocab,
                                            const ModelConfig &config);

// One prediction per retained mention, in corpus order.
std::vector<Prediction> LinkCorpus(const Model &model, const Corpus &corpus,
                                   const std::vector<DocumentInstance> &instances,
                                   TransitionMode mode, std::size_t layers, double restart);

std::string EpochJson(const EpochStats &stats);

struct SweepRow {
  std::size_t k = 0;
  double lambda = 0.0;
  double gamma = 0.0;
  std::optional<double> micro_f1;
};

// Pretrains once, then fine-tunes a copy for every (k, gamma) cell and scores
// every lambda on `valid`. Each cell restarts from the pretrained state with
// the base seed, so cells differ only in their grid values.
std::vector<SweepRow> Sweep(const RunConfig &config, const KnowledgeBase &kb,
                            const Corpus &train, const Corpus &valid,
                            const EmbeddingTable &embeddings,
                            const std::function<void(const SweepRow &)> &on_row = {});

void WriteSweepCsv(std::ostream &out, const std::vector<SweepRow> &rows);

}  // namespace walklink

#endif  // WALKLINK_PIPELINE_HPP_
