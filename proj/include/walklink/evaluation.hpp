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

#ifndef WALKLINK_EVALUATION_HPP_
#define WALKLINK_EVALUATION_HPP_

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "walklink/corpus.hpp"

namespace walklink {

// One linking decision. `mention_index` is the mention's position in the
// corpus record's "mentions" array.
struct Prediction {
  std::string doc_id;
  std::size_t mention_index = 0;
  std::size_t start = 0;
  std::size_t end = 0;
  std::string entity;
  double score = 0.0;
  std::size_t k = 0;
  std::string mode;
};

// Single JSON line.
void WritePrediction(std::ostream &out, const Prediction &prediction);
// Requires doc_id, mention_index and entity; other fields are optional.
std::vector<Prediction> ReadPredictions(std::istream &in);
std::vector<Prediction> LoadPredictions(const std::string &path);

struct DocumentScore {
  std::string doc_id;
  std::size_t correct = 0;
  std::size_t total = 0;
};

struct EvalReport {
  std::optional<double> micro_f1;  // unset when nothing was evaluated
  std::size_t correct = 0;
  std::size_t total = 0;  // labeled retained mentions
  std::size_t missing = 0;  // labeled mentions without a prediction
  std::optional<double> gold_recall;
  std::size_t unrecoverable = 0;  // gold absent from the candidates
  std::size_t out_of_kb = 0;
  std::size_t annotated = 0;
  std::size_t dropped = 0;  // mentions without candidates
  std::vector<DocumentScore> documents;
};

// Scores predictions against the corpus golds. Mentions whose gold did not
// survive candidate generation stay in the denominator. Unlabeled mentions
// are ignored. A prediction for an unknown document or mention, or two for
// the same mention, raises LookupError.
EvalReport Evaluate(const std::vector<Prediction> &predictions, const Corpus &corpus);

std::string ReportJson(const EvalReport &report);

}  // namespace walklink

#endif  // WALKLINK_EVALUATION_HPP_
