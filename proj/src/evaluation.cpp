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

#include "walklink/evaluation.hpp"

#include <fstream>
#include <map>
#include <ostream>
#include <utility>

#include "json.hpp"
#include "walklink/errors.hpp"

namespace walklink {

using json = nlohmann::ordered_json;

void WritePrediction(std::ostream &out, const Prediction &p) {
  json record;
  record["doc_id"] = p.doc_id;
  record["mention_index"] = p.mention_index;
  record["start"] = p.start;
  record["end"] = p.end;
  record["entity"] = p.entity;
  record["score"] = p.score;
  record["k"] = p.k;
  record["mode"] = p.mode;
  out << record.dump() << '\n';
}

std::vector<Prediction> ReadPredictions(std::istream &in) {
  std::vector<Prediction> out;
  std::string line;
  long number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      auto record = json::parse(line);
      Prediction p;
      p.doc_id = record.at("doc_id").get<std::string>();
      p.mention_index = record.at("mention_index").get<std::size_t>();
      p.entity = record.at("entity").get<std::string>();
      p.score = record.value("score", 0.0);
      p.start = record.value("start", std::size_t{0});
      p.end = record.value("end", std::size_t{0});
      p.k = record.value("k", std::size_t{0});
      p.mode = record.value("mode", std::string());
      out.push_back(std::move(p));
    } catch (const json::exception &e) {
      throw ParseError(std::string("bad prediction: ") + e.what(), number);
    }
  }
  return out;
}

std::vector<Prediction> LoadPredictions(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw LoadError("cannot open predictions '" + path + "'");
  try {
    return ReadPredictions(in);
  } catch (const ParseError &e) {
    throw ParseError(path + ": " + e.what());
  }
}

EvalReport Evaluate(const std::vector<Prediction> &predictions, const Corpus &corpus) {
  std::map<std::pair<std::string, std::size_t>, const Mention *> mentions;
  for (const auto &doc : corpus.documents) {
    for (const auto &m : doc.mentions) mentions[{doc.doc_id, m.source_index}] = &m;
  }
  std::map<std::pair<std::string, std::size_t>, const Prediction *> chosen;
  for (const auto &p : predictions) {
    std::pair<std::string, std::size_t> key{p.doc_id, p.mention_index};
    if (!mentions.count(key)) {
      throw LookupError("prediction for unknown mention " + std::to_string(p.mention_index) +
                        " of document '" + p.doc_id + "'");
    }
    if (!chosen.emplace(key, &p).second) {
      throw LookupError("two predictions for mention " + std::to_string(p.mention_index) +
                        " of document '" + p.doc_id + "'");
    }
  }

  EvalReport report;
  std::size_t recoverable = 0;
  for (const auto &doc : corpus.documents) {
    DocumentScore score{doc.doc_id, 0, 0};
    report.annotated += doc.annotated_mentions;
    report.dropped += doc.dropped_mentions;
    for (const auto &m : doc.mentions) {
      if (m.gold_status == GoldStatus::kNone) continue;
      ++score.total;
      if (m.gold_status == GoldStatus::kOutOfKb) ++report.out_of_kb;
      if (m.GoldSlot() >= 0) {
        ++recoverable;
      } else {
        ++report.unrecoverable;
      }
      auto it = chosen.find({doc.doc_id, m.source_index});
      if (it == chosen.end()) {
        ++report.missing;
        continue;
      }
      if (m.gold_status == GoldStatus::kInKb && it->second->entity == *m.gold) ++score.correct;
    }
    report.correct += score.correct;
    report.total += score.total;
    report.documents.push_back(std::move(score));
  }
  if (report.total > 0) {
    report.micro_f1 = static_cast<double>(report.correct) / report.total;
    report.gold_recall = static_cast<double>(recoverable) / report.total;
  }
  return report;
}

std::string ReportJson(const EvalReport &r) {
  json out;
  out["micro_f1"] = r.micro_f1 ? json(*r.micro_f1) : json(nullptr);
  out["correct"] = r.correct;
  out["total"] = r.total;
  out["missing"] = r.missing;
  out["gold_recall"] = r.gold_recall ? json(*r.gold_recall) : json(nullptr);
  out["unrecoverable"] = r.unrecoverable;
  out["out_of_kb"] = r.out_of_kb;
  out["annotated"] = r.annotated;
  out["dropped"] = r.dropped;
  json docs = json::array();
  for (const auto &d : r.documents) {
    docs.push_back({{"doc_id", d.doc_id}, {"correct", d.correct}, {"total", d.total}});
  }
  out["documents"] = std::move(docs);
  return out.dump();
}

}  // namespace walklink
