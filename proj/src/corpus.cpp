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

#include "walklink/corpus.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <unordered_set>

#include "json.hpp"
#include "walklink/errors.hpp"
#include "walklink/text.hpp"

namespace walklink {

using json = nlohmann::json;

int Mention::GoldSlot() const {
  if (gold_status != GoldStatus::kInKb) return -1;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    if (candidates[i].entity == *gold) return static_cast<int>(i);
  }
  return -1;
}

int Document::UnionIndex(std::string_view entity) const {
  for (std::size_t i = 0; i < candidate_union.size(); ++i) {
    if (candidate_union[i] == entity) return static_cast<int>(i);
  }
  return -1;
}

Document MakeDocument(std::string doc_id, std::string text,
                      const std::vector<MentionSpan> &spans,
                      const KnowledgeBase &kb, const CorpusOptions &options,
                      std::vector<std::string> *warnings) {
  Document doc;
  doc.doc_id = std::move(doc_id);
  doc.text = std::move(text);
  auto tokens = Tokenize(doc.text);
  for (const auto &token : tokens) doc.tokens.push_back(token.text);
  doc.annotated_mentions = spans.size();

  const std::size_t length = CodePointLength(doc.text);
  for (std::size_t source = 0; source < spans.size(); ++source) {
    const auto &span = spans[source];
    if (span.begin > span.end || span.end > length) {
      throw ParseError("document '" + doc.doc_id + "': mention " +
                       std::to_string(source) + " span [" +
                       std::to_string(span.begin) + ", " +
                       std::to_string(span.end) + ") outside text of length " +
                       std::to_string(length));
    }
    std::size_t byte_begin = CodePointToByteOffset(doc.text, span.begin);
    std::size_t byte_end = CodePointToByteOffset(doc.text, span.end);

    Mention mention;
    mention.source_index = source;
    mention.char_begin = span.begin;
    mention.char_end = span.end;
    mention.token_begin = tokens.size();
    mention.token_end = tokens.size();
    for (std::size_t t = 0; t < tokens.size(); ++t) {
      if (tokens[t].end > byte_begin && tokens[t].begin < byte_end) {
        if (mention.token_begin == tokens.size()) mention.token_begin = t;
        mention.token_end = t + 1;
      } else if (tokens[t].begin >= byte_end) {
        if (mention.token_begin == tokens.size()) {
          mention.token_begin = mention.token_end = t;
        }
        break;
      }
    }
    mention.surface =
        TokenizeWords(std::string_view(doc.text).substr(byte_begin, byte_end - byte_begin));

    if (span.gold) {
      mention.gold = span.gold;
      if (kb.Find(*span.gold)) {
        mention.gold_status = GoldStatus::kInKb;
      } else {
        mention.gold_status = GoldStatus::kOutOfKb;
        if (warnings) {
          warnings->push_back("document '" + doc.doc_id + "': gold entity '" +
                              *span.gold + "' is not in the knowledge base");
        }
      }
    }

    auto priors = kb.CandidatePriors(JoinTokens(mention.surface));
    if (priors.size() > options.max_candidates) priors.resize(options.max_candidates);
    if (priors.empty()) {
      ++doc.dropped_mentions;
      continue;
    }
    for (auto &entry : priors) {
      mention.candidates.push_back(
          Candidate{entry.entity, kb.Index(entry.entity), entry.prior});
    }
    mention.ordinal = doc.mentions.size();
    doc.mentions.push_back(std::move(mention));
  }

  std::unordered_set<std::string> seen;
  for (const auto &mention : doc.mentions) {
    for (const auto &candidate : mention.candidates) {
      if (seen.insert(candidate.entity).second) {
        doc.candidate_union.push_back(candidate.entity);
        doc.union_kb.push_back(candidate.kb_index);
      }
    }
  }
  return doc;
}

Corpus ParseCorpus(std::istream &in, const KnowledgeBase &kb,
                   const CorpusOptions &options) {
  Corpus corpus;
  std::string line;
  long number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::string doc_id, text;
    std::vector<MentionSpan> spans;
    try {
      json record = json::parse(line);
      doc_id = record.at("doc_id").get<std::string>();
      text = record.at("text").get<std::string>();
      for (const auto &m : record.at("mentions")) {
        MentionSpan span;
        auto begin = m.at("start").get<long long>();
        auto end = m.at("end").get<long long>();
        if (begin < 0 || end < 0) throw ParseError("negative mention offset", number);
        span.begin = static_cast<std::size_t>(begin);
        span.end = static_cast<std::size_t>(end);
        if (m.contains("gold") && !m.at("gold").is_null()) {
          span.gold = m.at("gold").get<std::string>();
        }
        spans.push_back(std::move(span));
      }
    } catch (const json::exception &e) {
      throw ParseError(std::string("bad document record: ") + e.what(), number);
    }
    Document doc;
    try {
      doc = MakeDocument(std::move(doc_id), std::move(text), spans, kb, options,
                         &corpus.warnings);
    } catch (const ParseError &e) {
      throw ParseError(e.what(), number);
    }
    corpus.stats.annotated_mentions += doc.annotated_mentions;
    corpus.stats.dropped_mentions += doc.dropped_mentions;
    corpus.stats.retained_mentions += doc.mentions.size();
    for (const auto &m : doc.mentions) {
      if (m.gold_status == GoldStatus::kOutOfKb) ++corpus.stats.unknown_gold;
    }
    corpus.documents.push_back(std::move(doc));
  }
  corpus.stats.documents = corpus.documents.size();
  return corpus;
}

Corpus LoadCorpus(const std::string &path, const KnowledgeBase &kb,
                  const CorpusOptions &options) {
  std::ifstream in(path);
  if (!in) throw LoadError("cannot open corpus '" + path + "'");
  return ParseCorpus(in, kb, options);
}

std::vector<std::string> ContextWindow(const Document &doc, const Mention &mention,
                                       std::size_t window) {
  std::vector<std::string> context;
  std::size_t left = mention.token_begin > window ? mention.token_begin - window : 0;
  for (std::size_t t = left; t < mention.token_begin; ++t) context.push_back(doc.tokens[t]);
  std::size_t right = std::min(doc.tokens.size(), mention.token_end + window);
  for (std::size_t t = mention.token_end; t < right; ++t) context.push_back(doc.tokens[t]);
  return context;
}

std::vector<std::string> DocumentPrefix(const Document &doc, std::size_t n) {
  std::size_t count = std::min(n, doc.tokens.size());
  return {doc.tokens.begin(), doc.tokens.begin() + static_cast<std::ptrdiff_t>(count)};
}

}  // namespace walklink
